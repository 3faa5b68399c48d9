#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "subprod/classifier.hpp"
#include "subprod/errors.hpp"
#include "subprod/io.hpp"
#include "support/testing.hpp"

using namespace subprod;
using namespace subprod::testing;

namespace {

FiniteAbelianGroup Z(std::vector<std::int64_t> m) { return FiniteAbelianGroup(std::move(m)); }
Element E(std::vector<std::int64_t> c) { return Element(std::move(c)); }

FiniteAbelianGroup fuzz_group(Rng& rng) {
  std::vector<std::int64_t> m(rng() % 4);
  for (auto& d : m) d = 1 + static_cast<std::int64_t>(rng() % 12);
  return Z(m);
}

Homomorphism fuzz_hom(Rng& rng, const FiniteAbelianGroup& src, const FiniteAbelianGroup& tgt) {
  Matrix m(tgt.rank(), src.rank());
  for (std::size_t j = 0; j < src.rank(); ++j)
    for (std::size_t i = 0; i < tgt.rank(); ++i) {
      const std::int64_t ti = tgt.moduli()[i];
      const std::int64_t step = ti / std::gcd(ti, src.moduli()[j]);
      m(i, j) = step * static_cast<std::int64_t>(rng() % (ti / step)) - (rng() % 3 == 0 ? ti : 0);
    }
  return Homomorphism(src, tgt, m);
}

Graph fuzz_graph(Rng& rng) {
  const std::size_t n = rng() % 9;
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t u = 1; u <= n; ++u)
    for (std::size_t v = u + 1; v <= n; ++v)
      if (rng() % 3 == 0) e.emplace_back(u, v);
  return Graph(n, e);
}

ReductionStep fuzz_step(Rng& rng) {
  const auto g = fuzz_group(rng);
  switch (rng() % 9) {
    case 0: return step::Translate{random_element(rng, g)};
    case 1: return step::MapThrough{fuzz_hom(rng, g, fuzz_group(rng))};
    case 2: {
      std::vector<Element> gens(rng() % 3);
      for (auto& x : gens) x = random_element(rng, g);
      return step::DivideOutLift{SubgroupGens(g, gens)};
    }
    case 3: return step::TransformDouble{fuzz_hom(rng, g, g), random_element(rng, g)};
    case 4: return step::PFromPi{};
    case 5: {
      std::vector<Element> order(rng() % 4);
      for (auto& x : order) x = random_element(rng, g);
      return step::PiFromP{order};
    }
    case 6: return step::GadgetColoringFull{g};
    case 7: return step::GadgetS01{static_cast<std::int64_t>(3 + rng() % 10)};
    default: return step::KColFrom3Col{3 + rng() % 5};
  }
}

}  // namespace

TEST_CASE("element and group formats") {
  CHECK(io::format_group(Z({2, 2})) == "2,2");
  CHECK(io::format_group(Z({})).empty());
  CHECK(io::parse_group(" 4 ") == Z({4}));
  CHECK(io::parse_group("") == Z({}));
  CHECK_THROWS_AS(io::parse_group("2,,3"), ParseError);
  CHECK_THROWS_AS(io::parse_group("0"), ContractError);
  CHECK(io::format_element(E({1, 2})) == "(1,2)");
  CHECK(io::parse_element("( 1, 2 )") == E({1, 2}));
  CHECK(io::parse_element("()") == E({}));
  CHECK(io::parse_element("-3") == E({-3}));
  CHECK_THROWS_AS(io::parse_element("(1,"), ParseError);
  CHECK_THROWS_AS(io::parse_element("(a)"), ParseError);
}

TEST_CASE("subset formats") {
  const auto z4 = Z({4});
  CHECK(io::format_subset(SubsetS(z4, {E({0}), E({1})})) == "{0,1}");
  CHECK(io::parse_subset(z4, "{0,1}") == SubsetS(z4, {E({0}), E({1})}));
  CHECK(io::parse_subset(z4, "{(0), (1)}") == SubsetS(z4, {E({0}), E({1})}));
  CHECK(io::parse_subset(z4, "# odd\n1\n3\n") == SubsetS(z4, {E({1}), E({3})}));
  CHECK(io::parse_subset(z4, "{}").empty());
  const auto v4 = Z({2, 2});
  const SubsetS s(v4, {E({0, 1}), E({1, 0})});
  CHECK(io::format_subset(s) == "{(0,1),(1,0)}");
  CHECK(io::parse_subset(v4, "(0,1)\n(1,0)") == s);
  CHECK_THROWS_AS(io::parse_subset(v4, "{0,1}"), ContractError);
  CHECK_THROWS_AS(io::parse_subset(z4, "{4}"), ContractError);
  CHECK_THROWS_AS(io::parse_subset(z4, "{0,1"), ParseError);
}

TEST_CASE("instance format") {
  const ProblemInstance inst(Z({4}), 2, {E({0}), E({1})}, {{E({1}), E({1})}, {E({2}), E({0})}});
  const std::string text = io::format_instance(inst);
  CHECK(text == "group: 4\nt: 2\nxstar: (0) (1)\ngen: (1) (1)\ngen: (2) (0)\n");
  CHECK(io::parse_instance(text) == inst);
  CHECK(io::parse_instance("# c\ngroup: 4\nt: 0\nxstar:\n") == ProblemInstance(Z({4}), 0, {}, {}));
  CHECK_THROWS_AS(io::parse_instance("t: 1\nxstar: (0)\n"), ParseError);
  CHECK_THROWS_AS(io::parse_instance("group: 4\nt: 1\nxstar: (0) (1)\n"), ContractError);
  CHECK_THROWS_AS(io::parse_instance("group: 4\nt: 1\nxstar: (0)\nbogus: 1\n"), ParseError);
}

TEST_CASE("graph format") {
  const Graph k3 = Graph::complete(3);
  CHECK(io::format_graph(k3) == "p edge 3 3\ne 1 2\ne 1 3\ne 2 3\n");
  CHECK(io::parse_graph("c triangle\np edge 3 3\ne 1 2\ne 2 3\ne 3 1\n") == k3);
  CHECK_THROWS_AS(io::parse_graph("p edge 3 2\ne 1 2\n"), ParseError);
  CHECK_THROWS_AS(io::parse_graph("e 1 2\n"), ParseError);
  CHECK_THROWS_AS(io::parse_graph("p edge 2 1\ne 1 3\n"), ContractError);
}

TEST_CASE("certificate and coloring formats") {
  CHECK(io::format_certificate(Certificate{{1, 0, 3}}) == "cert: 1 0 3\n");
  CHECK(io::parse_certificate("cert: 1 0 3") == Certificate{{1, 0, 3}});
  CHECK(io::parse_certificate("1 0 3\n") == Certificate{{1, 0, 3}});
  CHECK(io::parse_certificate("cert:") == Certificate{});
  CHECK_THROWS_AS(io::parse_certificate("cert: x"), ParseError);
  CHECK(io::parse_coloring(io::format_coloring({1, 2, 3})) == Coloring{1, 2, 3});
  CHECK_THROWS_AS(io::parse_coloring("coloring: 0 1"), ParseError);
}

TEST_CASE("pipeline format round-trips compiled pipelines") {
  const auto p = compile_hardness_P(SubsetS(Z({4}), {E({0}), E({1}), E({2})}));
  const std::string text = io::format_pipeline(p);
  CHECK(text ==
        "pipeline\ngroup: 4\nsubset: {0,1,2}\nvariant: P\n"
        "step: GadgetS01 n=4\nstep: Translate g=(1)\nstep: TransformDouble group=4 m=3 g=(3)\n");
  CHECK(io::parse_pipeline(text) == p);
  CHECK_THROWS_AS(io::parse_pipeline("pipeline\ngroup: 4\nsubset: {0}\nvariant: Q\n"), ParseError);
  CHECK_THROWS_AS(io::parse_step("step: Frobnicate"), ParseError);
  CHECK_THROWS_AS(io::parse_step("step: GadgetS01"), ParseError);
  CHECK_THROWS_AS(io::parse_step("step: GadgetS01 n=4 n=5"), ParseError);
}

TEST_CASE("1000 fuzzed values of each format round-trip exactly") {
  Rng rng(4242);
  for (int i = 0; i < 1000; ++i) {
    INFO("iteration " << i);
    const auto g = fuzz_group(rng);
    const auto gs = io::format_group(g);
    CHECK(io::parse_group(gs) == g);
    CHECK(io::format_group(io::parse_group(gs)) == gs);

    if (g.order() <= 4096) {
      const auto s = random_subset(rng, g);
      const auto ss = io::format_subset(s);
      CHECK(io::parse_subset(g, ss) == s);
      CHECK(io::format_subset(io::parse_subset(g, ss)) == ss);
    }

    const auto inst = random_instance(rng, g, 4, 4);
    const auto is = io::format_instance(inst);
    CHECK(io::parse_instance(is) == inst);
    CHECK(io::format_instance(io::parse_instance(is)) == is);

    const auto gr = fuzz_graph(rng);
    const auto grs = io::format_graph(gr);
    CHECK(io::parse_graph(grs) == gr);
    CHECK(io::format_graph(io::parse_graph(grs)) == grs);

    Certificate c;
    for (std::size_t k = rng() % 6; k > 0; --k) c.coefficients.push_back(static_cast<std::int64_t>(rng() % 100));
    CHECK(io::parse_certificate(io::format_certificate(c)) == c);

    ReductionPipeline p;
    p.group = g.order() <= 4096 ? g : Z({5});
    p.subset = random_subset(rng, p.group);
    p.variant = rng() % 2 ? Variant::P : Variant::Pi;
    for (std::size_t k = rng() % 7; k > 0; --k) p.steps.push_back(fuzz_step(rng));
    const auto ps = io::format_pipeline(p);
    CHECK(io::parse_pipeline(ps) == p);
    CHECK(io::format_pipeline(io::parse_pipeline(ps)) == ps);
  }
}

TEST_CASE("replaying a reloaded pipeline reproduces identical instances") {
  const std::vector<SubsetS> targets{SubsetS(Z({4}), {E({0}), E({1})}), SubsetS(Z({4}), {E({0}), E({1}), E({2})}),
                                     SubsetS(Z({2, 2}), {E({0, 1}), E({1, 0}), E({1, 1})})};
  for (const auto& s : targets) {
    const auto p = compile_hardness_P(s);
    const auto q = io::parse_pipeline(io::format_pipeline(p));
    for (const auto& graph : {Graph::complete(3), Graph::cycle(5), Graph::complete(4)}) {
      const auto a = io::format_instance(std::get<ProblemInstance>(apply_pipeline(p, graph).value));
      const auto b = io::format_instance(std::get<ProblemInstance>(apply_pipeline(q, graph).value));
      CHECK(a == b);
    }
  }
}
