#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "subprod/classifier.hpp"
#include "subprod/errors.hpp"
#include "subprod/hardness.hpp"
#include "support/testing.hpp"

using namespace subprod;
using namespace subprod::testing;

namespace {

FiniteAbelianGroup Z(std::vector<std::int64_t> m) { return FiniteAbelianGroup(std::move(m)); }
Element E(std::vector<std::int64_t> c) { return Element(std::move(c)); }
SubsetS cyclic_subset(std::int64_t n, std::vector<std::int64_t> xs) {
  std::vector<Element> e;
  for (auto x : xs) e.push_back(E({x}));
  return SubsetS(Z({n}), e);
}

CompileOptions no_selfcheck() {
  CompileOptions o;
  o.selfcheck = false;
  return o;
}

Coloring find_coloring(const Graph& g, std::size_t k) {
  Coloring c(g.vertex_count(), 1);
  for (;;) {
    if (is_proper_coloring(g, c, k)) return c;
    std::size_t i = 0;
    while (i < c.size() && ++c[i] > k) c[i++] = 1;
    REQUIRE(i < c.size());
  }
}

struct Target {
  const char* name;
  SubsetS s;
  Variant v;
};

std::vector<Target> end_to_end_targets() {
  return {{"Z4 {0,1}", cyclic_subset(4, {0, 1}), Variant::P},
          {"Z4 {0,1,2}", cyclic_subset(4, {0, 1, 2}), Variant::P},
          {"Z2xZ2 minus 0", SubsetS(Z({2, 2}), {E({0, 1}), E({1, 0}), E({1, 1})}), Variant::P},
          {"Z5 {1,2,4} Pi", cyclic_subset(5, {1, 2, 4}), Variant::Pi},
          {"Z6 {1,2,4} Pi", cyclic_subset(6, {1, 2, 4}), Variant::Pi}};
}

ReductionPipeline compile(const SubsetS& s, Variant v, const CompileOptions& o = {}) {
  return v == Variant::P ? compile_hardness_P(s, o) : compile_hardness_Pi(s, o);
}

}  // namespace

TEST_CASE("pigsspecial_step: Z/4 {0,1,2} recurses through the swapped reflection") {
  std::vector<Assertion> trace;
  const auto out = pigsspecial_step(cyclic_subset(4, {0, 1, 2}), E({1}), E({2}), E({0}), &trace);
  const auto* r = std::get_if<outcome::Recurse>(&out);
  REQUIRE(r != nullptr);
  CHECK(r->step == ReductionStep{step::TransformDouble{Homomorphism::multiplication(Z({4}), -1), E({3})}});
  CHECK(r->subset == cyclic_subset(4, {1, 2}));
  CHECK(r->offset == E({0}));
  for (const auto& a : trace) CHECK(recheck(a));
}

TEST_CASE("pigsspecial: C2 x C2 with S = {00,10,01} ends in the even pattern") {
  const auto g = Z({2, 2});
  const SubsetS s(g, {E({0, 0}), E({1, 0}), E({0, 1})});
  const auto step = pigsspecial_step(s, E({1, 0}), E({0, 1}), E({0, 0}));
  REQUIRE(std::holds_alternative<outcome::Advance>(step));
  CHECK(std::get<outcome::Advance>(step).next == std::vector<Element>{E({0, 0}), E({0, 0})});
  std::vector<Assertion> trace;
  CHECK(std::holds_alternative<outcome::BaseEvenPattern>(pigsspecial_resolve(s, E({1, 0}), E({0, 1}), &trace)));
  bool saw_closure = false;
  for (const auto& a : trace) {
    CHECK(recheck(a));
    saw_closure = saw_closure || a.kind == Assertion::Kind::ClosureIsA;
  }
  CHECK(saw_closure);
}

TEST_CASE("pigsspecial_step: preconditions") {
  const auto s = cyclic_subset(4, {0, 1, 2, 3});
  CHECK_THROWS_AS(pigsspecial_step(s, E({1}), E({2}), E({0})), ContractError);
  CHECK_THROWS_AS(pigsspecial_step(cyclic_subset(4, {0, 1, 2}), E({1}), E({1}), E({0})), ContractError);
  // <2, 2> is not the whole group.
  CHECK_THROWS_AS(pigsspecial_step(cyclic_subset(8, {0, 2, 4}), E({2}), E({4}), E({0})), ContractError);
}

TEST_CASE("compile_hardness_P: documented pipelines") {
  CHECK(compile_hardness_P(cyclic_subset(4, {0, 1})).steps == std::vector<ReductionStep>{step::GadgetS01{4}});
  const auto neg = Homomorphism::multiplication(Z({4}), -1);
  CHECK(compile_hardness_P(cyclic_subset(4, {0, 1, 2})).steps ==
        std::vector<ReductionStep>{step::GadgetS01{4}, step::Translate{E({1})}, step::TransformDouble{neg, E({3})}});
  const auto v4 = Z({2, 2});
  CHECK(compile_hardness_P(SubsetS(v4, {E({0, 1}), E({1, 0}), E({1, 1})})).steps ==
        std::vector<ReductionStep>{step::KColFrom3Col{4}, step::GadgetColoringFull{v4}});
}

TEST_CASE("compile_hardness_Pi: Z/6 {1,2,4} compiles over Z/3 and embeds") {
  const auto p = compile_hardness_Pi(cyclic_subset(6, {1, 2, 4}));
  CHECK(p.variant == Variant::Pi);
  REQUIRE(p.steps.size() >= 3);
  const auto& pi = std::get<step::PiFromP>(p.steps[p.steps.size() - 2]);
  CHECK(pi.order == std::vector<Element>{E({1}), E({2})});
  const auto& f = std::get<step::MapThrough>(p.steps.back()).f;
  CHECK(f.source() == Z({3}));
  CHECK(f.target() == Z({6}));
  CHECK(std::get<step::GadgetS01>(p.steps.front()).n == 3);
}

TEST_CASE("compile rejects targets in P") {
  CHECK_THROWS_AS(compile_hardness_P(cyclic_subset(4, {1, 3})), ContractError);
  CHECK_THROWS_AS(compile_hardness_P(cyclic_subset(4, {})), ContractError);
  CHECK_THROWS_AS(compile_hardness_Pi(cyclic_subset(6, {0, 1, 2, 4})), ContractError);
  CHECK_THROWS_AS(compile_hardness_Pi(cyclic_subset(4, {1, 3})), ContractError);
}

TEST_CASE("end to end: compiled instances are yes exactly for 3-colorable graphs") {
  const std::vector<std::pair<const char*, Graph>> graphs{
      {"K3", Graph::complete(3)}, {"C5", Graph::cycle(5)}, {"P3", Graph::path(3)}, {"K4", Graph::complete(4)}};
  for (const auto& t : end_to_end_targets()) {
    const auto p = compile(t.s, t.v);
    CHECK(recheck_trace(p));
    for (const auto& [gname, graph] : graphs) {
      INFO(t.name << " on " << gname);
      const bool truth = colorable_brute(graph.vertex_count(), graph.edges(), 3);
      const auto st = apply_pipeline(p, graph);
      const auto& inst = std::get<ProblemInstance>(st.value);
      CHECK(inst.group == t.s.group());
      if (t.v == Variant::Pi) CHECK(inst.is_pi());
      const auto r = oracle_solve(inst, t.s);
      REQUIRE(r.answer != Answer::BudgetExceeded);
      CHECK((r.answer == Answer::Yes) == truth);
      if (truth) {
        const auto with_cert = apply_pipeline(p, graph, find_coloring(graph, 3));
        REQUIRE(with_cert.certificate.has_value());
        CHECK(verify_certificate(std::get<ProblemInstance>(with_cert.value), t.s, *with_cert.certificate));
      }
    }
  }
}

TEST_CASE("apply_pipeline: empty graph gives a yes-instance; bad colorings are rejected") {
  for (const auto& t : end_to_end_targets()) {
    const auto p = compile(t.s, t.v, no_selfcheck());
    const auto st = apply_pipeline(p, Graph(0, {}), Coloring{});
    const auto& inst = std::get<ProblemInstance>(st.value);
    CHECK(oracle_solve(inst, t.s).answer == Answer::Yes);
    CHECK(verify_certificate(inst, t.s, *st.certificate));
    CHECK_THROWS_AS(apply_pipeline(p, Graph::complete(3), Coloring{1, 1, 2}), ContractError);
  }
}

TEST_CASE("selfcheck passes on the documented targets") {
  for (const auto& t : end_to_end_targets()) {
    INFO(t.name);
    const auto r = selfcheck(compile(t.s, t.v, no_selfcheck()));
    CHECK(r.k3_certificate_ok);
    CHECK(r.k4_answer == Answer::No);
  }
}

TEST_CASE("every NP-complete P target with |G| <= 8 compiles, rechecks, and threads a K3 certificate") {
  int compiled = 0;
  for (const auto& g : all_groups(8)) {
    const auto n = static_cast<std::uint64_t>(g.order());
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      const auto s = subset_from_mask(g, mask);
      if (classify_P(g, s).verdict != Verdict::NPComplete) continue;
      INFO(to_string(g) << " mask " << mask);
      const auto p = compile_hardness_P(s, no_selfcheck());
      ++compiled;
      CHECK(recheck_trace(p));
      const auto st = apply_pipeline(p, Graph::complete(3), Coloring{1, 2, 3});
      const auto& inst = std::get<ProblemInstance>(st.value);
      CHECK(inst.group == g);
      CHECK(verify_certificate(inst, s, *st.certificate));
    }
  }
  CHECK(compiled > 1000);
}

TEST_CASE("every NP-complete Pi target with |G| <= 8 compiles and threads a K3 certificate") {
  for (const auto& g : all_groups(8)) {
    const auto n = static_cast<std::uint64_t>(g.order());
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      const auto s = subset_from_mask(g, mask);
      if (classify_Pi(g, s).verdict != Verdict::NPComplete) continue;
      INFO(to_string(g) << " mask " << mask);
      const auto p = compile_hardness_Pi(s, no_selfcheck());
      CHECK(recheck_trace(p));
      const auto st = apply_pipeline(p, Graph::complete(3), Coloring{1, 2, 3});
      const auto& inst = std::get<ProblemInstance>(st.value);
      CHECK(inst.is_pi());
      CHECK(verify_certificate(inst, s, *st.certificate));
    }
  }
}

TEST_CASE("small targets: K4 and an odd wheel are rejected by the oracle") {
  // Wheel on a 5-cycle: not 3-colorable.
  const Graph wheel(6, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 1}, {6, 1}, {6, 2}, {6, 3}, {6, 4}, {6, 5}});
  for (const auto& g : all_groups(4)) {
    const auto n = static_cast<std::uint64_t>(g.order());
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      const auto s = subset_from_mask(g, mask);
      if (classify_P(g, s).verdict != Verdict::NPComplete) continue;
      INFO(to_string(g) << " mask " << mask);
      const auto p = compile_hardness_P(s, no_selfcheck());
      for (const auto& graph : {Graph::complete(4), wheel}) {
        const auto r = oracle_solve(std::get<ProblemInstance>(apply_pipeline(p, graph).value), s);
        CHECK(r.answer == Answer::No);
      }
    }
  }
}

TEST_CASE("recheck catches false assertions") {
  Assertion a;
  a.kind = Assertion::Kind::NotMember;
  a.set = cyclic_subset(4, {0, 1});
  a.elements = {E({1})};
  CHECK_FALSE(recheck(a));
  a.elements = {E({2})};
  CHECK(recheck(a));
  Assertion m;
  m.kind = Assertion::Kind::MeasureDecreases;
  m.before = 5;
  m.after = 5;
  CHECK_FALSE(recheck(m));
  CHECK_FALSE(describe(a).empty());
}
