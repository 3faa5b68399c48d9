#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "subprod/classifier.hpp"
#include "subprod/errors.hpp"
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

template <class F>
void for_all_subsets(const FiniteAbelianGroup& g, F&& f) {
  const auto n = static_cast<std::uint64_t>(g.order());
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) f(subset_from_mask(g, mask));
}

bool is_prime_power(std::int64_t n) {
  for (std::int64_t p = 2; p <= n; ++p)
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      return n == 1;
    }
  return false;
}

// Lexicographically first (s, a, b) in G^3 with the Lemma property, by scanning G.
std::optional<SabTriple> sab_brute(const SubsetS& s) {
  const auto& g = s.group();
  const auto all = g.elements();
  for (const auto& x : all)
    for (const auto& a : all)
      for (const auto& b : all)
        if (s.contains(x) && s.contains(g.add(x, a)) && s.contains(g.add(x, b)) && a != b &&
            !s.contains(g.add(g.add(x, a), b)))
          return SabTriple{x, a, b};
  return std::nullopt;
}

}  // namespace

TEST_CASE("is_coset examples") {
  const auto c = is_coset(cyclic_subset(4, {1, 3}));
  REQUIRE(c.has_value());
  CHECK(c->base == E({1}));
  CHECK(span(Z({4}), c->subgroup.gens) == ElementSet{E({0}), E({2})});
  CHECK_FALSE(is_coset(cyclic_subset(4, {0, 1})).has_value());
  const auto single = is_coset(SubsetS(Z({2, 3}), {E({1, 2})}));
  REQUIRE(single.has_value());
  CHECK(single->base == E({1, 2}));
  CHECK(span(Z({2, 3}), single->subgroup.gens) == ElementSet{E({0, 0})});
  CHECK_FALSE(is_coset(cyclic_subset(4, {})).has_value());
}

TEST_CASE("theta examples") {
  CHECK(theta(cyclic_subset(4, {0, 1})) == cyclic_subset(4, {0}));
  CHECK(theta(cyclic_subset(4, {1, 3})) == cyclic_subset(4, {1, 3}));
  CHECK(theta(cyclic_subset(6, {1, 2, 4})) == cyclic_subset(6, {2, 4}));
  CHECK(theta(cyclic_subset(6, {})).empty());
}

TEST_CASE("find_sab examples") {
  CHECK(find_sab(cyclic_subset(4, {0, 1, 2})) == SabTriple{E({0}), E({1}), E({2})});
  CHECK_FALSE(find_sab(cyclic_subset(6, {0, 2, 4})).has_value());
  CHECK(find_sab(cyclic_subset(5, {1, 2, 4})) == SabTriple{E({1}), E({1}), E({3})});
  CHECK_THROWS_AS(find_sab(cyclic_subset(5, {1, 2})), ContractError);
}

TEST_CASE("classify examples") {
  CHECK(classify_P(Z({4}), cyclic_subset(4, {})).verdict == Verdict::InP);
  CHECK(std::holds_alternative<reason::EmptyS>(classify_P(Z({4}), cyclic_subset(4, {})).reason));
  const auto coset = classify_P(Z({4}), cyclic_subset(4, {1, 3}));
  CHECK(coset.verdict == Verdict::InP);
  CHECK(std::holds_alternative<reason::CosetS>(coset.reason));
  const auto hard = classify_P(Z({4}), cyclic_subset(4, {0, 1}));
  CHECK(hard.verdict == Verdict::NPComplete);
  CHECK(to_string(hard) == "NP-complete (S not a coset; |S|=2, d=1)");

  CHECK(classify_Pi(Z({4}), cyclic_subset(4, {0, 1})).verdict == Verdict::InP);
  const auto pi = classify_Pi(Z({5}), cyclic_subset(5, {1, 2, 4}));
  CHECK(pi.verdict == Verdict::NPComplete);
  REQUIRE(std::holds_alternative<reason::ThetaNonCoset>(pi.reason));
  CHECK(std::get<reason::ThetaNonCoset>(pi.reason).theta == cyclic_subset(5, {1, 2, 4}));
  CHECK(classify_Pi(Z({3}), cyclic_subset(3, {})).verdict == Verdict::InP);
  CHECK_THROWS_AS(classify_P(Z({5}), cyclic_subset(4, {0})), ContractError);
}

TEST_CASE("classify_P matches the coset oracle for every subset of every group of order <= 8") {
  int mismatches = 0, total = 0;
  for (const auto& g : all_groups(8)) {
    const auto cosets = all_cosets(g);
    const std::set<ElementSet> coset_set(cosets.begin(), cosets.end());
    for_all_subsets(g, [&](const SubsetS& s) {
      ++total;
      const bool expect = s.empty() || coset_set.count(to_set(s)) == 1;
      const auto c = classify_P(g, s);
      if ((c.verdict == Verdict::InP) != expect) ++mismatches;
    });
  }
  CHECK(total > 1000);
  CHECK(mismatches == 0);
}

TEST_CASE("coset witnesses and non-coset witnesses re-verify") {
  for (const auto& g : all_groups(8)) {
    for_all_subsets(g, [&](const SubsetS& s) {
      const auto c = classify_P(g, s);
      if (const auto* cs = std::get_if<reason::CosetS>(&c.reason)) {
        const auto sub = span(g, cs->coset.subgroup.gens);
        // Every base gives the same subgroup.
        for (const auto& x : s.elements()) {
          ElementSet shifted;
          for (const auto& y : s.elements()) shifted.insert(g.sub(y, x));
          CHECK(shifted == sub);
        }
      } else if (const auto* nc = std::get_if<reason::NonCoset>(&c.reason)) {
        const auto& w = nc->witness;
        CHECK(s.contains(w.s));
        CHECK(s.contains(g.add(w.s, w.a)));
        CHECK(s.contains(g.add(w.s, w.b)));
        CHECK(w.a != w.b);
        CHECK_FALSE(s.contains(g.add(g.add(w.s, w.a), w.b)));
      } else if (const auto* pair = std::get_if<reason::NonCosetPair>(&c.reason)) {
        CHECK(s.size() == 2);
        CHECK(s.contains(pair->s));
        CHECK(s.contains(g.add(pair->s, pair->d)));
        CHECK(g.order_of(pair->d) >= 3);
      }
    });
  }
}

TEST_CASE("find_sab is the lexicographically smallest triple") {
  for (const auto& g : all_groups(6))
    for_all_subsets(g, [&](const SubsetS& s) {
      if (s.size() >= 3) CHECK(find_sab(s) == sab_brute(s));
    });
}

TEST_CASE("theta agrees with the definition over all integers and obeys its laws") {
  for (const auto& g : all_groups(8)) {
    const bool pp = g.order() > 1 && is_prime_power(g.order());
    for_all_subsets(g, [&](const SubsetS& s) {
      const auto th = theta(s);
      CHECK(to_set(th) == theta_brute(g, to_set(s)));
      for (const auto& x : th.elements()) CHECK(s.contains(x));
      CHECK(theta(th) == th);
      if (pp) {
        if (s.contains(g.zero()))
          CHECK(th == SubsetS(g, {g.zero()}));
        else
          CHECK(th == s);
      }
    });
  }
}

TEST_CASE("classify_Pi matches the theta coset oracle") {
  for (const auto& g : all_groups(8)) {
    const auto cosets = all_cosets(g);
    const std::set<ElementSet> coset_set(cosets.begin(), cosets.end());
    for_all_subsets(g, [&](const SubsetS& s) {
      const auto th = theta_brute(g, to_set(s));
      const bool expect = s.empty() || coset_set.count(th) == 1;
      CHECK((classify_Pi(g, s).verdict == Verdict::InP) == expect);
    });
  }
}
