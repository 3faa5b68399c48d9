#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <chrono>

#include "subprod/classifier.hpp"
#include "subprod/errors.hpp"
#include "subprod/poly_solver.hpp"
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

void check_against_oracle(const ProblemInstance& inst, const SubsetS& s, const SolveResult& r) {
  REQUIRE(r.answer != Answer::BudgetExceeded);
  const bool truth = solve_brute(inst, to_set(s));
  CHECK((r.answer == Answer::Yes) == truth);
  CHECK(oracle_solve(inst, s).answer == r.answer);
  if (r.answer == Answer::Yes) {
    REQUIRE(r.certificate.has_value());
    CHECK(verify_certificate(inst, s, *r.certificate));
  }
}

}  // namespace

TEST_CASE("solve_P_coset examples") {
  const auto empty = cyclic_subset(4, {});
  CHECK(solve_P_coset(ProblemInstance(Z({4}), 0, {}, {}), empty).answer == Answer::Yes);
  CHECK(solve_P_coset(ProblemInstance(Z({4}), 2, {E({0}), E({0})}, {}), empty).answer == Answer::No);
  const auto odd = cyclic_subset(4, {1, 3});
  const ProblemInstance yes(Z({4}), 2, {E({0}), E({0})}, {{E({1}), E({1})}});
  const auto r = solve_P_coset(yes, odd);
  CHECK(r.answer == Answer::Yes);
  CHECK(verify_certificate(yes, odd, *r.certificate));
  CHECK(solve_P_coset(ProblemInstance(Z({4}), 2, {E({0}), E({0})}, {{E({2}), E({0})}}), odd).answer == Answer::No);
  CHECK_THROWS_AS(solve_P_coset(yes, cyclic_subset(4, {0, 1})), ContractError);
}

TEST_CASE("solve_Pi_theta examples") {
  const ProblemInstance any(Z({4}), 2, {E({0}), E({0})}, {{E({1}), E({3})}});
  const auto zero_in = solve_Pi_theta(any, cyclic_subset(4, {0, 1}));
  CHECK(zero_in.answer == Answer::Yes);
  CHECK(zero_in.certificate == Certificate{{0}});
  const auto odd = cyclic_subset(4, {1, 3});
  CHECK(solve_Pi_theta(ProblemInstance(Z({4}), 2, {E({0}), E({0})}, {{E({1}), E({1})}}), odd).answer == Answer::Yes);
  CHECK(solve_Pi_theta(ProblemInstance(Z({4}), 2, {E({0}), E({0})}, {{E({2}), E({2})}}), odd).answer == Answer::No);
  CHECK_THROWS_AS(solve_Pi_theta(ProblemInstance(Z({4}), 1, {E({1})}, {}), odd), ContractError);
  CHECK_THROWS_AS(solve_Pi_theta(ProblemInstance(Z({5}), 1, {E({0})}, {}), cyclic_subset(5, {1, 2, 4})),
                  ContractError);
}

TEST_CASE("solve_P_coset agrees with the oracle on 500 random coset instances") {
  Rng rng(201);
  int yes = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const auto g = random_group(rng, 9);
    const auto cosets = all_cosets(g);
    const auto s = to_subset(g, cosets[rng() % cosets.size()]);
    const auto inst = random_instance(rng, g, 4, 4);
    INFO("trial " << trial);
    const auto r = solve_P_coset(inst, s);
    yes += r.answer == Answer::Yes;
    check_against_oracle(inst, s, r);
  }
  CHECK(yes > 50);
  CHECK(yes < 450);
}

TEST_CASE("solve_Pi_theta agrees with the oracle on 500 random theta-coset instances") {
  Rng rng(202);
  int trials = 0, yes = 0, zero_free = 0;
  while (trials < 500) {
    const auto g = random_group(rng, 9);
    const auto s = random_subset(rng, g);
    if (classify_Pi(g, s).verdict != Verdict::InP) continue;
    ++trials;
    zero_free += !s.contains(g.zero());
    const auto inst = random_instance(rng, g, 4, 4, true);
    INFO("trial " << trials);
    const auto r = solve_Pi_theta(inst, s);
    yes += r.answer == Answer::Yes;
    check_against_oracle(inst, s, r);
  }
  CHECK(zero_free > 100);
  CHECK(yes < 480);
}

TEST_CASE("solve_P_coset scales to t = 64, 64 generators, |G| = 256") {
  Rng rng(203);
  const auto g = Z({4, 64});
  const SubsetS s(g, {E({1, 3}), E({1, 35})});
  std::vector<Element> xstar(64);
  for (auto& x : xstar) x = random_element(rng, g);
  std::vector<std::vector<Element>> gens(64, std::vector<Element>(64));
  for (auto& h : gens)
    for (auto& x : h) x = random_element(rng, g);
  const ProblemInstance inst(g, 64, xstar, gens);
  const auto start = std::chrono::steady_clock::now();
  const auto r = solve_P_coset(inst, s);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  MESSAGE("t=64, m=64, |G|=256 solved in " << seconds << " s");
  CHECK(seconds < 1.0);
  if (r.answer == Answer::Yes) CHECK(verify_certificate(inst, s, *r.certificate));
}
