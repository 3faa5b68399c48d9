#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "subprod/abelian.hpp"

namespace subprod {

/// Explicit subset of a finite abelian group, sorted and deduplicated, with a
/// membership bitmap indexed by FiniteAbelianGroup::index_of.
class SubsetS {
 public:
  SubsetS() = default;
  /// Throws ContractError if an element is not canonical in g.
  SubsetS(FiniteAbelianGroup g, std::vector<Element> elements);

  const FiniteAbelianGroup& group() const { return group_; }
  const std::vector<Element>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }

  bool contains(const Element& x) const { return member_[group_.index_of(x)]; }
  bool contains_index(std::uint64_t index) const { return member_[index]; }

  friend bool operator==(const SubsetS& a, const SubsetS& b) {
    return a.group_ == b.group_ && a.elements_ == b.elements_;
  }

 private:
  FiniteAbelianGroup group_;
  std::vector<Element> elements_;
  std::vector<bool> member_;
};

/// (t, x*, H) over a base group G; H <= G^t is given by generators, each a
/// t-tuple of elements of G.
struct ProblemInstance {
  FiniteAbelianGroup group;
  std::size_t t = 0;
  std::vector<Element> xstar;
  std::vector<std::vector<Element>> hgens;

  ProblemInstance() = default;
  /// Validates lengths and that every element is canonical in `group`.
  ProblemInstance(FiniteAbelianGroup group, std::size_t t, std::vector<Element> xstar,
                  std::vector<std::vector<Element>> hgens);

  bool is_pi() const;
  /// The generators as a subgroup of G^t.
  SubgroupGens subgroup() const;

  friend bool operator==(const ProblemInstance&, const ProblemInstance&) = default;
};

/// One coefficient per generator of H, reduced mod the group exponent.
struct Certificate {
  std::vector<std::int64_t> coefficients;

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

/// x* + sum_i c_i h_i as a t-tuple.
std::vector<Element> certificate_point(const ProblemInstance& inst, const Certificate& cert);

/// True iff x* + sum_i c_i h_i lies in S^t. Throws ContractError on a length
/// or group mismatch.
bool verify_certificate(const ProblemInstance& inst, const SubsetS& s, const Certificate& cert);

enum class Answer { Yes, No, BudgetExceeded };

struct SolveResult {
  Answer answer = Answer::No;
  std::optional<Certificate> certificate;
  std::uint64_t nodes = 0;
};

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

/// Exhaustive depth-first search over coefficient digits, generators in order
/// and digits ascending, so a Yes carries the lexicographically smallest
/// certificate. Digits of h_i range over [0, ord(h_i)). After each digit,
/// every coordinate p touched by the generator must satisfy
/// v_p in S + <h_j[p] : j later>; with no later generators touching p this is
/// plain membership in S. Each digit tried counts as one node.
SolveResult oracle_solve(const ProblemInstance& inst, const SubsetS& s, std::uint64_t budget = kDefaultBudget);

}  // namespace subprod
