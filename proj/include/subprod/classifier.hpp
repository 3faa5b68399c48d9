#pragma once

#include <optional>
#include <string>
#include <variant>

#include "subprod/abelian.hpp"
#include "subprod/problem.hpp"

namespace subprod {

struct CosetData {
  Element base;
  SubgroupGens subgroup;
};

/// For nonempty S with S - s0 a subgroup (s0 the smallest element), returns
/// s0 and greedily chosen generators of S - s0. Empty S gives nullopt.
std::optional<CosetData> is_coset(const SubsetS& s);

/// Intersection of aS over a in [0, exponent) with aS inside S.
SubsetS theta(const SubsetS& s);

/// s, s+a, s+b in S, a != b, s+a+b not in S.
struct SabTriple {
  Element s, a, b;
  friend bool operator==(const SabTriple&, const SabTriple&) = default;
};

/// Lexicographically smallest (s, a, b); nullopt iff none exists. Throws
/// ContractError if |S| < 3.
std::optional<SabTriple> find_sab(const SubsetS& s);

enum class Verdict { InP, NPComplete };

namespace reason {
struct EmptyS {};
struct CosetS {
  CosetData coset;
};
struct ThetaCoset {
  SubsetS theta;
  CosetData coset;
};
/// |S| >= 3 and not a coset.
struct NonCoset {
  SabTriple witness;
};
/// S = {s, s + d} with ord(d) >= 3.
struct NonCosetPair {
  Element s, d;
};
struct ThetaNonCoset {
  SubsetS theta;
};
}  // namespace reason

using Reason = std::variant<reason::EmptyS, reason::CosetS, reason::ThetaCoset, reason::NonCoset, reason::NonCosetPair,
                            reason::ThetaNonCoset>;

struct Classification {
  Verdict verdict;
  Reason reason;
};

/// P_{G,S} is in P iff S is empty or a coset.
Classification classify_P(const FiniteAbelianGroup& g, const SubsetS& s);
/// Pi_{G,S} is in P iff S is empty or theta(S) is a coset.
Classification classify_Pi(const FiniteAbelianGroup& g, const SubsetS& s);

/// One-line summary, e.g. "NP-complete (S not a coset; |S|=2, d=1)".
std::string to_string(const Classification& c);

}  // namespace subprod
