#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "subprod/abelian.hpp"
#include "subprod/problem.hpp"
#include "subprod/reductions.hpp"

namespace subprod {

enum class Variant { P, Pi };

/// A structural fact checked while compiling. `set` is the subset the claim
/// is about; its group is the ambient group of the claim.
struct Assertion {
  enum class Kind {
    NotCoset,          // |set| >= 2 and set is not a coset
    SabTriple,         // elements = {s, a, b}: s, s+a, s+b in set, a != b, s+a+b not in set
    InA,               // elements = {a, b, g}: g, g+a, g+b in set, g+a+b not in set
    CosetInside,       // elements = {base, gens...}: base + <gens> inside set
    NotMember,         // elements = {x}
    Periodic,          // elements = {k}: set + k = set
    ClosureIsA,        // elements = {a, b, closure...}: closure equals the A-set of (set, a, b)
    EvenPattern,       // elements = {a, b}: G = <a,b>, set = G \ (a+b+<2a,2b>), A-set = <2a,2b>
    KleinComplement,   // group is C2 x C2 and |set| = 3
    ThetaFixed,        // theta(set) = set
    MeasureDecreases,  // before > after
  };
  Kind kind = Kind::NotCoset;
  SubsetS set;
  std::vector<Element> elements;
  std::int64_t before = 0, after = 0;
};

std::string describe(const Assertion& a);
/// Re-evaluates the claim from scratch.
bool recheck(const Assertion& a);

struct ReductionPipeline {
  FiniteAbelianGroup group;
  SubsetS subset;
  Variant variant = Variant::P;
  std::vector<ReductionStep> steps;
  /// Filled by the compiler; not part of the serialized form or of ==.
  std::vector<Assertion> trace;

  friend bool operator==(const ReductionPipeline& x, const ReductionPipeline& y) {
    return x.group == y.group && x.subset == y.subset && x.variant == y.variant && x.steps == y.steps;
  }
};

bool recheck_trace(const ReductionPipeline& p);

namespace outcome {
/// Reduce P_{group, subset} to the current target with `step`, then translate by `offset`.
struct Recurse {
  ReductionStep step;
  FiniteAbelianGroup group;
  SubsetS subset;
  Element offset;
};
struct Advance {
  std::vector<Element> next;
};
struct BaseEvenPattern {};
}  // namespace outcome

using CaseOutcome = std::variant<outcome::Recurse, outcome::Advance, outcome::BaseEvenPattern>;

/// One round of the case analysis at g. Requires G = <a, b>, a != b and g in
/// A = {g : g, g+a, g+b in S, g+a+b not in S}. Returns Recurse or
/// Advance{g - 2a, g - 2b}. Throws InternalError if a forced structural fact
/// fails to hold.
CaseOutcome pigsspecial_step(const SubsetS& s, const Element& a, const Element& b, const Element& g,
                             std::vector<Assertion>* trace = nullptr);

/// Runs pigsspecial_step over the Advance-closure of 0 until something
/// recurses; returns Recurse or BaseEvenPattern.
CaseOutcome pigsspecial_resolve(const SubsetS& s, const Element& a, const Element& b,
                                std::vector<Assertion>* trace = nullptr);

struct CompileOptions {
  bool selfcheck = true;
  std::uint64_t budget = kDefaultBudget;
};

/// Pipeline taking any graph to a P_{G,S} instance that is a yes-instance iff
/// the graph is 3-colorable. Throws ContractError unless P_{G,S} is NP-complete.
ReductionPipeline compile_hardness_P(const SubsetS& s, const CompileOptions& opts = {});

/// Same for Pi_{G,S}; output instances have x* = 0.
ReductionPipeline compile_hardness_Pi(const SubsetS& s, const CompileOptions& opts = {});

/// Replays the steps on a graph. With a 3-coloring, the result also carries a
/// certificate. Throws ContractError if the coloring is not a proper 3-coloring.
PipelineState apply_pipeline(const ReductionPipeline& p, const Graph& graph,
                             const std::optional<Coloring>& coloring = std::nullopt);

struct SelfCheckResult {
  bool k3_certificate_ok = false;
  Answer k4_answer = Answer::BudgetExceeded;
  std::uint64_t k4_nodes = 0;
  bool ok() const { return k3_certificate_ok && k4_answer == Answer::No; }
};

/// K3 must yield a verifying certificate and K4 an oracle No.
SelfCheckResult selfcheck(const ReductionPipeline& p, std::uint64_t budget = kDefaultBudget);

}  // namespace subprod
