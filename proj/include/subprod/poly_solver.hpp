#pragma once

#include "subprod/problem.hpp"

namespace subprod {

/// Decides P_{G,S} for S empty or a coset a + G': yes iff (a,...,a) - x* lies
/// in H + G'^t. The certificate is read off the H-part of that membership.
/// Throws ContractError if S is nonempty and not a coset.
SolveResult solve_P_coset(const ProblemInstance& inst, const SubsetS& s);

/// Decides Pi_{G,S} when theta(S) is empty or a coset, by solving P for
/// theta(S) on H intersected with <theta(S)>^t. Throws ContractError on a
/// nonzero x* or a non-coset theta(S).
SolveResult solve_Pi_theta(const ProblemInstance& inst, const SubsetS& s);

}  // namespace subprod
