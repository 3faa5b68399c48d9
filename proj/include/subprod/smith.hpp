#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "subprod/matrix.hpp"

namespace subprod {

/// U * M * V = D with D diagonal, nonnegative, and D[i][i] | D[i+1][i+1].
/// Uinv (the inverse of U) is only filled by smith_normal_form_mod.
struct SmithForm {
  Matrix U;
  Matrix D;
  Matrix V;
  Matrix Uinv;

  std::vector<std::int64_t> diagonal() const;
};

/// Smith normal form over the integers. Pivot rule: smallest nonzero absolute
/// value in the active block, ties broken by lowest (row, column). U and V
/// are shrunk by norm-reducing moves that keep U M V = D; OverflowError is
/// thrown if an entry of the result does not fit in int64.
SmithForm smith_normal_form(const Matrix& m);

/// Smith normal form over Z/modulus. Entries of U, V, D are residues in
/// [0, modulus); U and V are invertible modulo `modulus` and every nonzero
/// diagonal entry divides `modulus`. Entries never grow, so this variant is
/// safe for large systems.
SmithForm smith_normal_form_mod(const Matrix& m, std::int64_t modulus);

/// Find x with A x = b (mod moduli[i]) row-wise. Rows are scaled to the common
/// modulus lcm(moduli) and the system is diagonalised with
/// smith_normal_form_mod. The returned entries lie in [0, lcm(moduli)).
std::optional<std::vector<std::int64_t>> solve_linear_congruence(
    const Matrix& a, const std::vector<std::int64_t>& b, const std::vector<std::int64_t>& moduli);

}  // namespace subprod
