#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "subprod/matrix.hpp"

namespace subprod {

/// Element of a product of cyclic groups; coords[i] is a residue in [0, d_i).
struct Element {
  std::vector<std::int64_t> coords;

  Element() = default;
  explicit Element(std::vector<std::int64_t> c) : coords(std::move(c)) {}

  std::size_t size() const { return coords.size(); }
  std::int64_t operator[](std::size_t i) const { return coords[i]; }

  friend auto operator<=>(const Element&, const Element&) = default;
  friend bool operator==(const Element&, const Element&) = default;
};

/// Z/d_1 x ... x Z/d_k. The moduli list is kept as given (it need not be in
/// invariant-factor form); k == 0 is the trivial group.
class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() = default;
  explicit FiniteAbelianGroup(std::vector<std::int64_t> moduli);

  static FiniteAbelianGroup cyclic(std::int64_t n) { return FiniteAbelianGroup({n}); }

  const std::vector<std::int64_t>& moduli() const { return moduli_; }
  std::size_t rank() const { return moduli_.size(); }

  /// Product of the moduli; throws OverflowError if it exceeds int64.
  std::int64_t order() const;
  std::int64_t exponent() const { return exponent_; }

  Element zero() const { return Element(std::vector<std::int64_t>(moduli_.size(), 0)); }
  /// Reduces arbitrary integers into canonical residues.
  Element element(const std::vector<std::int64_t>& raw) const;
  bool contains(const Element& x) const;

  Element add(const Element& x, const Element& y) const;
  Element sub(const Element& x, const Element& y) const;
  Element neg(const Element& x) const;
  Element scale(std::int64_t k, const Element& x) const;
  std::int64_t order_of(const Element& x) const;

  /// Mixed-radix index; the first component is most significant, so index
  /// order equals lexicographic order.
  std::uint64_t index_of(const Element& x) const;
  Element element_at(std::uint64_t index) const;
  /// All elements in lexicographic order. Throws ContractError for groups
  /// larger than `cap`.
  std::vector<Element> elements(std::int64_t cap = std::int64_t{1} << 22) const;

  /// G^t as a single product group (moduli repeated t times).
  FiniteAbelianGroup power(std::size_t t) const;

  friend bool operator==(const FiniteAbelianGroup&, const FiniteAbelianGroup&) = default;

 private:
  std::vector<std::int64_t> moduli_;
  std::int64_t exponent_ = 1;
};

/// Concatenate t elements of a base group into one element of G^t.
Element flatten(std::span<const Element> parts);
/// Inverse of flatten: splits `flat` into t elements of the base group `g`.
std::vector<Element> unflatten(const FiniteAbelianGroup& g, const Element& flat, std::size_t t);

/// Z-linear map between product groups; matrix is target.rank() x source.rank().
class Homomorphism {
 public:
  Homomorphism() = default;
  /// Throws ContractError unless d_j * column_j vanishes in the target.
  Homomorphism(FiniteAbelianGroup source, FiniteAbelianGroup target, Matrix matrix);

  static Homomorphism identity(const FiniteAbelianGroup& g);
  /// x -> k x on g.
  static Homomorphism multiplication(const FiniteAbelianGroup& g, std::int64_t k);

  const FiniteAbelianGroup& source() const { return source_; }
  const FiniteAbelianGroup& target() const { return target_; }
  const Matrix& matrix() const { return matrix_; }

  Element operator()(const Element& x) const;
  bool is_identity() const;

  friend bool operator==(const Homomorphism&, const Homomorphism&) = default;

 private:
  FiniteAbelianGroup source_;
  FiniteAbelianGroup target_;
  Matrix matrix_;
};

/// g o f
Homomorphism compose(const Homomorphism& g, const Homomorphism& f);

/// Subgroup of `ambient` spanned by `gens`.
struct SubgroupGens {
  FiniteAbelianGroup ambient;
  std::vector<Element> gens;

  SubgroupGens() = default;
  /// Throws ContractError if a generator is not a canonical element of ambient.
  SubgroupGens(FiniteAbelianGroup ambient, std::vector<Element> gens);

  friend bool operator==(const SubgroupGens&, const SubgroupGens&) = default;
};

/// Coefficients lambda (reduced mod the exponent) with sum lambda_i gens_i = v,
/// or nullopt if v is not in the subgroup.
std::optional<std::vector<std::int64_t>> subgroup_membership(const SubgroupGens& h, const Element& v);

/// Generators of ker f, computed from a Smith form of the matrix with the
/// target relations folded in.
SubgroupGens kernel_of_hom(const Homomorphism& f);

/// Generators of H1 n H2, together with each generator's coefficients over
/// H1's generators.
struct Intersection {
  SubgroupGens subgroup;
  std::vector<std::vector<std::int64_t>> coefficients;
};
Intersection subgroup_intersect_with_coefficients(const SubgroupGens& h1, const SubgroupGens& h2);
SubgroupGens subgroup_intersect(const SubgroupGens& h1, const SubgroupGens& h2);

/// G/K in invariant-factor form with its projection and a section.
struct Quotient {
  FiniteAbelianGroup group;
  Homomorphism proj;
  /// lift_table[index of q] = lexicographically smallest g with proj(g) = q.
  std::vector<Element> lift_table;

  Element lift(const Element& q) const { return lift_table[group.index_of(q)]; }
};
Quotient quotient_group(const FiniteAbelianGroup& g, const SubgroupGens& k);

/// Full element set of <gens> in sorted order, or nullopt once it would exceed cap.
std::optional<std::vector<Element>> subgroup_enumerate(const SubgroupGens& h, std::size_t cap);

/// Abstract group isomorphic to <gens> with an injective embedding into the
/// ambient group.
struct Presentation {
  FiniteAbelianGroup group;
  Homomorphism embed;
};
Presentation present_subgroup(const SubgroupGens& h);

/// True iff f has trivial kernel.
bool is_injective(const Homomorphism& f);

std::string to_string(const Element& x);
/// Like to_string, but a single residue is printed bare: "3" instead of "(3)".
std::string short_string(const Element& x);
std::string to_string(const FiniteAbelianGroup& g);

}  // namespace subprod
