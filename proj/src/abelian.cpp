#include "subprod/abelian.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

#include "subprod/checked.hpp"
#include "subprod/errors.hpp"
#include "subprod/smith.hpp"

namespace subprod {

// ---------------------------------------------------------------------------
// FiniteAbelianGroup

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<std::int64_t> moduli) : moduli_(std::move(moduli)) {
  for (auto d : moduli_) {
    require(d >= 1, "FiniteAbelianGroup: moduli must be >= 1");
    exponent_ = checked::lcm(exponent_, d);
  }
}

std::int64_t FiniteAbelianGroup::order() const {
  std::int64_t n = 1;
  for (auto d : moduli_) n = checked::mul(n, d);
  return n;
}

Element FiniteAbelianGroup::element(const std::vector<std::int64_t>& raw) const {
  require(raw.size() == moduli_.size(), "element: wrong number of coordinates");
  std::vector<std::int64_t> c(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) c[i] = checked::mod(raw[i], moduli_[i]);
  return Element(std::move(c));
}

bool FiniteAbelianGroup::contains(const Element& x) const {
  if (x.size() != moduli_.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] < 0 || x[i] >= moduli_[i]) return false;
  return true;
}

Element FiniteAbelianGroup::add(const Element& x, const Element& y) const {
  Element r = x;
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    r.coords[i] += y[i];
    if (r.coords[i] >= moduli_[i]) r.coords[i] -= moduli_[i];
  }
  return r;
}

Element FiniteAbelianGroup::sub(const Element& x, const Element& y) const {
  Element r = x;
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    r.coords[i] -= y[i];
    if (r.coords[i] < 0) r.coords[i] += moduli_[i];
  }
  return r;
}

Element FiniteAbelianGroup::neg(const Element& x) const { return sub(zero(), x); }

Element FiniteAbelianGroup::scale(std::int64_t k, const Element& x) const {
  Element r = x;
  for (std::size_t i = 0; i < moduli_.size(); ++i) r.coords[i] = checked::mulmod(k, x[i], moduli_[i]);
  return r;
}

std::int64_t FiniteAbelianGroup::order_of(const Element& x) const {
  std::int64_t o = 1;
  for (std::size_t i = 0; i < moduli_.size(); ++i) o = checked::lcm(o, moduli_[i] / std::gcd(moduli_[i], x[i]));
  return o;
}

std::uint64_t FiniteAbelianGroup::index_of(const Element& x) const {
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < moduli_.size(); ++i) idx = idx * static_cast<std::uint64_t>(moduli_[i]) + x[i];
  return idx;
}

Element FiniteAbelianGroup::element_at(std::uint64_t index) const {
  std::vector<std::int64_t> c(moduli_.size());
  for (std::size_t i = moduli_.size(); i-- > 0;) {
    c[i] = static_cast<std::int64_t>(index % static_cast<std::uint64_t>(moduli_[i]));
    index /= static_cast<std::uint64_t>(moduli_[i]);
  }
  return Element(std::move(c));
}

std::vector<Element> FiniteAbelianGroup::elements(std::int64_t cap) const {
  const std::int64_t n = order();
  require(n <= cap, "elements: group too large to enumerate");
  std::vector<Element> out;
  out.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) out.push_back(element_at(static_cast<std::uint64_t>(i)));
  return out;
}

FiniteAbelianGroup FiniteAbelianGroup::power(std::size_t t) const {
  std::vector<std::int64_t> m;
  m.reserve(t * moduli_.size());
  for (std::size_t i = 0; i < t; ++i) m.insert(m.end(), moduli_.begin(), moduli_.end());
  return FiniteAbelianGroup(std::move(m));
}

Element flatten(std::span<const Element> parts) {
  std::vector<std::int64_t> c;
  for (const auto& p : parts) c.insert(c.end(), p.coords.begin(), p.coords.end());
  return Element(std::move(c));
}

std::vector<Element> unflatten(const FiniteAbelianGroup& g, const Element& flat, std::size_t t) {
  const std::size_t k = g.rank();
  require(flat.size() == k * t, "unflatten: size mismatch");
  std::vector<Element> out;
  for (std::size_t i = 0; i < t; ++i)
    out.emplace_back(std::vector<std::int64_t>(flat.coords.begin() + static_cast<std::ptrdiff_t>(i * k),
                                               flat.coords.begin() + static_cast<std::ptrdiff_t>((i + 1) * k)));
  return out;
}

// ---------------------------------------------------------------------------
// Homomorphism

Homomorphism::Homomorphism(FiniteAbelianGroup source, FiniteAbelianGroup target, Matrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  require(matrix_.rows() == target_.rank() && matrix_.cols() == source_.rank(),
          "Homomorphism: matrix shape does not match groups");
  for (std::size_t i = 0; i < matrix_.rows(); ++i)
    for (std::size_t j = 0; j < matrix_.cols(); ++j) matrix_(i, j) = checked::mod(matrix_(i, j), target_.moduli()[i]);
  for (std::size_t j = 0; j < matrix_.cols(); ++j)
    for (std::size_t i = 0; i < matrix_.rows(); ++i)
      require(checked::mulmod(source_.moduli()[j], matrix_(i, j), target_.moduli()[i]) == 0,
              "Homomorphism: not well defined (order of a source generator does not annihilate its image)");
}

Homomorphism Homomorphism::identity(const FiniteAbelianGroup& g) { return Homomorphism(g, g, Matrix::identity(g.rank())); }

Homomorphism Homomorphism::multiplication(const FiniteAbelianGroup& g, std::int64_t k) {
  Matrix m(g.rank(), g.rank());
  for (std::size_t i = 0; i < g.rank(); ++i) m(i, i) = k;
  return Homomorphism(g, g, std::move(m));
}

Element Homomorphism::operator()(const Element& x) const {
  require(source_.contains(x), "Homomorphism: argument not in source group");
  std::vector<std::int64_t> y(target_.rank(), 0);
  for (std::size_t i = 0; i < matrix_.rows(); ++i) {
    const std::int64_t m = target_.moduli()[i];
    __int128 acc = 0;
    for (std::size_t j = 0; j < matrix_.cols(); ++j) acc = (acc + static_cast<__int128>(matrix_(i, j)) * x[j]) % m;
    y[i] = static_cast<std::int64_t>(acc);
  }
  return Element(std::move(y));
}

bool Homomorphism::is_identity() const { return source_ == target_ && *this == identity(source_); }

Homomorphism compose(const Homomorphism& g, const Homomorphism& f) {
  require(g.source() == f.target(), "compose: groups do not chain");
  return Homomorphism(f.source(), g.target(), multiply(g.matrix(), f.matrix()));
}

bool is_injective(const Homomorphism& f) {
  const auto k = kernel_of_hom(f);
  return std::all_of(k.gens.begin(), k.gens.end(), [&](const Element& x) { return x == f.source().zero(); });
}

// ---------------------------------------------------------------------------
// Subgroups

SubgroupGens::SubgroupGens(FiniteAbelianGroup amb, std::vector<Element> g) : ambient(std::move(amb)), gens(std::move(g)) {
  for (const auto& x : gens) require(ambient.contains(x), "SubgroupGens: generator not in ambient group");
}

namespace {

Matrix generator_matrix(const FiniteAbelianGroup& ambient, const std::vector<Element>& gens) {
  Matrix a(ambient.rank(), gens.size());
  for (std::size_t j = 0; j < gens.size(); ++j)
    for (std::size_t i = 0; i < ambient.rank(); ++i) a(i, j) = gens[j][i];
  return a;
}

}  // namespace

std::optional<std::vector<std::int64_t>> subgroup_membership(const SubgroupGens& h, const Element& v) {
  require(h.ambient.contains(v), "subgroup_membership: element not in ambient group");
  return solve_linear_congruence(generator_matrix(h.ambient, h.gens), v.coords, h.ambient.moduli());
}

SubgroupGens kernel_of_hom(const Homomorphism& f) {
  const auto& src = f.source();
  const auto& tgt = f.target();
  const std::int64_t e = checked::lcm(src.exponent(), tgt.exponent());
  const std::size_t r = tgt.rank(), n = src.rank();

  // Work in (Z/e)^n -> (Z/e)^r; target component i embeds via x -> (e/m_i) x.
  Matrix scaled(r, n);
  for (std::size_t i = 0; i < r; ++i) {
    const std::int64_t fct = e / tgt.moduli()[i];
    for (std::size_t j = 0; j < n; ++j) scaled(i, j) = checked::mulmod(fct, f.matrix()(i, j), e);
  }
  const SmithForm snf = smith_normal_form_mod(scaled, e);

  std::vector<Element> gens;
  for (std::size_t j = 0; j < n; ++j) {
    std::int64_t mult = 1;
    if (j < r && snf.D(j, j) != 0) mult = e / snf.D(j, j);
    std::vector<std::int64_t> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = checked::mulmod(snf.V(i, j), mult, src.moduli()[i]);
    Element x(std::move(g));
    if (x != src.zero()) gens.push_back(std::move(x));
  }
  return SubgroupGens(src, std::move(gens));
}

Intersection subgroup_intersect_with_coefficients(const SubgroupGens& h1, const SubgroupGens& h2) {
  require(h1.ambient == h2.ambient, "subgroup_intersect: ambient mismatch");
  const auto& g = h1.ambient;
  const std::size_t n1 = h1.gens.size(), n2 = h2.gens.size();
  const std::int64_t e = g.exponent();

  // (lambda, mu) -> sum lambda_i h1_i - sum mu_j h2_j on (Z/e)^(n1+n2).
  Matrix m(g.rank(), n1 + n2);
  for (std::size_t i = 0; i < g.rank(); ++i) {
    for (std::size_t j = 0; j < n1; ++j) m(i, j) = h1.gens[j][i];
    for (std::size_t j = 0; j < n2; ++j) m(i, n1 + j) = checked::mod(-h2.gens[j][i], g.moduli()[i]);
  }
  const FiniteAbelianGroup coeffs(std::vector<std::int64_t>(n1 + n2, e));
  const SubgroupGens ker = kernel_of_hom(Homomorphism(coeffs, g, std::move(m)));

  Intersection out;
  out.subgroup.ambient = g;
  std::set<Element> seen;
  for (const auto& k : ker.gens) {
    Element x = g.zero();
    for (std::size_t j = 0; j < n1; ++j) x = g.add(x, g.scale(k[j], h1.gens[j]));
    if (x == g.zero() || !seen.insert(x).second) continue;
    out.subgroup.gens.push_back(std::move(x));
    out.coefficients.emplace_back(k.coords.begin(), k.coords.begin() + static_cast<std::ptrdiff_t>(n1));
  }
  return out;
}

SubgroupGens subgroup_intersect(const SubgroupGens& h1, const SubgroupGens& h2) {
  return subgroup_intersect_with_coefficients(h1, h2).subgroup;
}

Quotient quotient_group(const FiniteAbelianGroup& g, const SubgroupGens& k) {
  require(k.ambient == g, "quotient_group: subgroup lives in a different group");
  const std::size_t rank = g.rank(), m = k.gens.size();
  const std::int64_t e = g.exponent();
  // G/K = Z^rank / (K + diag(d)); every relation lattice here contains e Z^rank,
  // so the Smith form can be taken over Z/e.
  Matrix rel(rank, m + rank);
  for (std::size_t i = 0; i < rank; ++i) {
    for (std::size_t j = 0; j < m; ++j) rel(i, j) = k.gens[j][i];
    rel(i, m + i) = g.moduli()[i];
  }
  const SmithForm snf = smith_normal_form_mod(rel, e);

  std::vector<std::size_t> kept;
  std::vector<std::int64_t> qmod;
  for (std::size_t i = 0; i < rank; ++i) {
    const std::int64_t d = snf.D(i, i) == 0 ? e : snf.D(i, i);
    if (d > 1) {
      kept.push_back(i);
      qmod.push_back(d);
    }
  }
  FiniteAbelianGroup q(qmod);
  Matrix p(kept.size(), rank);
  for (std::size_t r = 0; r < kept.size(); ++r)
    for (std::size_t j = 0; j < rank; ++j) p(r, j) = snf.U(kept[r], j);
  Homomorphism proj(g, q, std::move(p));

  const std::int64_t qn = q.order();
  std::vector<Element> table(static_cast<std::size_t>(qn));
  std::vector<bool> set(static_cast<std::size_t>(qn), false);
  std::int64_t filled = 0;
  const std::int64_t gn = g.order();
  require(gn <= (std::int64_t{1} << 22), "quotient_group: group too large for a lift table");
  for (std::int64_t idx = 0; idx < gn && filled < qn; ++idx) {
    Element x = g.element_at(static_cast<std::uint64_t>(idx));
    const auto qi = static_cast<std::size_t>(q.index_of(proj(x)));
    if (!set[qi]) {
      set[qi] = true;
      table[qi] = std::move(x);
      ++filled;
    }
  }
  ensure(filled == qn, "quotient_group: projection is not surjective");
  return Quotient{std::move(q), std::move(proj), std::move(table)};
}

std::optional<std::vector<Element>> subgroup_enumerate(const SubgroupGens& h, std::size_t cap) {
  require(cap >= 1, "subgroup_enumerate: cap must be positive");
  const auto& g = h.ambient;
  std::set<Element> seen{g.zero()};
  std::deque<Element> frontier{g.zero()};
  while (!frontier.empty()) {
    Element x = std::move(frontier.front());
    frontier.pop_front();
    for (const auto& gen : h.gens) {
      Element y = g.add(x, gen);
      if (seen.insert(y).second) {
        if (seen.size() > cap) return std::nullopt;
        frontier.push_back(std::move(y));
      }
    }
  }
  return std::vector<Element>(seen.begin(), seen.end());
}

Presentation present_subgroup(const SubgroupGens& h) {
  const auto& amb = h.ambient;
  const std::size_t m = h.gens.size();
  const std::int64_t e = amb.exponent();
  const FiniteAbelianGroup free_part(std::vector<std::int64_t>(m, e));
  const SubgroupGens ker = kernel_of_hom(Homomorphism(free_part, amb, generator_matrix(amb, h.gens)));

  // <gens> = (Z/e)^m / ker; diagonalise the kernel over Z/e.
  Matrix rel(m, ker.gens.size());
  for (std::size_t j = 0; j < ker.gens.size(); ++j)
    for (std::size_t i = 0; i < m; ++i) rel(i, j) = ker.gens[j][i];
  const SmithForm snf = smith_normal_form_mod(rel, e);

  std::vector<std::int64_t> mods;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < m; ++i) {
    const std::int64_t d = (i < ker.gens.size() && snf.D(i, i) != 0) ? snf.D(i, i) : e;
    if (d > 1) {
      kept.push_back(i);
      mods.push_back(d);
    }
  }
  FiniteAbelianGroup sub(mods);
  Matrix emb(amb.rank(), kept.size());
  for (std::size_t c = 0; c < kept.size(); ++c) {
    for (std::size_t r = 0; r < amb.rank(); ++r) {
      const std::int64_t mr = amb.moduli()[r];
      __int128 acc = 0;
      for (std::size_t j = 0; j < m; ++j)
        acc = (acc + static_cast<__int128>(h.gens[j][r]) * (snf.Uinv(j, kept[c]) % mr)) % mr;
      emb(r, c) = static_cast<std::int64_t>(acc);
    }
  }
  return Presentation{sub, Homomorphism(sub, amb, std::move(emb))};
}

std::string to_string(const Element& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(x[i]);
  }
  return s + ")";
}

std::string short_string(const Element& x) { return x.size() == 1 ? std::to_string(x[0]) : to_string(x); }

std::string to_string(const FiniteAbelianGroup& g) {
  std::string s;
  for (std::size_t i = 0; i < g.rank(); ++i) {
    if (i) s += ",";
    s += std::to_string(g.moduli()[i]);
  }
  return s;
}

}  // namespace subprod
