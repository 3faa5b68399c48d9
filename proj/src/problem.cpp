#include "subprod/problem.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "subprod/checked.hpp"
#include "subprod/errors.hpp"
#include "bitmap_subgroup.hpp"

namespace subprod {

namespace {

constexpr std::int64_t kMaxSubsetGroupOrder = std::int64_t{1} << 26;

std::int64_t residue(std::int64_t v, std::int64_t d) { return v >= d ? v - d : v; }

// Bitmaps of S + K for the subgroups K met during the search, deduplicated.
class CosetUnionCache {
 public:
  CosetUnionCache(const FiniteAbelianGroup& g, const SubsetS& s) : g_(g), s_(s), n_(g.order()) {}

  std::size_t id_for(const std::vector<bool>& k_bits) {
    auto it = ids_.find(k_bits);
    if (it != ids_.end()) return it->second;
    std::vector<bool> bits(static_cast<std::size_t>(n_), false);
    std::vector<std::uint64_t> k;
    for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(n_); ++i)
      if (k_bits[i]) k.push_back(i);
    for (const auto& x : s_.elements())
      for (auto ki : k) bits[g_.index_of(g_.add(x, g_.element_at(ki)))] = true;
    tables_.push_back(std::move(bits));
    ids_.emplace(k_bits, tables_.size() - 1);
    return tables_.size() - 1;
  }

  bool test(std::size_t id, std::uint64_t index) const { return tables_[id][index]; }

 private:
  const FiniteAbelianGroup& g_;
  const SubsetS& s_;
  std::int64_t n_;
  std::map<std::vector<bool>, std::size_t> ids_;
  std::vector<std::vector<bool>> tables_;
};

}  // namespace

SubsetS::SubsetS(FiniteAbelianGroup g, std::vector<Element> elements)
    : group_(std::move(g)), elements_(std::move(elements)) {
  const std::int64_t n = group_.order();
  require(n <= kMaxSubsetGroupOrder, "SubsetS: group too large");
  for (const auto& x : elements_) require(group_.contains(x), "SubsetS: element " + to_string(x) + " not in group");
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  member_.assign(static_cast<std::size_t>(n), false);
  for (const auto& x : elements_) member_[group_.index_of(x)] = true;
}

ProblemInstance::ProblemInstance(FiniteAbelianGroup g, std::size_t t_, std::vector<Element> x,
                                 std::vector<std::vector<Element>> h)
    : group(std::move(g)), t(t_), xstar(std::move(x)), hgens(std::move(h)) {
  require(xstar.size() == t, "instance: xstar has length " + std::to_string(xstar.size()) + ", expected t");
  for (const auto& e : xstar) require(group.contains(e), "instance: xstar entry not in group");
  for (const auto& gen : hgens) {
    require(gen.size() == t, "instance: generator length differs from t");
    for (const auto& e : gen) require(group.contains(e), "instance: generator entry not in group");
  }
}

bool ProblemInstance::is_pi() const {
  return std::all_of(xstar.begin(), xstar.end(), [&](const Element& x) { return x == group.zero(); });
}

SubgroupGens ProblemInstance::subgroup() const {
  std::vector<Element> flat;
  for (const auto& h : hgens) flat.push_back(flatten(h));
  return SubgroupGens(group.power(t), std::move(flat));
}

std::vector<Element> certificate_point(const ProblemInstance& inst, const Certificate& cert) {
  require(cert.coefficients.size() == inst.hgens.size(), "certificate length does not match generator count");
  std::vector<Element> point = inst.xstar;
  for (std::size_t i = 0; i < inst.hgens.size(); ++i) {
    if (cert.coefficients[i] == 0) continue;
    for (std::size_t p = 0; p < inst.t; ++p)
      point[p] = inst.group.add(point[p], inst.group.scale(cert.coefficients[i], inst.hgens[i][p]));
  }
  return point;
}

bool verify_certificate(const ProblemInstance& inst, const SubsetS& s, const Certificate& cert) {
  require(s.group() == inst.group, "verify_certificate: subset and instance groups differ");
  const auto point = certificate_point(inst, cert);
  return std::all_of(point.begin(), point.end(), [&](const Element& x) { return s.contains(x); });
}

SolveResult oracle_solve(const ProblemInstance& inst, const SubsetS& s, std::uint64_t budget) {
  require(s.group() == inst.group, "oracle_solve: subset and instance groups differ");
  require(budget >= 1, "oracle_solve: budget must be positive");
  const FiniteAbelianGroup& g = inst.group;
  const std::size_t t = inst.t, m = inst.hgens.size(), r = g.rank();
  const auto& mod = g.moduli();

  SolveResult result;
  if (t == 0) {
    result.answer = Answer::Yes;
    result.certificate = Certificate{std::vector<std::int64_t>(m, 0)};
    return result;
  }

  std::vector<std::vector<std::size_t>> touched(m);
  std::vector<std::int64_t> ord(m, 1);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t p = 0; p < t; ++p)
      if (inst.hgens[i][p] != g.zero()) {
        touched[i].push_back(p);
        ord[i] = checked::lcm(ord[i], g.order_of(inst.hgens[i][p]));
      }

  // check[p][i] = id of S + <h_j[p] : j >= i>.
  CosetUnionCache cache(g, s);
  std::vector<std::vector<std::size_t>> check(t, std::vector<std::size_t>(m + 1));
  for (std::size_t p = 0; p < t; ++p) {
    auto k = detail::trivial_subgroup_bits(g);
    check[p][m] = cache.id_for(k);
    for (std::size_t i = m; i-- > 0;) {
      const bool grew = detail::extend_subgroup_bits(g, k, inst.hgens[i][p]);
      check[p][i] = grew ? cache.id_for(k) : check[p][i + 1];
    }
  }

  std::vector<std::int64_t> v(t * r);
  for (std::size_t p = 0; p < t; ++p)
    for (std::size_t j = 0; j < r; ++j) v[p * r + j] = inst.xstar[p][j];
  const auto index_at = [&](std::size_t p) {
    std::uint64_t idx = 0;
    for (std::size_t j = 0; j < r; ++j) idx = idx * static_cast<std::uint64_t>(mod[j]) + static_cast<std::uint64_t>(v[p * r + j]);
    return idx;
  };
  const auto add_gen = [&](std::size_t i) {
    for (auto p : touched[i])
      for (std::size_t j = 0; j < r; ++j) v[p * r + j] = residue(v[p * r + j] + inst.hgens[i][p][j], mod[j]);
  };

  for (std::size_t p = 0; p < t; ++p)
    if (!cache.test(check[p][0], index_at(p))) return result;
  if (m == 0) {
    result.answer = Answer::Yes;
    result.certificate = Certificate{};
    return result;
  }

  std::vector<std::int64_t> digit(m, 0);
  std::size_t i = 0;
  for (;;) {
    if (++result.nodes > budget) {
      result.answer = Answer::BudgetExceeded;
      return result;
    }
    const bool ok = std::all_of(touched[i].begin(), touched[i].end(),
                                [&](std::size_t p) { return cache.test(check[p][i + 1], index_at(p)); });
    if (ok) {
      if (i + 1 == m) {
        result.answer = Answer::Yes;
        result.certificate = Certificate{digit};
        return result;
      }
      ++i;
      continue;
    }
    for (;;) {
      add_gen(i);
      if (++digit[i] < ord[i]) break;
      digit[i] = 0;
      if (i == 0) return result;
      --i;
    }
  }
}

}  // namespace subprod
