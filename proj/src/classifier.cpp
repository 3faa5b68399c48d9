#include "subprod/classifier.hpp"

#include <algorithm>
#include <sstream>

#include "subprod/errors.hpp"
#include "bitmap_subgroup.hpp"

namespace subprod {

std::optional<CosetData> is_coset(const SubsetS& s) {
  if (s.empty()) return std::nullopt;
  const auto& g = s.group();
  const Element base = s.elements().front();
  std::vector<Element> shifted;
  std::vector<bool> in_shifted(static_cast<std::size_t>(g.order()), false);
  for (const auto& x : s.elements()) {
    shifted.push_back(g.sub(x, base));
    in_shifted[g.index_of(shifted.back())] = true;
  }
  std::sort(shifted.begin(), shifted.end());

  auto k = detail::trivial_subgroup_bits(g);
  std::vector<Element> gens;
  for (const auto& x : shifted) {
    if (!detail::extend_subgroup_bits(g, k, x)) continue;
    gens.push_back(x);
    for (std::size_t i = 0; i < k.size(); ++i)
      if (k[i] && !in_shifted[i]) return std::nullopt;
  }
  return CosetData{base, SubgroupGens(g, std::move(gens))};
}

SubsetS theta(const SubsetS& s) {
  const auto& g = s.group();
  if (s.empty()) return s;
  std::vector<bool> keep(static_cast<std::size_t>(g.order()), true);
  for (std::int64_t a = 0; a < g.exponent(); ++a) {
    std::vector<bool> image(keep.size(), false);
    bool inside = true;
    for (const auto& x : s.elements()) {
      const auto idx = g.index_of(g.scale(a, x));
      if (!s.contains_index(idx)) {
        inside = false;
        break;
      }
      image[idx] = true;
    }
    if (!inside) continue;
    for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = keep[i] && image[i];
  }
  std::vector<Element> out;
  for (std::size_t i = 0; i < keep.size(); ++i)
    if (keep[i]) out.push_back(g.element_at(i));
  return SubsetS(g, std::move(out));
}

std::optional<SabTriple> find_sab(const SubsetS& s) {
  require(s.size() >= 3, "find_sab: |S| must be at least 3");
  const auto& g = s.group();
  for (const auto& x : s.elements()) {
    std::vector<Element> diffs;
    for (const auto& y : s.elements()) diffs.push_back(g.sub(y, x));
    std::sort(diffs.begin(), diffs.end());
    for (const auto& a : diffs)
      for (const auto& b : diffs)
        if (a != b && !s.contains(g.add(g.add(x, a), b))) return SabTriple{x, a, b};
  }
  return std::nullopt;
}

namespace {

Classification classify_nonempty_set(const SubsetS& s) {
  if (auto c = is_coset(s)) return {Verdict::InP, reason::CosetS{std::move(*c)}};
  if (s.size() == 2) {
    const auto& e = s.elements();
    return {Verdict::NPComplete, reason::NonCosetPair{e[0], s.group().sub(e[1], e[0])}};
  }
  const auto w = find_sab(s);
  ensure(w.has_value(), "classify: non-coset set without an (s,a,b) witness");
  return {Verdict::NPComplete, reason::NonCoset{*w}};
}

std::string set_string(const SubsetS& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + short_string(s.elements()[i]);
  return out + "}";
}

std::string gens_string(const SubgroupGens& h) {
  std::string out = "<";
  for (std::size_t i = 0; i < h.gens.size(); ++i) out += (i ? "," : "") + short_string(h.gens[i]);
  return out + ">";
}

}  // namespace

Classification classify_P(const FiniteAbelianGroup& g, const SubsetS& s) {
  require(s.group() == g, "classify_P: subset is over a different group");
  if (s.empty()) return {Verdict::InP, reason::EmptyS{}};
  return classify_nonempty_set(s);
}

Classification classify_Pi(const FiniteAbelianGroup& g, const SubsetS& s) {
  require(s.group() == g, "classify_Pi: subset is over a different group");
  if (s.empty()) return {Verdict::InP, reason::EmptyS{}};
  SubsetS th = theta(s);
  ensure(!th.empty(), "classify_Pi: theta of a nonempty set is empty");
  if (auto c = is_coset(th)) return {Verdict::InP, reason::ThetaCoset{std::move(th), std::move(*c)}};
  return {Verdict::NPComplete, reason::ThetaNonCoset{std::move(th)}};
}

std::string to_string(const Classification& c) {
  std::ostringstream out;
  out << (c.verdict == Verdict::InP ? "InP" : "NP-complete") << " (";
  std::visit(
      [&](const auto& r) {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, reason::EmptyS>) {
          out << "S is empty";
        } else if constexpr (std::is_same_v<R, reason::CosetS>) {
          out << "S is a coset; base " << short_string(r.coset.base) << ", subgroup " << gens_string(r.coset.subgroup);
        } else if constexpr (std::is_same_v<R, reason::ThetaCoset>) {
          out << "theta(S) = " << set_string(r.theta) << " is a coset; base " << short_string(r.coset.base)
              << ", subgroup " << gens_string(r.coset.subgroup);
        } else if constexpr (std::is_same_v<R, reason::NonCoset>) {
          out << "S not a coset; s=" << short_string(r.witness.s) << ", a=" << short_string(r.witness.a)
              << ", b=" << short_string(r.witness.b);
        } else if constexpr (std::is_same_v<R, reason::NonCosetPair>) {
          out << "S not a coset; |S|=2, d=" << short_string(r.d);
        } else {
          out << "theta(S) = " << set_string(r.theta) << " not a coset";
        }
      },
      c.reason);
  out << ")";
  return out.str();
}

}  // namespace subprod
