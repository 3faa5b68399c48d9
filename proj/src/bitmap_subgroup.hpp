#pragma once

#include <vector>

#include "subprod/abelian.hpp"

namespace subprod::detail {

/// Subgroup stored as a membership bitmap over FiniteAbelianGroup::index_of.
inline std::vector<bool> trivial_subgroup_bits(const FiniteAbelianGroup& g) {
  std::vector<bool> k(static_cast<std::size_t>(g.order()), false);
  k[0] = true;
  return k;
}

/// Replaces k by k + <h>. Returns false if h was already in k.
inline bool extend_subgroup_bits(const FiniteAbelianGroup& g, std::vector<bool>& k, const Element& h) {
  if (k[g.index_of(h)]) return false;
  std::vector<Element> members;
  for (std::uint64_t i = 0; i < k.size(); ++i)
    if (k[i]) members.push_back(g.element_at(i));
  Element step = h;
  while (!k[g.index_of(step)]) {
    for (const auto& m : members) k[g.index_of(g.add(m, step))] = true;
    step = g.add(step, h);
  }
  return true;
}

}  // namespace subprod::detail
