#include "subprod/reductions.hpp"

#include <algorithm>
#include <set>

#include "subprod/classifier.hpp"
#include "subprod/errors.hpp"

namespace subprod {

namespace {

const ProblemInstance& instance_of(const PipelineState& st, const char* step) {
  const auto* inst = std::get_if<ProblemInstance>(&st.value);
  require(inst != nullptr, std::string(step) + ": expects an instance, got a graph");
  return *inst;
}

const Graph& graph_of(const PipelineState& st, const char* step) {
  const auto* g = std::get_if<Graph>(&st.value);
  require(g != nullptr, std::string(step) + ": expects a graph, got an instance");
  return *g;
}

}  // namespace

Graph::Graph(std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> edges) : n_(n) {
  for (auto& [u, v] : edges) {
    require(u >= 1 && u <= n && v >= 1 && v <= n, "graph: edge endpoint outside 1..n");
    require(u != v, "graph: self-loop at vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);
}

Graph Graph::complete(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t u = 1; u <= n; ++u)
    for (std::size_t v = u + 1; v <= n; ++v) e.emplace_back(u, v);
  return Graph(n, std::move(e));
}

Graph Graph::cycle(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t u = 1; u < n; ++u) e.emplace_back(u, u + 1);
  if (n >= 3) e.emplace_back(n, 1);
  return Graph(n, std::move(e));
}

Graph Graph::path(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t u = 1; u < n; ++u) e.emplace_back(u, u + 1);
  return Graph(n, std::move(e));
}

bool is_proper_coloring(const Graph& g, const Coloring& c, std::size_t k) {
  if (c.size() != g.vertex_count()) return false;
  if (std::any_of(c.begin(), c.end(), [&](std::size_t x) { return x < 1 || x > k; })) return false;
  return std::all_of(g.edges().begin(), g.edges().end(),
                     [&](const auto& e) { return c[e.first - 1] != c[e.second - 1]; });
}

ProblemInstance translate_instance(const ProblemInstance& inst, const Element& g) {
  require(inst.group.contains(g), "translate: element not in group");
  ProblemInstance out = inst;
  for (auto& x : out.xstar) x = inst.group.add(x, g);
  return out;
}

ProblemInstance map_instance(const ProblemInstance& inst, const Homomorphism& f) {
  require(f.source() == inst.group, "map_instance: map source is not the instance group");
  require(is_injective(f), "map_instance: map is not injective");
  std::vector<Element> x;
  for (const auto& e : inst.xstar) x.push_back(f(e));
  std::vector<std::vector<Element>> h;
  for (const auto& gen : inst.hgens) {
    std::vector<Element> row;
    for (const auto& e : gen) row.push_back(f(e));
    h.push_back(std::move(row));
  }
  return ProblemInstance(f.target(), inst.t, std::move(x), std::move(h));
}

ProblemInstance divideout_lift(const ProblemInstance& inst, const SubgroupGens& k) {
  return divideout_lift(inst, k, quotient_group(k.ambient, k));
}

ProblemInstance divideout_lift(const ProblemInstance& inst, const SubgroupGens& k, const Quotient& q) {
  require(inst.group == q.group, "divideout_lift: instance group is not G/K");
  const auto& g = k.ambient;
  std::vector<Element> x;
  for (const auto& e : inst.xstar) x.push_back(q.lift(e));
  std::vector<std::vector<Element>> h;
  for (const auto& gen : inst.hgens) {
    std::vector<Element> row;
    for (const auto& e : gen) row.push_back(q.lift(e));
    h.push_back(std::move(row));
  }
  for (std::size_t p = 0; p < inst.t; ++p)
    for (const auto& kg : k.gens) {
      std::vector<Element> row(inst.t, g.zero());
      row[p] = kg;
      h.push_back(std::move(row));
    }
  return ProblemInstance(g, inst.t, std::move(x), std::move(h));
}

ProblemInstance transform_double(const ProblemInstance& inst, const Homomorphism& c, const Element& g) {
  require(c.source() == inst.group && c.target() == inst.group, "transform_double: c is not an endomorphism of G");
  require(inst.group.contains(g), "transform_double: element not in group");
  std::vector<Element> x = inst.xstar;
  for (const auto& e : inst.xstar) x.push_back(inst.group.add(c(e), g));
  std::vector<std::vector<Element>> h;
  for (const auto& gen : inst.hgens) {
    std::vector<Element> row = gen;
    for (const auto& e : gen) row.push_back(c(e));
    h.push_back(std::move(row));
  }
  return ProblemInstance(inst.group, 2 * inst.t, std::move(x), std::move(h));
}

ProblemInstance p_from_pi(const ProblemInstance& inst) {
  require(inst.is_pi(), "p_from_pi: x* is not zero");
  return inst;
}

ProblemInstance pi_from_p(const ProblemInstance& inst, const std::vector<Element>& s_order) {
  const SubsetS s(inst.group, s_order);
  require(s.size() == s_order.size(), "pi_from_p: order repeats an element");
  require(theta(s) == s, "pi_from_p: theta(S') differs from S'");
  const std::size_t n = s_order.size(), t = inst.t + n;
  const auto& g = inst.group;
  std::vector<std::vector<Element>> h;
  std::vector<Element> y = inst.xstar;
  y.insert(y.end(), s_order.begin(), s_order.end());
  h.push_back(std::move(y));
  for (const auto& gen : inst.hgens) {
    std::vector<Element> row = gen;
    row.resize(t, g.zero());
    h.push_back(std::move(row));
  }
  return ProblemInstance(g, t, std::vector<Element>(t, g.zero()), std::move(h));
}

ProblemInstance gadget_coloring_full(const Graph& graph, const FiniteAbelianGroup& g) {
  require(g.order() >= 3, "gadget_coloring_full: needs |G| >= 3");
  const auto& edges = graph.edges();
  const std::size_t t = edges.size(), r = g.rank();
  std::vector<std::vector<Element>> h;
  for (std::size_t v = 1; v <= graph.vertex_count(); ++v)
    for (std::size_t j = 0; j < r; ++j) {
      std::vector<std::int64_t> unit(r, 0);
      unit[j] = 1;
      const Element e = g.element(unit), minus = g.neg(e);
      std::vector<Element> row(t, g.zero());
      for (std::size_t p = 0; p < t; ++p) {
        if (edges[p].first == v) row[p] = e;
        if (edges[p].second == v) row[p] = minus;
      }
      h.push_back(std::move(row));
    }
  return ProblemInstance(g, t, std::vector<Element>(t, g.zero()), std::move(h));
}

ProblemInstance gadget_s01(const Graph& graph, std::int64_t n, GadgetLayout* layout) {
  require(n >= 3, "gadget_s01: needs n >= 3");
  const FiniteAbelianGroup g({n});
  GadgetLayout l;
  l.vertices = graph.vertex_count();
  l.edges = graph.edges().size();
  l.block1 = 0;
  l.block2 = l.vertices * l.colors;
  l.block3 = l.block2 + l.vertices;
  l.block4 = l.block3 + l.vertices;
  l.t = l.block4 + l.edges * l.colors;

  const Element one({1});
  std::vector<Element> x(l.t, g.zero());
  for (std::size_t v = 0; v < l.vertices; ++v) x[l.block3 + v] = Element({n - 1});
  std::vector<std::vector<Element>> h;
  for (std::size_t v = 0; v < l.vertices; ++v)
    for (std::size_t c = 0; c < l.colors; ++c) {
      std::vector<Element> row(l.t, g.zero());
      row[l.block1 + v * l.colors + c] = one;
      row[l.block2 + v] = one;
      row[l.block3 + v] = one;
      for (std::size_t e = 0; e < l.edges; ++e) {
        const auto& [a, b] = graph.edges()[e];
        if (a == v + 1 || b == v + 1) row[l.block4 + e * l.colors + c] = one;
      }
      h.push_back(std::move(row));
    }
  if (layout) *layout = l;
  return ProblemInstance(g, l.t, std::move(x), std::move(h));
}

Graph kcol_from_3col(const Graph& graph, std::size_t k) {
  require(k >= 3, "kcol_from_3col: needs k >= 3");
  const std::size_t n = graph.vertex_count(), total = n + k - 3;
  auto edges = graph.edges();
  for (std::size_t w = n + 1; w <= total; ++w)
    for (std::size_t u = 1; u < w; ++u) edges.emplace_back(u, w);
  return Graph(total, std::move(edges));
}

std::string step_name(const ReductionStep& s) {
  static const char* const names[] = {"Translate", "MapThrough",         "DivideOutLift", "TransformDouble", "PFromPi",
                                      "PiFromP",   "GadgetColoringFull", "GadgetS01",     "KColFrom3Col"};
  return names[s.index()];
}

PipelineState apply_step(const ReductionStep& s, PipelineState st) {
  const std::string name = step_name(s);
  PipelineState out;
  if (const auto* k = std::get_if<step::KColFrom3Col>(&s)) {
    const Graph& g = graph_of(st, name.c_str());
    out.value = kcol_from_3col(g, k->k);
    if (st.coloring) {
      Coloring c = *st.coloring;
      for (std::size_t i = 4; i <= k->k; ++i) c.push_back(i);
      out.coloring = std::move(c);
    }
    return out;
  }
  if (const auto* gs = std::get_if<step::GadgetS01>(&s)) {
    const Graph& g = graph_of(st, name.c_str());
    out.value = gadget_s01(g, gs->n);
    if (st.coloring) {
      std::vector<std::int64_t> lam;
      for (auto color : *st.coloring)
        for (std::size_t c = 1; c <= 3; ++c) lam.push_back(color == c ? 1 : 0);
      out.certificate = Certificate{std::move(lam)};
    }
    return out;
  }
  if (const auto* gf = std::get_if<step::GadgetColoringFull>(&s)) {
    const Graph& g = graph_of(st, name.c_str());
    out.value = gadget_coloring_full(g, gf->group);
    if (st.coloring) {
      std::vector<std::int64_t> lam;
      for (auto color : *st.coloring) {
        require(color >= 1 && static_cast<std::int64_t>(color) <= gf->group.order(), "GadgetColoringFull: color out of range");
        const auto coords = gf->group.element_at(color - 1).coords;
        lam.insert(lam.end(), coords.begin(), coords.end());
      }
      out.certificate = Certificate{std::move(lam)};
    }
    return out;
  }

  const ProblemInstance& inst = instance_of(st, name.c_str());
  out.certificate = st.certificate;
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, step::Translate>) {
          out.value = translate_instance(inst, x.g);
        } else if constexpr (std::is_same_v<T, step::MapThrough>) {
          out.value = map_instance(inst, x.f);
        } else if constexpr (std::is_same_v<T, step::DivideOutLift>) {
          out.value = divideout_lift(inst, x.k);
          if (out.certificate) out.certificate->coefficients.resize(std::get<ProblemInstance>(out.value).hgens.size(), 0);
        } else if constexpr (std::is_same_v<T, step::TransformDouble>) {
          out.value = transform_double(inst, x.c, x.g);
        } else if constexpr (std::is_same_v<T, step::PFromPi>) {
          out.value = p_from_pi(inst);
        } else if constexpr (std::is_same_v<T, step::PiFromP>) {
          out.value = pi_from_p(inst, x.order);
          if (out.certificate) out.certificate->coefficients.insert(out.certificate->coefficients.begin(), 1);
        }
      },
      s);
  return out;
}

}  // namespace subprod
