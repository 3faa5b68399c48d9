#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "subprod/abelian.hpp"
#include "subprod/problem.hpp"

namespace subprod {

/// Simple undirected graph on vertices 1..n. Edges are stored as (u, v) with
/// u < v, sorted and deduplicated.
class Graph {
 public:
  Graph() = default;
  /// Throws ContractError on self-loops or endpoints outside [1, n].
  Graph(std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> edges);

  static Graph complete(std::size_t n);
  static Graph cycle(std::size_t n);
  static Graph path(std::size_t n);

  std::size_t vertex_count() const { return n_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
};

/// coloring[v - 1] is the color (1-based) of vertex v.
using Coloring = std::vector<std::size_t>;

bool is_proper_coloring(const Graph& g, const Coloring& c, std::size_t k);

ProblemInstance translate_instance(const ProblemInstance& inst, const Element& g);

/// Applies an injective f coordinate-wise. Throws ContractError if f is not
/// injective or its source is not the instance group.
ProblemInstance map_instance(const ProblemInstance& inst, const Homomorphism& f);

/// Lifts an instance over G/K (as built by quotient_group(K.ambient, K)) to
/// G: x* and generators are lifted coordinate-wise, then for each position p
/// and each generator k of K the tuple with k at p is appended.
ProblemInstance divideout_lift(const ProblemInstance& inst, const SubgroupGens& k);
ProblemInstance divideout_lift(const ProblemInstance& inst, const SubgroupGens& k, const Quotient& q);

/// (x*, c(x*) + g) with generators h -> (h, c(h)); c must be an endomorphism.
ProblemInstance transform_double(const ProblemInstance& inst, const Homomorphism& c, const Element& g);

/// Identity on data; throws ContractError if x* is nonzero.
ProblemInstance p_from_pi(const ProblemInstance& inst);

/// t' = t + n for S' = {s_1, ..., s_n} in the given order. The first
/// generator is y* = (x*, s_1, ..., s_n); the original generators follow,
/// padded with n zeros; x*' = 0. Throws ContractError unless theta(S') = S'
/// and the order lists each element once.
ProblemInstance pi_from_p(const ProblemInstance& inst, const std::vector<Element>& s_order);

/// t = |E|, x* = 0; one generator per vertex and cyclic component of G,
/// the image of that unit vector under (g_v) -> (g_u - g_w) for edges (u, w).
/// For S = G \ {0} the instance is a yes-instance iff the graph is
/// |G|-colorable. Throws ContractError if |G| < 3.
ProblemInstance gadget_coloring_full(const Graph& graph, const FiniteAbelianGroup& g);

/// Coordinate blocks of the {0,1} gadget: V x C, V, V, E x C (row-major).
struct GadgetLayout {
  std::size_t vertices = 0, edges = 0, colors = 3;
  std::size_t block1 = 0, block2 = 0, block3 = 0, block4 = 0, t = 0;
};

/// 3-colorability to P_{Z/n,{0,1}}: one generator per (vertex, color), with
/// x* = -1 on block 3. Throws ContractError for n < 3.
ProblemInstance gadget_s01(const Graph& graph, std::int64_t n, GadgetLayout* layout = nullptr);

/// Adds k - 3 vertices adjacent to each other and to every original vertex.
Graph kcol_from_3col(const Graph& graph, std::size_t k);

namespace step {
struct Translate {
  Element g;
  friend bool operator==(const Translate&, const Translate&) = default;
};
struct MapThrough {
  Homomorphism f;
  friend bool operator==(const MapThrough&, const MapThrough&) = default;
};
struct DivideOutLift {
  SubgroupGens k;
  friend bool operator==(const DivideOutLift&, const DivideOutLift&) = default;
};
struct TransformDouble {
  Homomorphism c;
  Element g;
  friend bool operator==(const TransformDouble&, const TransformDouble&) = default;
};
struct PFromPi {
  friend bool operator==(const PFromPi&, const PFromPi&) = default;
};
struct PiFromP {
  std::vector<Element> order;
  friend bool operator==(const PiFromP&, const PiFromP&) = default;
};
struct GadgetColoringFull {
  FiniteAbelianGroup group;
  friend bool operator==(const GadgetColoringFull&, const GadgetColoringFull&) = default;
};
struct GadgetS01 {
  std::int64_t n = 4;
  friend bool operator==(const GadgetS01&, const GadgetS01&) = default;
};
struct KColFrom3Col {
  std::size_t k = 3;
  friend bool operator==(const KColFrom3Col&, const KColFrom3Col&) = default;
};
}  // namespace step

using ReductionStep = std::variant<step::Translate, step::MapThrough, step::DivideOutLift, step::TransformDouble,
                                   step::PFromPi, step::PiFromP, step::GadgetColoringFull, step::GadgetS01,
                                   step::KColFrom3Col>;

std::string step_name(const ReductionStep& s);

/// A graph (with an optional coloring) before the gadget, an instance (with an
/// optional certificate) after it.
struct PipelineState {
  std::variant<Graph, ProblemInstance> value;
  std::optional<Coloring> coloring;
  std::optional<Certificate> certificate;
};

/// Applies one step and threads the witness: gadgets build a certificate from
/// the coloring, PiFromP prepends 1 for y*, DivideOutLift appends zeros for
/// the K generators, and the other steps keep it unchanged. Throws
/// ContractError if the step does not fit the state.
PipelineState apply_step(const ReductionStep& s, PipelineState state);

}  // namespace subprod
