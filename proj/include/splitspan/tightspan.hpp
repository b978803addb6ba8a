#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "splitspan/graph.hpp"
#include "splitspan/metric.hpp"
#include "splitspan/rational.hpp"
#include "splitspan/splits.hpp"

namespace splitspan {

/// A function X -> Q, indexed by point.
using TightPoint = std::vector<Rat>;

TightPoint kuratowski(const FiniteMetric& m, std::size_t x);

Rat d_inf(const TightPoint& f, const TightPoint& g);

/// f(x) + f(y) >= d(x, y) for all x, y (and f >= 0).
bool in_pd(const FiniteMetric& m, const TightPoint& f);

/// f in P(d) and f(x) = max_y (d(x, y) - f(y)) for every x.
bool is_tight_point(const FiniteMetric& m, const TightPoint& f);

inline constexpr std::size_t kMaxDirectPoints = 10;

/// 0-cells of T(d), sorted. Throws GroundSetTooLarge beyond max_points.
std::vector<TightPoint> tight_span_vertices(const FiniteMetric& m,
                                            std::size_t max_points = kMaxDirectPoints);

struct TightSpanEdge {
  std::size_t u;
  std::size_t v;
  Rat weight;  // d_inf of the endpoints
};

/// The graph (G_d, w_inf) of the 0- and 1-cells of T(d).
struct TightSpanGraph {
  std::vector<TightPoint> vertices;
  std::vector<TightSpanEdge> edges;
  std::vector<std::size_t> kappa;  // kappa[x] = index of kuratowski(m, x)

  [[nodiscard]] std::optional<std::size_t> find(const TightPoint& f) const;
};

/// Via the Buneman complex of s = decompose(m). Requires s weakly compatible
/// and octahedral-free (InvalidArgument otherwise).
TightSpanGraph tight_span_graph_via_buneman(const FiniteMetric& m, const WeightedSplitSystem& s);

/// Direct enumeration of vertices and edges of T(d).
TightSpanGraph tight_span_graph_direct(const FiniteMetric& m,
                                       std::size_t max_points = kMaxDirectPoints);

/// Buneman route when the decomposition allows it, direct route otherwise.
TightSpanGraph tight_span_graph(const FiniteMetric& m);

/// Same vertex points, the same edges between them and the same kappa.
bool same_tight_span(const TightSpanGraph& a, const TightSpanGraph& b);

/// Weighted graph with the kappa images as terminals (labelled by point) and
/// the other vertices as auxiliaries named "t<index>".
WeightedGraph to_weighted_graph(const TightSpanGraph& gd, const FiniteMetric& m);

struct VertexDistanceReport {
  bool holds = true;
  std::optional<std::pair<std::size_t, std::size_t>> witness;  // vertex indices in `graph`
  Rat d_inf;
  Rat d_graph;
  TightSpanGraph graph;
};

/// Compares d_inf with the (G_d, w_inf) path distance on all vertex pairs.
/// With strict = true, throws NotTwoDecomposable unless m decomposes into a
/// two-compatible system; otherwise any metric is examined.
VertexDistanceReport check_vertex_distance_property(const FiniteMetric& m, bool strict = true);

}  // namespace splitspan
