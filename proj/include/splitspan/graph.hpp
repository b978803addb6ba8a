#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "splitspan/metric.hpp"
#include "splitspan/rational.hpp"

namespace splitspan {

struct Vertex {
  std::string name;       // point label for terminals, display name otherwise
  bool terminal = false;  // terminal vertices represent points of X
};

struct Edge {
  std::size_t u = 0;  // u < v
  std::size_t v = 0;
  Rat weight;
};

struct Neighbour {
  std::size_t vertex;
  std::size_t edge;
};

/// Simple undirected graph with positive rational edge weights and
/// terminal/auxiliary vertex roles.
class WeightedGraph {
 public:
  std::size_t add_terminal(std::string label);
  std::size_t add_auxiliary(std::string name = {});

  /// Adds {u, v}. Throws InvalidArgument on self-loops, parallel edges,
  /// unknown vertices or non-positive weight.
  std::size_t add_edge(std::size_t u, std::size_t v, Rat weight);

  [[nodiscard]] std::size_t vertex_count() const noexcept { return vertices_.size(); }
  [[nodiscard]] std::size_t edge_count() const noexcept { return edges_.size(); }
  [[nodiscard]] const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
  [[nodiscard]] const Vertex& vertex(std::size_t v) const { return vertices_.at(v); }
  [[nodiscard]] const std::vector<Edge>& edges() const noexcept { return edges_; }
  [[nodiscard]] const std::vector<Neighbour>& neighbours(std::size_t v) const { return adj_.at(v); }
  [[nodiscard]] std::size_t degree(std::size_t v) const { return adj_.at(v).size(); }
  [[nodiscard]] bool is_terminal(std::size_t v) const { return vertices_.at(v).terminal; }

  [[nodiscard]] std::optional<std::size_t> edge_between(std::size_t u, std::size_t v) const;
  [[nodiscard]] std::optional<std::size_t> terminal(const std::string& label) const;
  [[nodiscard]] std::vector<std::size_t> terminals() const;
  [[nodiscard]] std::size_t auxiliary_count() const;

  [[nodiscard]] Rat total_length() const;
  [[nodiscard]] bool is_connected() const;
  [[nodiscard]] bool is_triangle_free() const;

 private:
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Neighbour>> adj_;
};

/// Sequence of vertices v0, ..., vk with consecutive vertices adjacent.
using VertexPath = std::vector<std::size_t>;

/// Sum of the edge weights along `path`; throws InvalidArgument if two
/// consecutive vertices are not adjacent.
Rat path_length(const WeightedGraph& g, const VertexPath& path);

/// Shortest-path distances between all vertex pairs. Throws Disconnected.
RatMatrix all_pairs_distance(const WeightedGraph& g);

/// Γ(G, w; A): every shortest path between two distinct members of `subset`,
/// stored once with the smaller endpoint index first, ordered by endpoint
/// pair and then lexicographically.
std::vector<VertexPath> enumerate_shortest_paths(const WeightedGraph& g,
                                                 const std::vector<std::size_t>& subset);

/// Same as above with a precomputed distance matrix.
std::vector<VertexPath> enumerate_shortest_paths(const WeightedGraph& g, const RatMatrix& dist,
                                                 const std::vector<std::size_t>& subset);

/// |Γ(G, w; terminals)| without materialising the paths.
std::uint64_t count_terminal_geodesics(const WeightedGraph& g, const RatMatrix& dist);

/// Result of degree-two suppression; `old_to_new[v]` is empty for removed vertices.
struct Suppressed {
  WeightedGraph graph;
  std::vector<std::optional<std::size_t>> old_to_new;
};

/// Repeatedly removes the lowest-index degree-two vertex outside `keep`,
/// merging its edges into one of summed weight. A vertex whose neighbours are
/// already adjacent is retained, so the result stays simple.
Suppressed suppress_degree_two(const WeightedGraph& g, const std::vector<bool>& keep);

/// Suppression keeping the terminals (the convention for realisations).
WeightedGraph suppress_auxiliary_degree_two(const WeightedGraph& g);

/// Bijection V(g1) -> V(g2) preserving adjacency, edge weights, and terminal
/// labels; empty if the graphs are not isomorphic as weighted graphs.
std::optional<std::vector<std::size_t>> weighted_isomorphic(const WeightedGraph& g1,
                                                            const WeightedGraph& g2);

/// True iff the terminal-preserving suppressions of g1 and g2 are isomorphic.
bool homeomorphic(const WeightedGraph& g1, const WeightedGraph& g2);

/// True iff every terminal pair of `m` is at graph distance d(x, y).
bool is_realisation(const WeightedGraph& g, const FiniteMetric& m);

/// Necessary conditions for an optimal realisation.
struct OptimalityReport {
  bool every_edge_on_all_geodesics_of_some_pair = true;
  bool adjacent_edges_on_common_geodesic = true;
  bool triangle_free = true;
  std::optional<std::size_t> failing_edge;
  std::optional<std::vector<std::size_t>> failing_wedge;  // {a, v, b}
  std::optional<std::vector<std::size_t>> triangle;

  [[nodiscard]] bool all() const noexcept {
    return every_edge_on_all_geodesics_of_some_pair && adjacent_edges_on_common_geodesic &&
           triangle_free;
  }
};

OptimalityReport check_optimality_necessary(const WeightedGraph& g, const FiniteMetric& m);

/// Maps every point of `m` to its terminal vertex in `g`; throws
/// InvalidArgument if a label has no terminal.
std::vector<std::size_t> terminal_vertices(const WeightedGraph& g, const FiniteMetric& m);

}  // namespace splitspan
