#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "splitspan/graph.hpp"
#include "splitspan/metric.hpp"
#include "splitspan/rational.hpp"
#include "splitspan/realizer.hpp"
#include "splitspan/scc.hpp"
#include "splitspan/splits.hpp"

namespace splitspan {

// Subsets A of X are passed as PointSet bit masks over g.terminals(), i.e.
// bit i stands for the i-th terminal in increasing vertex order.

struct SplitFlowDigraph {
  std::vector<std::vector<std::size_t>> out;             // sorted out-neighbours
  std::vector<std::pair<std::size_t, std::size_t>> arcs;  // sorted
  SccResult scc;

  [[nodiscard]] bool has_arc(std::size_t u, std::size_t v) const;
};

/// D(G, w; A). An edge on a shortest path between two terminals on the same
/// side gives both arcs; an edge on a shortest path from x in A to y outside A
/// gives the arc in the direction of travel from x to y.
SplitFlowDigraph split_flow_digraph(const WeightedGraph& g, PointSet a);
SplitFlowDigraph split_flow_digraph(const WeightedGraph& g, const RatMatrix& dist, PointSet a);

struct SccCountReport {
  std::vector<std::size_t> counts;  // indexed by the mask of A
  std::vector<PointSet> violations;  // masks with a count outside {1, 2}
};

/// SCC counts of D(G, w; A) for every A. Violations are only collected when
/// the caller claims the input is minimal path-saturated.
SccCountReport check_scc_count(const WeightedGraph& g, bool claimed_minimal_path_saturated);

/// Whether `values` (one per vertex) is monotone along every shortest path
/// between terminals. Throws TerminalValueNotBinary if a terminal value is not
/// 0 or 1.
bool check_split_potential(const WeightedGraph& g, const std::vector<Rat>& values);

/// Whether every vertex value is 0 or 1.
bool verify_potential_vertex_binarity(const WeightedGraph& g, const std::vector<Rat>& values);

/// One perturbation move on an SCC of D(G, w; A) that avoids X. Weights of
/// arcs entering the component and leaving it move in opposite directions
/// (oriented so the total length does not grow) by the largest step keeping
/// a realisation of m. Returns the result if it is strictly shorter, or if
/// the step zeroes an edge, in which case zero-weight edges are contracted
/// and auxiliary vertices of degree two suppressed. Throws NotARealisation,
/// and BudgetExceeded past max_paths simple terminal paths.
std::optional<Realisation> scc_perturbation_improve(const WeightedGraph& g, const FiniteMetric& m,
                                                    PointSet a,
                                                    std::size_t max_paths = 1'000'000);

}  // namespace splitspan
