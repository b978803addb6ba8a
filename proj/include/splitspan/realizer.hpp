#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "splitspan/graph.hpp"
#include "splitspan/metric.hpp"
#include "splitspan/rational.hpp"

namespace splitspan {

struct SearchConfig {
  std::size_t max_aux = 4;
  std::size_t max_degree = 0;  // 0 = unbounded
  std::size_t max_points = 8;
  std::optional<std::chrono::milliseconds> time_budget;
  std::optional<std::uint64_t> node_budget;
  /// Known realisation used only as an initial upper bound.
  std::optional<WeightedGraph> upper_bound_hint;
};

struct Realisation {
  WeightedGraph graph;
  Rat length;
  std::uint64_t gamma = 0;  // |Gamma(G, w; X)|, unordered paths
  std::string encoding;     // canonical form, see canonical_encoding
};

/// Checks is_realisation and fills in length, gamma and encoding. Throws
/// NotARealisation.
Realisation make_realisation(WeightedGraph g, const FiniteMetric& m);

/// Encoding invariant under relabelling auxiliary vertices: the
/// lexicographically least edge listing over all auxiliary orders.
std::string canonical_encoding(const WeightedGraph& g);

struct RealisationSet {
  Rat optimum;
  std::vector<Realisation> optima;  // sorted by encoding
  bool exhaustive = true;
  std::uint64_t nodes = 0;
};

/// Exact optimal realisations with at most cfg.max_aux auxiliary vertices.
///
/// Every optimal topology is reported; on a topology whose optimal weights
/// form a continuum, one representative is kept for each tight-path set of
/// maximum size. Throws GroundSetTooLarge beyond cfg.max_points. If the budget
/// runs out the result is returned with exhaustive = false.
RealisationSet optimal_realisations(const FiniteMetric& m, const SearchConfig& cfg = {});

/// Maximum gamma, then fewest vertices, then least encoding. Throws EmptyCandidates.
const Realisation& select_minimal_path_saturated(const std::vector<Realisation>& candidates);

}  // namespace splitspan
