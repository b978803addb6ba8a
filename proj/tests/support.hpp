#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "splitspan/graph.hpp"
#include "splitspan/metric.hpp"
#include "splitspan/splits.hpp"

namespace testing {

using namespace splitspan;

inline FiniteMetric metric_of(std::initializer_list<std::initializer_list<std::int64_t>> rows,
                              std::vector<std::string> labels = {}) {
  const std::size_t n = rows.size();
  RatMatrix d(n);
  std::size_t i = 0;
  for (const auto& row : rows) {
    std::size_t j = 0;
    for (const auto v : row) d(i, j++) = Rat(v);
    ++i;
  }
  if (labels.empty()) labels = numbered_labels(n);
  return validate_metric(d, std::move(labels));
}

inline FiniteMetric square_metric() {
  return metric_of({{0, 1, 2, 1}, {1, 0, 1, 2}, {2, 1, 0, 1}, {1, 2, 1, 0}});
}

/// Terminals first (labels "1".."n" unless given), then auxiliaries "a0", "a1", ...
struct GraphSpec {
  std::vector<std::string> terminals;
  std::size_t aux = 0;
  std::vector<std::tuple<std::size_t, std::size_t, Rat>> edges;
};

inline WeightedGraph build(const GraphSpec& spec) {
  WeightedGraph g;
  for (const auto& t : spec.terminals) g.add_terminal(t);
  for (std::size_t a = 0; a < spec.aux; ++a) g.add_auxiliary("a" + std::to_string(a));
  for (const auto& [u, v, w] : spec.edges) g.add_edge(u, v, w);
  return g;
}

inline WeightedGraph unit_cycle(std::size_t n) {
  GraphSpec spec;
  spec.terminals = numbered_labels(n);
  for (std::size_t i = 0; i < n; ++i) spec.edges.emplace_back(i, (i + 1) % n, Rat(1));
  return build(spec);
}

inline PointSet set_of(std::initializer_list<std::size_t> points) {
  PointSet s = 0;
  for (const auto p : points) s |= PointSet{1} << p;
  return s;
}

}  // namespace testing
