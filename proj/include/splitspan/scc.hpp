#pragma once

#include <cstddef>
#include <vector>

namespace splitspan {

struct SccResult {
  std::vector<std::size_t> component;  // component id per vertex
  std::size_t count = 0;
};

/// Tarjan's algorithm on a digraph given by out-neighbour lists. Component
/// ids are assigned in reverse topological order of the condensation.
SccResult strongly_connected_components(const std::vector<std::vector<std::size_t>>& out);

}  // namespace splitspan
