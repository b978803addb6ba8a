#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "splitspan/metric.hpp"
#include "splitspan/splits.hpp"

namespace splitspan {

/// Unit square: splits 12|34 and 14|23.
WeightedSplitSystem square_system();

/// Tree on {a,b,c,d}: the four trivial splits (weight 1) and ab|cd (weight 2).
WeightedSplitSystem tree_system();

/// Three pairwise incompatible unit splits 123|456, 234|561, 345|612 on {1..6}.
WeightedSplitSystem cube_system();

struct CorpusConfig {
  std::uint64_t seed = 20100521;
  std::size_t count = 200;
  std::size_t min_points = 3;
  std::size_t max_points = 6;
  std::size_t max_splits = 7;
  std::int64_t max_weight = 4;
  /// Instances whose suppressed tight-span graph needs more auxiliary
  /// vertices than this are skipped.
  std::size_t max_aux = 4;
};

struct CorpusInstance {
  std::string name;
  WeightedSplitSystem system;
  FiniteMetric metric;
};

/// Random two-compatible weighted split systems separating every pair of
/// points, generated deterministically from cfg.seed.
std::vector<CorpusInstance> random_two_compatible_corpus(const CorpusConfig& cfg = {});

/// The square and tree fixtures followed by the random corpus.
std::vector<CorpusInstance> acceptance_corpus(const CorpusConfig& cfg = {});

}  // namespace splitspan
