#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "splitspan/metric.hpp"
#include "splitspan/rational.hpp"

namespace splitspan {

/// Subset of the ground set as a bitmask over point indices.
using PointSet = std::uint32_t;

inline constexpr std::size_t kMaxGroundSize = 31;

inline PointSet full_set(std::size_t n) { return (PointSet{1} << n) - 1; }
inline bool contains(PointSet s, std::size_t x) { return ((s >> x) & 1U) != 0; }

/// Bipartition {a, b} of the ground set, oriented so that `a` holds point 0.
struct Split {
  PointSet a = 0;
  PointSet b = 0;

  /// Builds the split {side, X - side}; throws InvalidArgument if a side is empty.
  static Split from_side(PointSet side, std::size_t n);

  [[nodiscard]] bool separates(std::size_t x, std::size_t y) const {
    return contains(a, x) != contains(a, y);
  }
  friend bool operator==(const Split&, const Split&) = default;
  friend auto operator<=>(const Split&, const Split&) = default;
};

bool incompatible(const Split& s1, const Split& s2);

/// A side of a split, identified as 2 * split_index (the `a` side) or
/// 2 * split_index + 1 (the `b` side). Sides index supp(ws).
using SideIndex = std::size_t;

class WeightedSplitSystem {
 public:
  WeightedSplitSystem() = default;
  explicit WeightedSplitSystem(std::vector<std::string> ground);

  /// Throws InvalidArgument on a duplicate split or non-positive weight.
  std::size_t add(const Split& split, Rat weight);

  [[nodiscard]] std::size_t ground_size() const noexcept { return ground_.size(); }
  [[nodiscard]] const std::vector<std::string>& ground() const noexcept { return ground_; }
  [[nodiscard]] std::size_t size() const noexcept { return splits_.size(); }
  [[nodiscard]] const Split& split(std::size_t i) const { return splits_.at(i); }
  [[nodiscard]] const Rat& weight(std::size_t i) const { return weights_.at(i); }
  [[nodiscard]] const std::vector<Split>& splits() const noexcept { return splits_; }
  [[nodiscard]] std::optional<std::size_t> find(const Split& s) const;

  [[nodiscard]] std::size_t side_count() const noexcept { return 2 * splits_.size(); }
  [[nodiscard]] PointSet side(SideIndex a) const {
    const auto& s = splits_.at(a / 2);
    return a % 2 == 0 ? s.a : s.b;
  }
  [[nodiscard]] const Rat& side_weight(SideIndex a) const { return weights_.at(a / 2); }

  /// Same ground, split order by (a, b) mask.
  [[nodiscard]] WeightedSplitSystem canonical() const;

  /// Equality as weighted sets of splits over the same labelled ground set.
  friend bool operator==(const WeightedSplitSystem& x, const WeightedSplitSystem& y);

 private:
  std::vector<std::string> ground_;
  std::vector<Split> splits_;
  std::vector<Rat> weights_;
};

/// "12|34" style rendering with ground labels.
std::string format_split(const WeightedSplitSystem& s, const Split& split);
std::string format_side(const std::vector<std::string>& ground, PointSet side);

/// d(x, y) = sum of the weights of the splits separating x and y.
/// Throws NotSeparated (x, y) if some pair is separated by no split.
FiniteMetric split_metric(const WeightedSplitSystem& s);

Rat beta(const FiniteMetric& m, std::size_t x, std::size_t y, std::size_t u, std::size_t v);
Rat alpha(const FiniteMetric& m, std::size_t x, std::size_t y, std::size_t u, std::size_t v);

/// Quintuple (t, x, y, u, v) with beta(x,y;u,v) > alpha(x,t;u,v) + alpha(x,y;u,t).
std::optional<std::array<std::size_t, 5>> find_decomposability_violation(const FiniteMetric& m);
bool is_totally_decomposable(const FiniteMetric& m);

/// Three pairwise incompatible splits (indices into s), if any.
std::optional<std::array<std::size_t, 3>> find_incompatible_triple(const WeightedSplitSystem& s);
bool is_two_compatible(const WeightedSplitSystem& s);

/// Split triple for which every choice of sides meets in a common point.
std::optional<std::array<std::size_t, 3>> find_weak_compatibility_violation(
    const WeightedSplitSystem& s);
bool is_weakly_compatible(const WeightedSplitSystem& s);

struct OctahedralWitness {
  std::array<std::size_t, 4> splits;  // indices of S1..S4 in the system
  std::array<PointSet, 6> blocks;     // X1..X6
};

/// Looks for a partition X1..X6 with the four octahedral splits all present.
/// Throws GroundSetTooLarge if |X| > max_ground.
std::optional<OctahedralWitness> find_octahedron(const WeightedSplitSystem& s,
                                                 std::size_t max_ground = 16);
bool is_octahedral_free(const WeightedSplitSystem& s, std::size_t max_ground = 16);

/// Isolation index of the split {side, X - side} in m.
Rat isolation_index(const FiniteMetric& m, PointSet side);

/// Split decomposition by isolation indices over all bipartitions.
/// Throws NotTotallyDecomposable (witness quintuple) if m has a split-prime
/// residue, GroundSetTooLarge beyond max_ground points.
WeightedSplitSystem decompose(const FiniteMetric& m, std::size_t max_ground = 16);

}  // namespace splitspan
