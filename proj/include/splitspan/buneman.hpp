#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "splitspan/rational.hpp"
#include "splitspan/splits.hpp"

namespace splitspan {

/// Point of the hypercube H(S, ws): one coordinate per side, indexed by SideIndex.
struct BunemanPoint {
  std::vector<Rat> coords;

  friend bool operator==(const BunemanPoint&, const BunemanPoint&) = default;
  friend auto operator<=>(const BunemanPoint&, const BunemanPoint&) = default;
};

/// Bit i set means the `a` side of split i carries the full weight.
using SignPattern = std::uint64_t;

inline constexpr std::size_t kMaxBunemanSplits = 24;

BunemanPoint vertex_point(const WeightedSplitSystem& s, SignPattern pattern);

/// Hypercube constraints plus the Buneman zero pattern: two disjoint sides of
/// different splits are never both non-zero. Throws MissingCoordinate if mu
/// does not have one coordinate per side.
bool in_buneman(const WeightedSplitSystem& s, const BunemanPoint& mu);

struct BunemanEdge {
  std::size_t u;  // indices into BunemanSkeleton::vertices
  std::size_t v;
  std::size_t split;
};

struct BunemanQuad {
  std::array<std::size_t, 4> corners;  // p, p^i, p^j, p^ij
  std::size_t split1;
  std::size_t split2;
};

struct BunemanSkeleton {
  std::vector<SignPattern> vertices;  // sorted
  std::vector<BunemanEdge> edges;
  std::vector<BunemanQuad> quads;

  [[nodiscard]] std::size_t index_of(SignPattern p) const;
};

/// All 0/ws-valued points of B(S, ws). Throws TooManySplits beyond max_splits.
std::vector<SignPattern> buneman_vertices(const WeightedSplitSystem& s,
                                          std::size_t max_splits = kMaxBunemanSplits);

/// Vertices, edges (midpoint test) and quadrangles (barycenter test).
BunemanSkeleton buneman_skeleton(const WeightedSplitSystem& s,
                                 std::size_t max_splits = kMaxBunemanSplits);

Rat d1(const BunemanPoint& mu, const BunemanPoint& nu);

/// Phi(x): full weight on every side containing x.
BunemanPoint phi(const WeightedSplitSystem& s, std::size_t x);

/// Lambda(mu)(x) = sum of mu(A) over the sides A not containing x.
std::vector<Rat> lambda_map(const WeightedSplitSystem& s, const BunemanPoint& mu);

/// mu(A) / ws(A).
Rat lambda_A(const WeightedSplitSystem& s, const BunemanPoint& mu, SideIndex side);

/// Sign pattern of a vertex point; empty if mu is not a hypercube vertex.
std::optional<SignPattern> pattern_of(const WeightedSplitSystem& s, const BunemanPoint& mu);

}  // namespace splitspan
