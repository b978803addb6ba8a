#include "splitspan/buneman.hpp"

#include <algorithm>

#include "splitspan/error.hpp"

namespace splitspan {

namespace {

bool bit(SignPattern p, std::size_t i) { return ((p >> i) & 1U) != 0; }

SideIndex active_side(SignPattern p, std::size_t split) { return 2 * split + (bit(p, split) ? 0 : 1); }

bool sides_disjoint(const WeightedSplitSystem& s, SideIndex a, SideIndex b) {
  return (s.side(a) & s.side(b)) == 0;
}

}  // namespace

BunemanPoint vertex_point(const WeightedSplitSystem& s, SignPattern pattern) {
  BunemanPoint mu{std::vector<Rat>(s.side_count())};
  for (std::size_t i = 0; i < s.size(); ++i) mu.coords[active_side(pattern, i)] = s.weight(i);
  return mu;
}

bool in_buneman(const WeightedSplitSystem& s, const BunemanPoint& mu) {
  if (mu.coords.size() != s.side_count()) {
    throw Error(ErrorCode::MissingCoordinate,
                "expected " + std::to_string(s.side_count()) + " coordinates, got " +
                    std::to_string(mu.coords.size()),
                {std::min(mu.coords.size(), s.side_count())});
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    const Rat& ca = mu.coords[2 * i];
    const Rat& cb = mu.coords[2 * i + 1];
    if (ca.sign() < 0 || cb.sign() < 0 || ca + cb != s.weight(i)) return false;
  }
  for (SideIndex a = 0; a < s.side_count(); ++a) {
    if (mu.coords[a].is_zero()) continue;
    for (SideIndex b = a + 1; b < s.side_count(); ++b) {
      if (a / 2 == b / 2 || mu.coords[b].is_zero()) continue;
      if (sides_disjoint(s, a, b)) return false;
    }
  }
  return true;
}

std::size_t BunemanSkeleton::index_of(SignPattern p) const {
  const auto it = std::lower_bound(vertices.begin(), vertices.end(), p);
  if (it == vertices.end() || *it != p) {
    throw Error(ErrorCode::InvariantViolation, "sign pattern is not a Buneman vertex");
  }
  return static_cast<std::size_t>(it - vertices.begin());
}

std::vector<SignPattern> buneman_vertices(const WeightedSplitSystem& s, std::size_t max_splits) {
  const std::size_t k = s.size();
  if (k > max_splits || k > 63) {
    throw Error(ErrorCode::TooManySplits,
                std::to_string(k) + " splits exceed the vertex enumeration bound " +
                    std::to_string(max_splits));
  }
  // conflicts[side] = sides of other splits that are disjoint from it
  std::vector<std::vector<SideIndex>> conflicts(s.side_count());
  for (SideIndex a = 0; a < s.side_count(); ++a) {
    for (SideIndex b = 0; b < s.side_count(); ++b) {
      if (a / 2 != b / 2 && sides_disjoint(s, a, b)) conflicts[a].push_back(b);
    }
  }
  std::vector<SignPattern> out;
  const SignPattern end = SignPattern{1} << k;
  for (SignPattern p = 0; p < end; ++p) {
    bool ok = true;
    for (std::size_t i = 0; i < k && ok; ++i) {
      for (const auto b : conflicts[active_side(p, i)]) {
        if (active_side(p, b / 2) == b) {
          ok = false;
          break;
        }
      }
    }
    if (ok) out.push_back(p);
  }
  return out;
}

BunemanSkeleton buneman_skeleton(const WeightedSplitSystem& s, std::size_t max_splits) {
  BunemanSkeleton sk;
  sk.vertices = buneman_vertices(s, max_splits);
  const std::size_t k = s.size();
  const auto present = [&](SignPattern p) {
    return std::binary_search(sk.vertices.begin(), sk.vertices.end(), p);
  };

  for (std::size_t vi = 0; vi < sk.vertices.size(); ++vi) {
    const SignPattern p = sk.vertices[vi];
    for (std::size_t i = 0; i < k; ++i) {
      if (bit(p, i)) continue;  // each edge once, from its lower end
      const SignPattern q = p | (SignPattern{1} << i);
      if (!present(q)) continue;
      BunemanPoint mid = vertex_point(s, p);
      mid.coords[2 * i] = s.weight(i) / Rat(2);
      mid.coords[2 * i + 1] = s.weight(i) / Rat(2);
      if (in_buneman(s, mid)) sk.edges.push_back({vi, sk.index_of(q), i});
    }
  }

  for (std::size_t vi = 0; vi < sk.vertices.size(); ++vi) {
    const SignPattern p = sk.vertices[vi];
    for (std::size_t i = 0; i < k; ++i) {
      if (bit(p, i)) continue;
      for (std::size_t j = i + 1; j < k; ++j) {
        if (bit(p, j) || !incompatible(s.split(i), s.split(j))) continue;
        const SignPattern pi = p | (SignPattern{1} << i);
        const SignPattern pj = p | (SignPattern{1} << j);
        const SignPattern pij = pi | pj;
        if (!present(pi) || !present(pj) || !present(pij)) continue;
        BunemanPoint centre = vertex_point(s, p);
        for (const auto t : {i, j}) {
          centre.coords[2 * t] = s.weight(t) / Rat(2);
          centre.coords[2 * t + 1] = s.weight(t) / Rat(2);
        }
        if (in_buneman(s, centre)) {
          sk.quads.push_back({{vi, sk.index_of(pi), sk.index_of(pj), sk.index_of(pij)}, i, j});
        }
      }
    }
  }
  return sk;
}

Rat d1(const BunemanPoint& mu, const BunemanPoint& nu) {
  if (mu.coords.size() != nu.coords.size()) {
    throw Error(ErrorCode::MissingCoordinate, "points belong to different split systems");
  }
  Rat total;
  for (std::size_t a = 0; a < mu.coords.size(); ++a) total += abs(mu.coords[a] - nu.coords[a]);
  return total / Rat(2);
}

BunemanPoint phi(const WeightedSplitSystem& s, std::size_t x) {
  SignPattern p = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (contains(s.split(i).a, x)) p |= SignPattern{1} << i;
  }
  return vertex_point(s, p);
}

std::vector<Rat> lambda_map(const WeightedSplitSystem& s, const BunemanPoint& mu) {
  if (mu.coords.size() != s.side_count()) {
    throw Error(ErrorCode::MissingCoordinate, "coordinate count does not match the split system");
  }
  std::vector<Rat> f(s.ground_size());
  for (std::size_t x = 0; x < f.size(); ++x) {
    for (SideIndex a = 0; a < s.side_count(); ++a) {
      if (!contains(s.side(a), x)) f[x] += mu.coords[a];
    }
  }
  return f;
}

Rat lambda_A(const WeightedSplitSystem& s, const BunemanPoint& mu, SideIndex side) {
  if (side >= mu.coords.size()) {
    throw Error(ErrorCode::MissingCoordinate, "no coordinate for side " + std::to_string(side),
                {side});
  }
  return mu.coords[side] / s.side_weight(side);
}

std::optional<SignPattern> pattern_of(const WeightedSplitSystem& s, const BunemanPoint& mu) {
  if (mu.coords.size() != s.side_count()) return std::nullopt;
  SignPattern p = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const Rat& ca = mu.coords[2 * i];
    const Rat& cb = mu.coords[2 * i + 1];
    if (ca == s.weight(i) && cb.is_zero()) {
      p |= SignPattern{1} << i;
    } else if (!(ca.is_zero() && cb == s.weight(i))) {
      return std::nullopt;
    }
  }
  return p;
}

}  // namespace splitspan
