#include "splitspan/splits.hpp"

#include <algorithm>
#include <numeric>

#include "splitspan/error.hpp"

namespace splitspan {

Split Split::from_side(PointSet side, std::size_t n) {
  const PointSet all = full_set(n);
  side &= all;
  if (side == 0 || side == all) throw Error(ErrorCode::InvalidArgument, "split side is empty");
  const PointSet other = all & ~side;
  return contains(side, 0) ? Split{side, other} : Split{other, side};
}

bool incompatible(const Split& s1, const Split& s2) {
  return (s1.a & s2.a) != 0 && (s1.a & s2.b) != 0 && (s1.b & s2.a) != 0 && (s1.b & s2.b) != 0;
}

WeightedSplitSystem::WeightedSplitSystem(std::vector<std::string> ground) : ground_(std::move(ground)) {
  if (ground_.size() > kMaxGroundSize) {
    throw Error(ErrorCode::GroundSetTooLarge,
                "at most " + std::to_string(kMaxGroundSize) + " points are supported");
  }
}

std::size_t WeightedSplitSystem::add(const Split& split, Rat weight) {
  const PointSet all = full_set(ground_.size());
  if ((split.a & split.b) != 0 || (split.a | split.b) != all || split.a == 0 || split.b == 0 ||
      !contains(split.a, 0)) {
    throw Error(ErrorCode::InvalidArgument, "not a canonical bipartition of the ground set");
  }
  if (weight.sign() <= 0) {
    throw Error(ErrorCode::InvalidArgument, "split weight must be positive: " + weight.str());
  }
  if (find(split)) {
    throw Error(ErrorCode::InvalidArgument, "duplicate split " + format_split(*this, split));
  }
  splits_.push_back(split);
  weights_.push_back(weight);
  return splits_.size() - 1;
}

std::optional<std::size_t> WeightedSplitSystem::find(const Split& s) const {
  for (std::size_t i = 0; i < splits_.size(); ++i) {
    if (splits_[i] == s) return i;
  }
  return std::nullopt;
}

WeightedSplitSystem WeightedSplitSystem::canonical() const {
  std::vector<std::size_t> order(splits_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return splits_[i] < splits_[j]; });
  WeightedSplitSystem out(ground_);
  for (const auto i : order) out.add(splits_[i], weights_[i]);
  return out;
}

bool operator==(const WeightedSplitSystem& x, const WeightedSplitSystem& y) {
  if (x.ground_ != y.ground_ || x.size() != y.size()) return false;
  const auto cx = x.canonical();
  const auto cy = y.canonical();
  return cx.splits_ == cy.splits_ && cx.weights_ == cy.weights_;
}

std::string format_side(const std::vector<std::string>& ground, PointSet side) {
  std::string out;
  bool compact = std::all_of(ground.begin(), ground.end(),
                             [](const std::string& l) { return l.size() == 1; });
  for (std::size_t i = 0; i < ground.size(); ++i) {
    if (!contains(side, i)) continue;
    if (!compact && !out.empty()) out += ' ';
    out += ground[i];
  }
  return out;
}

std::string format_split(const WeightedSplitSystem& s, const Split& split) {
  return format_side(s.ground(), split.a) + "|" + format_side(s.ground(), split.b);
}

FiniteMetric split_metric(const WeightedSplitSystem& s) {
  const std::size_t n = s.ground_size();
  RatMatrix d(n);
  for (std::size_t k = 0; k < s.size(); ++k) {
    const auto& sp = s.split(k);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (sp.separates(i, j)) {
          d(i, j) += s.weight(k);
          d(j, i) = d(i, j);
        }
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (d(i, j).is_zero()) {
        throw Error(ErrorCode::NotSeparated,
                    "no split separates " + s.ground()[i] + " and " + s.ground()[j], {i, j});
      }
    }
  }
  return validate_metric(d, s.ground());
}

Rat beta(const FiniteMetric& m, std::size_t x, std::size_t y, std::size_t u, std::size_t v) {
  return max(m(x, u) + m(y, v), m(x, v) + m(y, u)) - m(x, y) - m(u, v);
}

Rat alpha(const FiniteMetric& m, std::size_t x, std::size_t y, std::size_t u, std::size_t v) {
  return max(beta(m, x, y, u, v), Rat(0));
}

std::optional<std::array<std::size_t, 5>> find_decomposability_violation(const FiniteMetric& m) {
  const std::size_t n = m.size();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) {
          const Rat b = beta(m, x, y, u, v);
          if (b.sign() <= 0) continue;  // alphas are non-negative
          for (std::size_t t = 0; t < n; ++t) {
            if (b > alpha(m, x, t, u, v) + alpha(m, x, y, u, t)) {
              return std::array<std::size_t, 5>{t, x, y, u, v};
            }
          }
        }
      }
    }
  }
  return std::nullopt;
}

bool is_totally_decomposable(const FiniteMetric& m) {
  return !find_decomposability_violation(m).has_value();
}

std::optional<std::array<std::size_t, 3>> find_incompatible_triple(const WeightedSplitSystem& s) {
  const std::size_t k = s.size();
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if (!incompatible(s.split(i), s.split(j))) continue;
      for (std::size_t l = j + 1; l < k; ++l) {
        if (incompatible(s.split(i), s.split(l)) && incompatible(s.split(j), s.split(l))) {
          return std::array<std::size_t, 3>{i, j, l};
        }
      }
    }
  }
  return std::nullopt;
}

bool is_two_compatible(const WeightedSplitSystem& s) { return !find_incompatible_triple(s); }

std::optional<std::array<std::size_t, 3>> find_weak_compatibility_violation(
    const WeightedSplitSystem& s) {
  const std::size_t k = s.size();
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      for (std::size_t l = j + 1; l < k; ++l) {
        bool some_empty = false;
        for (unsigned choice = 0; choice < 8 && !some_empty; ++choice) {
          const PointSet a1 = (choice & 1U) ? s.split(i).b : s.split(i).a;
          const PointSet a2 = (choice & 2U) ? s.split(j).b : s.split(j).a;
          const PointSet a3 = (choice & 4U) ? s.split(l).b : s.split(l).a;
          some_empty = (a1 & a2 & a3) == 0;
        }
        if (!some_empty) return std::array<std::size_t, 3>{i, j, l};
      }
    }
  }
  return std::nullopt;
}

bool is_weakly_compatible(const WeightedSplitSystem& s) {
  return !find_weak_compatibility_violation(s);
}

std::optional<OctahedralWitness> find_octahedron(const WeightedSplitSystem& s,
                                                 std::size_t max_ground) {
  const std::size_t n = s.ground_size();
  if (n > max_ground) {
    throw Error(ErrorCode::GroundSetTooLarge,
                "octahedral search limited to " + std::to_string(max_ground) + " points");
  }
  // Membership of X1..X6 in the chosen sides of S1..S4 (sides 123, 234, 345, 135).
  static constexpr std::array<unsigned, 6> kPattern{0b1001, 0b0011, 0b1111, 0b0110, 0b1100, 0b0000};
  const std::size_t k = s.size();
  std::array<std::size_t, 4> idx{};
  for (idx[0] = 0; idx[0] < k; ++idx[0]) {
    for (idx[1] = 0; idx[1] < k; ++idx[1]) {
      if (idx[1] == idx[0]) continue;
      for (idx[2] = 0; idx[2] < k; ++idx[2]) {
        if (idx[2] == idx[0] || idx[2] == idx[1]) continue;
        for (idx[3] = 0; idx[3] < k; ++idx[3]) {
          if (idx[3] == idx[0] || idx[3] == idx[1] || idx[3] == idx[2]) continue;
          for (unsigned flips = 0; flips < 16; ++flips) {
            std::array<PointSet, 4> chosen{};
            for (std::size_t q = 0; q < 4; ++q) {
              const auto& sp = s.split(idx[q]);
              chosen[q] = ((flips >> q) & 1U) ? sp.b : sp.a;
            }
            std::array<PointSet, 6> blocks{};
            bool ok = true;
            for (std::size_t x = 0; x < n && ok; ++x) {
              unsigned pattern = 0;
              for (std::size_t q = 0; q < 4; ++q) pattern |= (contains(chosen[q], x) ? 1U : 0U) << q;
              const auto it = std::find(kPattern.begin(), kPattern.end(), pattern);
              if (it == kPattern.end()) {
                ok = false;
              } else {
                blocks[static_cast<std::size_t>(it - kPattern.begin())] |= PointSet{1} << x;
              }
            }
            if (ok && std::all_of(blocks.begin(), blocks.end(), [](PointSet b) { return b != 0; })) {
              return OctahedralWitness{idx, blocks};
            }
          }
        }
      }
    }
  }
  return std::nullopt;
}

bool is_octahedral_free(const WeightedSplitSystem& s, std::size_t max_ground) {
  return !find_octahedron(s, max_ground);
}

Rat isolation_index(const FiniteMetric& m, PointSet side) {
  const std::size_t n = m.size();
  std::vector<std::size_t> as, bs;
  for (std::size_t x = 0; x < n; ++x) (contains(side, x) ? as : bs).push_back(x);
  std::optional<Rat> best;
  for (const auto a : as) {
    for (const auto a2 : as) {
      for (const auto b : bs) {
        for (const auto b2 : bs) {
          const Rat inner = m(a, a2) + m(b, b2);
          const Rat value = max(max(m(a, b) + m(a2, b2), m(a, b2) + m(a2, b)), inner) - inner;
          if (!best || value < *best) best = value;
        }
      }
    }
  }
  return *best / Rat(2);
}

WeightedSplitSystem decompose(const FiniteMetric& m, std::size_t max_ground) {
  const std::size_t n = m.size();
  if (n > max_ground || n > kMaxGroundSize) {
    throw Error(ErrorCode::GroundSetTooLarge,
                "decomposition limited to " + std::to_string(max_ground) + " points");
  }
  WeightedSplitSystem out(m.labels());
  // Sides containing point 0, excluding the full set.
  const PointSet all = full_set(n);
  for (PointSet side = 1; side < all; side += 2) {
    const Rat index = isolation_index(m, side);
    if (index.sign() > 0) out.add(Split::from_side(side, n), index);
  }
  RatMatrix residue = m.matrix();
  for (std::size_t k = 0; k < out.size(); ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (out.split(k).separates(i, j)) residue(i, j) -= out.weight(k);
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (residue(i, j).is_zero()) continue;
      if (const auto w = find_decomposability_violation(m)) {
        throw Error(ErrorCode::NotTotallyDecomposable,
                    "metric is not totally decomposable (split-prime residue)",
                    {(*w)[0], (*w)[1], (*w)[2], (*w)[3], (*w)[4]});
      }
      throw Error(ErrorCode::ResidueNonZero,
                  "decomposition residue at (" + m.label(i) + "," + m.label(j) + ") = " +
                      residue(i, j).str(),
                  {i, j});
    }
  }
  return out;
}

}  // namespace splitspan
