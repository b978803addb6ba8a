#include "splitspan/corpus.hpp"

#include <random>

#include "splitspan/error.hpp"
#include "splitspan/tightspan.hpp"

namespace splitspan {

namespace {

PointSet side_of(const std::vector<std::string>& ground, std::initializer_list<const char*> labels) {
  PointSet s = 0;
  for (const char* l : labels) {
    for (std::size_t i = 0; i < ground.size(); ++i) {
      if (ground[i] == l) s |= PointSet{1} << i;
    }
  }
  return s;
}

bool separates_all(const WeightedSplitSystem& s) {
  const std::size_t n = s.ground_size();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      bool sep = false;
      for (const auto& sp : s.splits()) sep |= sp.separates(x, y);
      if (!sep) return false;
    }
  }
  return true;
}

}  // namespace

WeightedSplitSystem square_system() {
  WeightedSplitSystem s({"1", "2", "3", "4"});
  s.add(Split::from_side(side_of(s.ground(), {"1", "2"}), 4), Rat(1));
  s.add(Split::from_side(side_of(s.ground(), {"1", "4"}), 4), Rat(1));
  return s;
}

WeightedSplitSystem tree_system() {
  WeightedSplitSystem s({"a", "b", "c", "d"});
  for (const char* leaf : {"a", "b", "c", "d"}) {
    s.add(Split::from_side(side_of(s.ground(), {leaf}), 4), Rat(1));
  }
  s.add(Split::from_side(side_of(s.ground(), {"a", "b"}), 4), Rat(2));
  return s;
}

WeightedSplitSystem cube_system() {
  WeightedSplitSystem s({"1", "2", "3", "4", "5", "6"});
  s.add(Split::from_side(side_of(s.ground(), {"1", "2", "3"}), 6), Rat(1));
  s.add(Split::from_side(side_of(s.ground(), {"2", "3", "4"}), 6), Rat(1));
  s.add(Split::from_side(side_of(s.ground(), {"3", "4", "5"}), 6), Rat(1));
  return s;
}

std::vector<CorpusInstance> random_two_compatible_corpus(const CorpusConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  std::vector<CorpusInstance> out;
  std::size_t attempt = 0;
  while (out.size() < cfg.count) {
    if (++attempt > 1000 * (cfg.count + 1)) {
      throw Error(ErrorCode::InvalidArgument, "corpus generator could not reach the requested size");
    }
    const std::size_t n =
        std::uniform_int_distribution<std::size_t>(cfg.min_points, cfg.max_points)(rng);
    const std::size_t target =
        std::uniform_int_distribution<std::size_t>(n - 1, cfg.max_splits)(rng);
    std::vector<std::string> ground;
    for (std::size_t i = 0; i < n; ++i) ground.push_back(std::string(1, static_cast<char>('a' + i)));
    WeightedSplitSystem s(ground);
    std::uniform_int_distribution<PointSet> side_dist(1, full_set(n) - 1);
    std::uniform_int_distribution<std::int64_t> weight_dist(1, cfg.max_weight);
    for (std::size_t tries = 0; tries < 50 && s.size() < target; ++tries) {
      const Split sp = Split::from_side(side_dist(rng), n);
      const Rat w(weight_dist(rng));
      if (s.find(sp)) continue;
      WeightedSplitSystem trial = s;
      trial.add(sp, w);
      if (is_two_compatible(trial)) s = std::move(trial);
    }
    if (!separates_all(s)) continue;
    const FiniteMetric m = split_metric(s);
    const auto gd = suppress_auxiliary_degree_two(
        to_weighted_graph(tight_span_graph_via_buneman(m, s), m));
    if (gd.auxiliary_count() > cfg.max_aux) continue;
    out.push_back({"random-" + std::to_string(out.size()), std::move(s), m});
  }
  return out;
}

std::vector<CorpusInstance> acceptance_corpus(const CorpusConfig& cfg) {
  std::vector<CorpusInstance> out;
  const auto sq = square_system();
  out.push_back({"square", sq, split_metric(sq)});
  const auto tr = tree_system();
  out.push_back({"tree", tr, split_metric(tr)});
  for (auto& inst : random_two_compatible_corpus(cfg)) out.push_back(std::move(inst));
  return out;
}

}  // namespace splitspan
