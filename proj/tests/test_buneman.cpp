#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "splitspan/buneman.hpp"
#include "splitspan/corpus.hpp"
#include "splitspan/error.hpp"
#include "splitspan/tightspan.hpp"
#include "support.hpp"

using namespace splitspan;
using testing::set_of;

namespace {

std::vector<Rat> ints(std::initializer_list<int> v) {
  std::vector<Rat> out;
  for (const int x : v) out.emplace_back(x);
  return out;
}

std::vector<WeightedSplitSystem> systems() {
  std::vector<WeightedSplitSystem> out{square_system(), tree_system(), cube_system()};
  CorpusConfig cfg;
  cfg.count = 40;
  for (auto& inst : random_two_compatible_corpus(cfg)) out.push_back(inst.system);
  return out;
}

bool connected(std::size_t n, const std::vector<BunemanEdge>& edges) {
  std::vector<std::size_t> comp(n);
  std::iota(comp.begin(), comp.end(), 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& e : edges) {
      const auto m = std::min(comp[e.u], comp[e.v]);
      if (comp[e.u] != m || comp[e.v] != m) {
        comp[e.u] = comp[e.v] = m;
        changed = true;
      }
    }
  }
  return std::all_of(comp.begin(), comp.end(), [](std::size_t c) { return c == 0; });
}

}  // namespace

TEST_CASE("membership examples on the square system") {
  const auto s = square_system();
  // sides: 0 = {1,2}, 1 = {3,4}, 2 = {1,4}, 3 = {2,3}
  CHECK(in_buneman(s, BunemanPoint{{Rat(1, 2), Rat(1, 2), Rat(1), Rat(0)}}));
  CHECK(in_buneman(s, BunemanPoint{{Rat(1, 2), Rat(1, 2), Rat(1, 2), Rat(1, 2)}}));
  CHECK_FALSE(in_buneman(s, BunemanPoint{{Rat(1), Rat(1), Rat(0), Rat(1)}}));
  CHECK_THROWS_AS(in_buneman(s, BunemanPoint{{Rat(1)}}), Error);
  for (std::size_t x = 0; x < 4; ++x) CHECK(in_buneman(s, phi(s, x)));
}

TEST_CASE("vertex, edge and quad counts") {
  const auto cube = buneman_skeleton(cube_system());
  CHECK(cube.vertices.size() == 8);
  CHECK(cube.edges.size() == 12);
  CHECK(cube.quads.size() == 6);

  const auto sq = buneman_skeleton(square_system());
  CHECK(sq.vertices.size() == 4);
  CHECK(sq.edges.size() == 4);
  CHECK(sq.quads.size() == 1);

  const auto tree = buneman_skeleton(tree_system());
  CHECK(tree.vertices.size() == 6);
  CHECK(tree.edges.size() == 5);
  CHECK(tree.quads.empty());

  WeightedSplitSystem single({"x", "y"});
  single.add(Split::from_side(1, 2), Rat(3));
  CHECK(buneman_vertices(single).size() == 2);

  WeightedSplitSystem many(numbered_labels(8));
  for (PointSet a = 1; a <= 30; ++a) many.add(Split::from_side(a, 8), Rat(1));
  CHECK_THROWS_AS(buneman_vertices(many), Error);
}

TEST_CASE("the cube system: non-terminal vertices and their images") {
  const auto s = cube_system();
  std::set<SignPattern> terminal_patterns;
  for (std::size_t x = 0; x < 6; ++x) terminal_patterns.insert(*pattern_of(s, phi(s, x)));
  std::vector<BunemanPoint> inner;
  for (const auto p : buneman_vertices(s)) {
    if (!terminal_patterns.contains(p)) inner.push_back(vertex_point(s, p));
  }
  REQUIRE(inner.size() == 2);
  std::set<std::vector<Rat>> images{lambda_map(s, inner[0]), lambda_map(s, inner[1])};
  CHECK(images == std::set<std::vector<Rat>>{ints({1, 2, 1, 2, 1, 2}), ints({2, 1, 2, 1, 2, 1})});
  CHECK(d1(inner[0], inner[1]) == Rat(3));
  CHECK(lambda_map(s, phi(s, 0)) == ints({0, 1, 2, 3, 2, 1}));
  // Phi(1) carries weight on {1,2,3}, {5,6,1}, {6,1,2}
  CHECK(phi(s, 0).coords == ints({1, 0, 1, 0, 1, 0}));
}

TEST_CASE("phi and d1 on the square system") {
  const auto s = square_system();
  CHECK(phi(s, 0).coords == ints({1, 0, 1, 0}));
  CHECK(d1(phi(s, 0), phi(s, 2)) == Rat(2));
  CHECK(d1(phi(s, 1), phi(s, 1)) == Rat(0));
}

TEST_CASE("lambda_A") {
  const auto s = square_system();
  for (std::size_t x = 0; x < 4; ++x) {
    for (SideIndex a = 0; a < 4; ++a) {
      CHECK(lambda_A(s, phi(s, x), a) == Rat(contains(s.side(a), x) ? 1 : 0));
    }
  }
  const auto sk = buneman_skeleton(s);
  REQUIRE(sk.quads.size() == 1);
  BunemanPoint centre{std::vector<Rat>(4)};
  for (const auto c : sk.quads[0].corners) {
    const auto p = vertex_point(s, sk.vertices[c]);
    for (std::size_t i = 0; i < 4; ++i) centre.coords[i] += p.coords[i] / Rat(4);
  }
  for (SideIndex a = 0; a < 4; ++a) CHECK(lambda_A(s, centre, a) == Rat(1, 2));
}

TEST_CASE("properties over a corpus of systems") {
  for (const auto& s : systems()) {
    const auto m = split_metric(s);
    const std::size_t n = s.ground_size();
    for (std::size_t x = 0; x < n; ++x) {
      CHECK(lambda_map(s, phi(s, x)) == kuratowski(m, x));
      for (std::size_t y = 0; y < n; ++y) CHECK(d1(phi(s, x), phi(s, y)) == m(x, y));
    }
    const auto sk = buneman_skeleton(s);
    for (const auto p : sk.vertices) {
      const auto mu = vertex_point(s, p);
      CHECK(pattern_of(s, mu) == p);
      for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(mu.coords[2 * i] + mu.coords[2 * i + 1] == s.weight(i));
        CHECK(lambda_A(s, mu, 2 * i) + lambda_A(s, mu, 2 * i + 1) == Rat(1));
      }
    }
    for (const auto& e : sk.edges) CHECK(__builtin_popcountll(sk.vertices[e.u] ^ sk.vertices[e.v]) == 1);
    for (const auto& q : sk.quads) {
      CHECK(incompatible(s.split(q.split1), s.split(q.split2)));
      CHECK(__builtin_popcountll(sk.vertices[q.corners[0]] ^ sk.vertices[q.corners[3]]) == 2);
    }
    if (!is_two_compatible(s)) continue;
    CHECK(connected(sk.vertices.size(), sk.edges));
    std::vector<bool> touched(sk.vertices.size(), sk.vertices.size() == 1);
    for (const auto& e : sk.edges) touched[e.u] = touched[e.v] = true;
    CHECK(std::all_of(touched.begin(), touched.end(), [](bool b) { return b; }));
    // d1 between vertices equals d_inf between their images
    for (const auto p : sk.vertices) {
      for (const auto q : sk.vertices) {
        const auto mp = vertex_point(s, p);
        const auto mq = vertex_point(s, q);
        CHECK(d1(mp, mq) == d_inf(lambda_map(s, mp), lambda_map(s, mq)));
      }
    }
  }
}

TEST_CASE("membership matches tightness of the image on half-integral points") {
  std::mt19937_64 rng(31);
  CorpusConfig cfg;
  cfg.count = 25;
  for (const auto& inst : random_two_compatible_corpus(cfg)) {
    const auto& s = inst.system;
    std::uniform_int_distribution<int> level(0, 2);
    for (int trial = 0; trial < 40; ++trial) {
      BunemanPoint mu{std::vector<Rat>(s.side_count())};
      for (std::size_t i = 0; i < s.size(); ++i) {
        mu.coords[2 * i] = s.weight(i) * Rat(level(rng), 2);
        mu.coords[2 * i + 1] = s.weight(i) - mu.coords[2 * i];
      }
      CHECK(in_buneman(s, mu) == is_tight_point(inst.metric, lambda_map(s, mu)));
    }
  }
}
