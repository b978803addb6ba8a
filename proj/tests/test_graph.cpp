#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "splitspan/error.hpp"
#include "splitspan/graph.hpp"
#include "support.hpp"

using namespace splitspan;
using testing::build;
using testing::GraphSpec;
using testing::metric_of;
using testing::square_metric;
using testing::unit_cycle;

namespace {

WeightedGraph star(std::vector<Rat> weights) {
  GraphSpec spec;
  for (std::size_t i = 0; i < weights.size(); ++i) spec.terminals.push_back("l" + std::to_string(i));
  spec.aux = 1;
  for (std::size_t i = 0; i < weights.size(); ++i) spec.edges.emplace_back(i, weights.size(), weights[i]);
  return build(spec);
}

// Every simple path between u and v, by plain depth-first search.
void all_simple_paths(const WeightedGraph& g, std::size_t u, std::size_t v, VertexPath& cur,
                      std::vector<VertexPath>& out) {
  if (u == v) {
    out.push_back(cur);
    return;
  }
  for (const auto& nb : g.neighbours(u)) {
    if (std::find(cur.begin(), cur.end(), nb.vertex) != cur.end()) continue;
    cur.push_back(nb.vertex);
    all_simple_paths(g, nb.vertex, v, cur, out);
    cur.pop_back();
  }
}

WeightedGraph random_connected(std::mt19937_64& rng, std::size_t n, std::size_t extra) {
  WeightedGraph g;
  for (std::size_t i = 0; i < n; ++i) {
    if (i < 3) {
      g.add_terminal("t" + std::to_string(i));
    } else {
      g.add_auxiliary();
    }
  }
  std::uniform_int_distribution<int> weight(1, 3);
  for (std::size_t i = 1; i < n; ++i) {
    g.add_edge(std::uniform_int_distribution<std::size_t>(0, i - 1)(rng), i, Rat(weight(rng)));
  }
  for (std::size_t k = 0; k < extra; ++k) {
    const std::size_t a = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    const std::size_t b = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    if (a != b && !g.edge_between(a, b)) g.add_edge(a, b, Rat(weight(rng)));
  }
  return g;
}

}  // namespace

TEST_CASE("graph construction rejects invalid edges") {
  WeightedGraph g;
  const auto x = g.add_terminal("x");
  const auto y = g.add_terminal("y");
  g.add_edge(x, y, Rat(1));
  CHECK_THROWS_AS(g.add_edge(x, y, Rat(2)), Error);
  CHECK_THROWS_AS(g.add_edge(x, x, Rat(2)), Error);
  CHECK_THROWS_AS(g.add_edge(x, 7, Rat(2)), Error);
  const auto z = g.add_auxiliary();
  CHECK_THROWS_AS(g.add_edge(x, z, Rat(0)), Error);
  CHECK(g.terminal("y") == y);
  CHECK(g.auxiliary_count() == 1);
}

TEST_CASE("all-pairs distances") {
  const auto c4 = unit_cycle(4);
  const auto d = all_pairs_distance(c4);
  CHECK(d(0, 2) == Rat(2));
  CHECK(d(0, 1) == Rat(1));

  WeightedGraph edge;
  edge.add_terminal("x");
  edge.add_terminal("y");
  edge.add_edge(0, 1, Rat(3));
  CHECK(all_pairs_distance(edge)(0, 1) == Rat(3));

  CHECK(all_pairs_distance(star({Rat(1), Rat(2), Rat(3)}))(0, 2) == Rat(4));

  WeightedGraph split;
  split.add_terminal("x");
  split.add_terminal("y");
  CHECK_THROWS_AS(all_pairs_distance(split), Error);
}

TEST_CASE("shortest path enumeration") {
  const auto c4 = unit_cycle(4);
  CHECK(enumerate_shortest_paths(c4, {0, 1, 2, 3}).size() == 8);
  CHECK(count_terminal_geodesics(c4, all_pairs_distance(c4)) == 8);

  GraphSpec p{{"x", "y"}, 1, {{0, 2, Rat(1)}, {2, 1, Rat(1)}}};
  const auto path = build(p);
  const auto paths = enumerate_shortest_paths(path, {0, 1});
  REQUIRE(paths.size() == 1);
  CHECK(paths[0] == VertexPath{0, 2, 1});
}

TEST_CASE("shortest paths agree with exhaustive simple-path search") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 60; ++round) {
    const auto g = random_connected(rng, 4 + round % 5, 1 + round % 4);
    const auto dist = all_pairs_distance(g);
    const std::vector<std::size_t> subset{0, 1, 2};
    std::set<VertexPath> got;
    for (const auto& p : enumerate_shortest_paths(g, dist, subset)) {
      CHECK(path_length(g, p) == dist(p.front(), p.back()));
      got.insert(p);
    }
    std::set<VertexPath> expected;
    for (std::size_t i = 0; i < subset.size(); ++i) {
      for (std::size_t j = i + 1; j < subset.size(); ++j) {
        std::vector<VertexPath> all;
        VertexPath cur{subset[i]};
        all_simple_paths(g, subset[i], subset[j], cur, all);
        Rat best = path_length(g, all.front());
        for (const auto& q : all) best = min(best, path_length(g, q));
        CHECK(best == dist(subset[i], subset[j]));
        for (const auto& q : all) {
          if (path_length(g, q) == best) expected.insert(q);
        }
      }
    }
    CHECK(got == expected);
    CHECK(count_terminal_geodesics(g, dist) == expected.size());
    // d_G is a metric on V(G)
    for (std::size_t a = 0; a < g.vertex_count(); ++a) {
      for (std::size_t b = 0; b < g.vertex_count(); ++b) {
        CHECK(dist(a, b) == dist(b, a));
        if (a != b) CHECK(dist(a, b) > Rat(0));
        for (std::size_t c = 0; c < g.vertex_count(); ++c) CHECK(dist(a, c) <= dist(a, b) + dist(b, c));
      }
    }
  }
}

TEST_CASE("degree-two suppression") {
  GraphSpec p{{"x", "y"}, 1, {{0, 2, Rat(1)}, {2, 1, Rat(2)}}};
  const auto g = suppress_auxiliary_degree_two(build(p));
  CHECK(g.vertex_count() == 2);
  REQUIRE(g.edge_count() == 1);
  CHECK(g.edges()[0].weight == Rat(3));

  const auto c4 = unit_cycle(4);
  const auto same = suppress_degree_two(c4, std::vector<bool>(4, true));
  CHECK(same.graph.edge_count() == 4);

  // x-a-y-b-x: suppressing either auxiliary would create a parallel edge
  GraphSpec cyc{{"x", "y"}, 2, {{0, 2, Rat(1)}, {2, 1, Rat(1)}, {1, 3, Rat(1)}, {3, 0, Rat(1)}}};
  const auto kept = suppress_auxiliary_degree_two(build(cyc));
  CHECK(kept.vertex_count() == 3);
  CHECK(kept.edge_count() == 3);
}

TEST_CASE("suppression preserves distances between kept vertices") {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 40; ++round) {
    const auto g = random_connected(rng, 5 + round % 4, round % 3);
    const auto sup = suppress_auxiliary_degree_two(g);
    const auto d1 = all_pairs_distance(g);
    const auto d2 = all_pairs_distance(sup);
    for (std::size_t a = 0; a < 3; ++a) {
      for (std::size_t b = 0; b < 3; ++b) CHECK(d1(a, b) == d2(*sup.terminal(g.vertex(a).name), *sup.terminal(g.vertex(b).name)));
    }
  }
}

TEST_CASE("weighted isomorphism") {
  const auto c4 = unit_cycle(4);
  GraphSpec relabelled{{"1", "2", "3", "4"}, 0, {{3, 0, Rat(1)}, {2, 3, Rat(1)}, {1, 2, Rat(1)}, {0, 1, Rat(1)}}};
  const auto iso = weighted_isomorphic(c4, build(relabelled));
  REQUIRE(iso);
  CHECK(*iso == std::vector<std::size_t>{0, 1, 2, 3});

  GraphSpec path{{"1", "2", "3", "4"}, 0, {{0, 1, Rat(1)}, {1, 2, Rat(1)}, {2, 3, Rat(1)}}};
  CHECK_FALSE(weighted_isomorphic(c4, build(path)));
  GraphSpec heavier{{"1", "2", "3", "4"}, 0, {{0, 1, Rat(1)}, {1, 2, Rat(1)}, {2, 3, Rat(1)}, {3, 0, Rat(2)}}};
  CHECK_FALSE(weighted_isomorphic(c4, build(heavier)));
}

TEST_CASE("isomorphism maps reproduce edge weights") {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 30; ++round) {
    const auto g = random_connected(rng, 6, 3);
    // Rebuild with the auxiliaries in reverse order.
    WeightedGraph h;
    std::vector<std::size_t> pos(g.vertex_count());
    for (std::size_t v = 0; v < 3; ++v) pos[v] = h.add_terminal(g.vertex(v).name);
    for (std::size_t v = g.vertex_count(); v-- > 3;) pos[v] = h.add_auxiliary();
    for (const auto& e : g.edges()) h.add_edge(pos[e.u], pos[e.v], e.weight);
    const auto iso = weighted_isomorphic(g, h);
    REQUIRE(iso);
    for (const auto& e : g.edges()) {
      const auto f = h.edge_between((*iso)[e.u], (*iso)[e.v]);
      REQUIRE(f);
      CHECK(h.edges()[*f].weight == e.weight);
    }
  }
}

TEST_CASE("homeomorphism") {
  WeightedGraph edge;
  edge.add_terminal("x");
  edge.add_terminal("y");
  edge.add_edge(0, 1, Rat(3));
  GraphSpec p{{"x", "y"}, 1, {{0, 2, Rat(1)}, {2, 1, Rat(2)}}};
  CHECK(homeomorphic(edge, build(p)));
  CHECK(homeomorphic(build(p), edge));

  const auto c4 = unit_cycle(4);
  GraphSpec sub{{"1", "2", "3", "4"}, 1,
                {{0, 4, Rat(1, 2)}, {4, 1, Rat(1, 2)}, {1, 2, Rat(1)}, {2, 3, Rat(1)}, {3, 0, Rat(1)}}};
  CHECK(homeomorphic(c4, build(sub)));
  CHECK(homeomorphic(c4, c4));

  GraphSpec tri{{"1", "2", "3", "4"}, 0, {{0, 1, Rat(1)}, {1, 2, Rat(1)}, {2, 0, Rat(1)}, {2, 3, Rat(1)}}};
  CHECK_FALSE(homeomorphic(c4, build(tri)));
}

TEST_CASE("realisation check") {
  const auto m = square_metric();
  CHECK(is_realisation(unit_cycle(4), m));
  GraphSpec st{{"1", "2", "3", "4"}, 1, {{0, 4, Rat(1)}, {1, 4, Rat(1)}, {2, 4, Rat(1)}, {3, 4, Rat(1)}}};
  CHECK_FALSE(is_realisation(build(st), m));

  WeightedGraph edge;
  edge.add_terminal("x");
  edge.add_terminal("y");
  edge.add_edge(0, 1, Rat(3));
  CHECK(is_realisation(edge, metric_of({{0, 3}, {3, 0}}, {"x", "y"})));
  CHECK(terminal_vertices(edge, metric_of({{0, 3}, {3, 0}}, {"y", "x"})) == std::vector<std::size_t>{1, 0});
}

TEST_CASE("necessary optimality conditions") {
  const auto m = square_metric();
  CHECK(check_optimality_necessary(unit_cycle(4), m).all());

  auto chord = unit_cycle(4);
  chord.add_edge(0, 2, Rat(2));
  const auto rep = check_optimality_necessary(chord, m);
  CHECK_FALSE(rep.every_edge_on_all_geodesics_of_some_pair);
  REQUIRE(rep.failing_edge);
  CHECK(chord.edges()[*rep.failing_edge].weight == Rat(2));
  CHECK_FALSE(rep.triangle_free);

  GraphSpec tri{{"1", "2", "3"}, 0, {{0, 1, Rat(1)}, {1, 2, Rat(1)}, {0, 2, Rat(1)}}};
  const auto t = check_optimality_necessary(build(tri), metric_of({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}));
  CHECK_FALSE(t.triangle_free);
  CHECK(t.triangle);
}
