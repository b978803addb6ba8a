#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "splitspan/buneman.hpp"
#include "splitspan/corpus.hpp"
#include "splitspan/error.hpp"
#include "splitspan/tightspan.hpp"
#include "support.hpp"

using namespace splitspan;
using testing::metric_of;
using testing::square_metric;

namespace {

TightPoint pt(std::initializer_list<int> v) {
  TightPoint f;
  for (const int x : v) f.emplace_back(x);
  return f;
}

}  // namespace

TEST_CASE("Kuratowski map and d_inf") {
  const auto two = metric_of({{0, 3}, {3, 0}}, {"x", "y"});
  CHECK(kuratowski(two, 0) == pt({0, 3}));
  CHECK(kuratowski(square_metric(), 0) == pt({0, 1, 2, 1}));
  const auto cube = split_metric(cube_system());
  CHECK(kuratowski(cube, 0) == pt({0, 1, 2, 3, 2, 1}));
  CHECK(d_inf(pt({1, 2, 1, 2, 1, 2}), pt({2, 1, 2, 1, 2, 1})) == Rat(1));
  CHECK(d_inf(pt({1, 2}), pt({1, 2})) == Rat(0));
  for (std::size_t x = 0; x < 6; ++x) {
    for (std::size_t y = 0; y < 6; ++y) CHECK(d_inf(kuratowski(cube, x), kuratowski(cube, y)) == cube(x, y));
  }
}

TEST_CASE("tight points") {
  const auto m = square_metric();
  CHECK(is_tight_point(m, kuratowski(m, 2)));
  CHECK(is_tight_point(m, pt({1, 1, 1, 1})));
  CHECK_FALSE(is_tight_point(m, pt({10, 10, 10, 10})));
  CHECK(in_pd(m, pt({10, 10, 10, 10})));
  CHECK_FALSE(in_pd(m, pt({0, 0, 0, 0})));
}

TEST_CASE("vertex enumeration examples") {
  const auto two = metric_of({{0, 3}, {3, 0}}, {"x", "y"});
  const auto v2 = tight_span_vertices(two);
  CHECK(std::set<TightPoint>(v2.begin(), v2.end()) == std::set<TightPoint>{pt({0, 3}), pt({3, 0})});

  CHECK(tight_span_vertices(square_metric()).size() == 4);

  const auto cube = split_metric(cube_system());
  const auto vc = tight_span_vertices(cube);
  CHECK(vc.size() == 8);
  CHECK(std::find(vc.begin(), vc.end(), pt({1, 2, 1, 2, 1, 2})) != vc.end());
  CHECK(std::find(vc.begin(), vc.end(), pt({2, 1, 2, 1, 2, 1})) != vc.end());
  CHECK_THROWS_AS(tight_span_vertices(cube, 5), Error);
}

TEST_CASE("tight-span graph of the square and of the cube system") {
  const auto sq = square_metric();
  for (const auto& gd : {tight_span_graph_direct(sq), tight_span_graph_via_buneman(sq, decompose(sq))}) {
    CHECK(gd.vertices.size() == 4);
    REQUIRE(gd.edges.size() == 4);
    for (const auto& e : gd.edges) CHECK(e.weight == Rat(1));
    CHECK(weighted_isomorphic(to_weighted_graph(gd, sq), testing::unit_cycle(4)));
  }

  const auto cube = split_metric(cube_system());
  const auto direct = tight_span_graph_direct(cube);
  CHECK(direct.vertices.size() == 8);
  CHECK(direct.edges.size() == 12);
  for (const auto& e : direct.edges) CHECK(e.weight == Rat(1));
  CHECK(same_tight_span(direct, tight_span_graph_via_buneman(cube, cube_system())));
}

TEST_CASE("tree metrics: G_d is the realising tree") {
  const auto m = split_metric(tree_system());
  const auto g = to_weighted_graph(tight_span_graph(m), m);
  WeightedGraph tree;
  for (const char* l : {"a", "b", "c", "d"}) tree.add_terminal(l);
  const auto p = tree.add_auxiliary();
  const auto q = tree.add_auxiliary();
  tree.add_edge(0, p, Rat(1));
  tree.add_edge(1, p, Rat(1));
  tree.add_edge(2, q, Rat(1));
  tree.add_edge(3, q, Rat(1));
  tree.add_edge(p, q, Rat(2));
  CHECK(weighted_isomorphic(g, tree));
}

TEST_CASE("vertex distance property") {
  CHECK(check_vertex_distance_property(square_metric()).holds);

  const auto cube = split_metric(cube_system());
  CHECK_THROWS_AS(check_vertex_distance_property(cube), Error);
  const auto rep = check_vertex_distance_property(cube, false);
  CHECK_FALSE(rep.holds);
  REQUIRE(rep.witness);
  const std::set<TightPoint> pair{rep.graph.vertices[rep.witness->first], rep.graph.vertices[rep.witness->second]};
  CHECK(pair == std::set<TightPoint>{pt({1, 2, 1, 2, 1, 2}), pt({2, 1, 2, 1, 2, 1})});
  CHECK(rep.d_inf == Rat(1));
  CHECK(rep.d_graph == Rat(3));
}

TEST_CASE("corpus properties of the tight span") {
  CorpusConfig cfg;
  cfg.count = 60;
  for (const auto& inst : acceptance_corpus(cfg)) {
    const auto& m = inst.metric;
    const auto a = tight_span_graph_via_buneman(m, inst.system);
    const auto b = tight_span_graph_direct(m);
    CHECK(same_tight_span(a, b));
    CHECK(weighted_isomorphic(to_weighted_graph(a, m), to_weighted_graph(b, m)));

    // vertices are Lambda images of Buneman vertices
    std::set<TightPoint> images;
    for (const auto p : buneman_vertices(inst.system)) images.insert(lambda_map(inst.system, vertex_point(inst.system, p)));
    CHECK(std::set<TightPoint>(b.vertices.begin(), b.vertices.end()) == images);
    CHECK(images.size() == b.vertices.size());

    for (const auto& f : b.vertices) {
      CHECK(is_tight_point(m, f));
      for (std::size_t x = 0; x < m.size(); ++x) {
        Rat far = 0;
        for (std::size_t y = 0; y < m.size(); ++y) far = max(far, m(x, y));
        CHECK(f[x] <= far);
      }
    }
    for (std::size_t x = 0; x < m.size(); ++x) CHECK(b.vertices[b.kappa[x]] == kuratowski(m, x));
    for (const auto& e : b.edges) CHECK(e.weight > Rat(0));

    const auto g = to_weighted_graph(b, m);
    CHECK(g.is_connected());
    CHECK(is_realisation(suppress_auxiliary_degree_two(g), m));
    CHECK(check_vertex_distance_property(m).holds);
  }
}
