#include "splitspan/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>

#include "splitspan/error.hpp"

namespace splitspan {

std::size_t WeightedGraph::add_terminal(std::string label) {
  if (terminal(label)) throw Error(ErrorCode::InvalidArgument, "duplicate terminal " + label);
  vertices_.push_back({std::move(label), true});
  adj_.emplace_back();
  return vertices_.size() - 1;
}

std::size_t WeightedGraph::add_auxiliary(std::string name) {
  if (name.empty()) name = "a" + std::to_string(vertices_.size());
  vertices_.push_back({std::move(name), false});
  adj_.emplace_back();
  return vertices_.size() - 1;
}

std::size_t WeightedGraph::add_edge(std::size_t u, std::size_t v, Rat weight) {
  if (u >= vertices_.size() || v >= vertices_.size()) {
    throw Error(ErrorCode::InvalidArgument, "edge endpoint out of range");
  }
  if (u == v) throw Error(ErrorCode::InvalidArgument, "self-loop at " + vertices_[u].name, {u});
  if (weight.sign() <= 0) {
    throw Error(ErrorCode::InvalidArgument,
                "non-positive weight on {" + vertices_[u].name + "," + vertices_[v].name + "}",
                {u, v});
  }
  if (edge_between(u, v)) {
    throw Error(ErrorCode::InvalidArgument,
                "parallel edge {" + vertices_[u].name + "," + vertices_[v].name + "}", {u, v});
  }
  if (u > v) std::swap(u, v);
  edges_.push_back({u, v, weight});
  const std::size_t id = edges_.size() - 1;
  adj_[u].push_back({v, id});
  adj_[v].push_back({u, id});
  return id;
}

std::optional<std::size_t> WeightedGraph::edge_between(std::size_t u, std::size_t v) const {
  if (u >= adj_.size()) return std::nullopt;
  for (const auto& nb : adj_[u]) {
    if (nb.vertex == v) return nb.edge;
  }
  return std::nullopt;
}

std::optional<std::size_t> WeightedGraph::terminal(const std::string& label) const {
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    if (vertices_[v].terminal && vertices_[v].name == label) return v;
  }
  return std::nullopt;
}

std::vector<std::size_t> WeightedGraph::terminals() const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    if (vertices_[v].terminal) out.push_back(v);
  }
  return out;
}

std::size_t WeightedGraph::auxiliary_count() const {
  return static_cast<std::size_t>(std::count_if(vertices_.begin(), vertices_.end(),
                                                [](const Vertex& v) { return !v.terminal; }));
}

Rat WeightedGraph::total_length() const {
  Rat total;
  for (const auto& e : edges_) total += e.weight;
  return total;
}

bool WeightedGraph::is_connected() const {
  if (vertices_.empty()) return true;
  std::vector<bool> seen(vertices_.size(), false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    for (const auto& nb : adj_[v]) {
      if (!seen[nb.vertex]) {
        seen[nb.vertex] = true;
        ++reached;
        stack.push_back(nb.vertex);
      }
    }
  }
  return reached == vertices_.size();
}

bool WeightedGraph::is_triangle_free() const {
  for (const auto& e : edges_) {
    for (const auto& nb : adj_[e.u]) {
      if (nb.vertex != e.v && edge_between(nb.vertex, e.v)) return false;
    }
  }
  return true;
}

Rat path_length(const WeightedGraph& g, const VertexPath& path) {
  Rat total;
  for (std::size_t i = 1; i < path.size(); ++i) {
    const auto e = g.edge_between(path[i - 1], path[i]);
    if (!e) {
      throw Error(ErrorCode::InvalidArgument, "path uses a missing edge", {path[i - 1], path[i]});
    }
    total += g.edges()[*e].weight;
  }
  return total;
}

RatMatrix all_pairs_distance(const WeightedGraph& g) {
  const std::size_t n = g.vertex_count();
  SquareMatrix<std::optional<Rat>> d(n);
  for (std::size_t v = 0; v < n; ++v) d(v, v) = Rat(0);
  for (const auto& e : g.edges()) {
    d(e.u, e.v) = e.weight;
    d(e.v, e.u) = e.weight;
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!d(i, k)) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (!d(k, j)) continue;
        const Rat via = *d(i, k) + *d(k, j);
        if (!d(i, j) || via < *d(i, j)) d(i, j) = via;
      }
    }
  }
  RatMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!d(i, j)) {
        throw Error(ErrorCode::Disconnected,
                    "graph is disconnected: no path between " + g.vertex(i).name + " and " +
                        g.vertex(j).name,
                    {i, j});
      }
      out(i, j) = *d(i, j);
    }
  }
  return out;
}

namespace {

void extend_geodesics(const WeightedGraph& g, const RatMatrix& dist, std::size_t target,
                      VertexPath& current, std::vector<VertexPath>& out) {
  const auto here = current.back();
  if (here == target) {
    out.push_back(current);
    return;
  }
  const Rat& remaining = dist(here, target);
  std::vector<std::size_t> next;
  for (const auto& nb : g.neighbours(here)) {
    if (g.edges()[nb.edge].weight + dist(nb.vertex, target) == remaining) next.push_back(nb.vertex);
  }
  std::sort(next.begin(), next.end());
  for (const auto v : next) {
    current.push_back(v);
    extend_geodesics(g, dist, target, current, out);
    current.pop_back();
  }
}

}  // namespace

std::vector<VertexPath> enumerate_shortest_paths(const WeightedGraph& g, const RatMatrix& dist,
                                                 const std::vector<std::size_t>& subset) {
  std::vector<std::size_t> sorted = subset;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<VertexPath> out;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    for (std::size_t j = i + 1; j < sorted.size(); ++j) {
      VertexPath current{sorted[i]};
      extend_geodesics(g, dist, sorted[j], current, out);
    }
  }
  return out;
}

std::vector<VertexPath> enumerate_shortest_paths(const WeightedGraph& g,
                                                 const std::vector<std::size_t>& subset) {
  return enumerate_shortest_paths(g, all_pairs_distance(g), subset);
}

namespace {

// Number of shortest paths from `source` to every vertex.
std::vector<std::uint64_t> geodesic_counts(const WeightedGraph& g, const RatMatrix& dist,
                                           std::size_t source) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return dist(source, a) < dist(source, b);
  });
  std::vector<std::uint64_t> count(n, 0);
  count[source] = 1;
  for (const auto v : order) {
    if (v == source) continue;
    for (const auto& nb : g.neighbours(v)) {
      if (dist(source, nb.vertex) + g.edges()[nb.edge].weight == dist(source, v)) {
        count[v] += count[nb.vertex];
      }
    }
  }
  return count;
}

}  // namespace

std::uint64_t count_terminal_geodesics(const WeightedGraph& g, const RatMatrix& dist) {
  const auto terms = g.terminals();
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto counts = geodesic_counts(g, dist, terms[i]);
    for (std::size_t j = i + 1; j < terms.size(); ++j) total += counts[terms[j]];
  }
  return total;
}

Suppressed suppress_degree_two(const WeightedGraph& g, const std::vector<bool>& keep) {
  const std::size_t n = g.vertex_count();
  // Work on a mutable adjacency map; rebuild the graph at the end.
  std::vector<std::map<std::size_t, Rat>> adj(n);
  for (const auto& e : g.edges()) {
    adj[e.u][e.v] = e.weight;
    adj[e.v][e.u] = e.weight;
  }
  std::vector<bool> alive(n, true);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t v = 0; v < n; ++v) {
      if (!alive[v] || (v < keep.size() && keep[v]) || adj[v].size() != 2) continue;
      const auto it = adj[v].begin();
      const auto [a, wa] = *it;
      const auto [b, wb] = *std::next(it);
      if (adj[a].contains(b)) continue;  // would create a parallel edge
      adj[a].erase(v);
      adj[b].erase(v);
      adj[a][b] = wa + wb;
      adj[b][a] = wa + wb;
      adj[v].clear();
      alive[v] = false;
      changed = true;
      break;
    }
  }
  Suppressed out;
  out.old_to_new.assign(n, std::nullopt);
  for (std::size_t v = 0; v < n; ++v) {
    if (!alive[v]) continue;
    const auto& vx = g.vertex(v);
    out.old_to_new[v] = vx.terminal ? out.graph.add_terminal(vx.name) : out.graph.add_auxiliary(vx.name);
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (!alive[v]) continue;
    for (const auto& [u, w] : adj[v]) {
      if (u > v) out.graph.add_edge(*out.old_to_new[v], *out.old_to_new[u], w);
    }
  }
  return out;
}

WeightedGraph suppress_auxiliary_degree_two(const WeightedGraph& g) {
  std::vector<bool> keep(g.vertex_count());
  for (std::size_t v = 0; v < g.vertex_count(); ++v) keep[v] = g.is_terminal(v);
  return suppress_degree_two(g, keep).graph;
}

namespace {

struct VertexSignature {
  bool terminal;
  std::string label;  // empty for auxiliaries
  std::vector<Rat> incident;

  friend bool operator==(const VertexSignature&, const VertexSignature&) = default;
};

VertexSignature signature(const WeightedGraph& g, std::size_t v) {
  VertexSignature s{g.is_terminal(v), g.is_terminal(v) ? g.vertex(v).name : std::string{}, {}};
  for (const auto& nb : g.neighbours(v)) s.incident.push_back(g.edges()[nb.edge].weight);
  std::sort(s.incident.begin(), s.incident.end());
  return s;
}

class IsomorphismSearch {
 public:
  IsomorphismSearch(const WeightedGraph& g1, const WeightedGraph& g2) : g1_(g1), g2_(g2) {
    const std::size_t n = g1.vertex_count();
    std::vector<VertexSignature> s1, s2;
    for (std::size_t v = 0; v < n; ++v) {
      s1.push_back(signature(g1, v));
      s2.push_back(signature(g2, v));
    }
    candidates_.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
      for (std::size_t u = 0; u < n; ++u) {
        if (s1[v] == s2[u]) candidates_[v].push_back(u);
      }
    }
    // Most constrained first, then grow along edges so adjacency checks bite early.
    std::vector<bool> placed(n, false);
    while (order_.size() < n) {
      std::size_t best = n;
      int best_links = -1;
      for (std::size_t v = 0; v < n; ++v) {
        if (placed[v]) continue;
        int links = 0;
        for (const auto& nb : g1.neighbours(v)) links += placed[nb.vertex] ? 1 : 0;
        if (best == n || links > best_links ||
            (links == best_links && candidates_[v].size() < candidates_[best].size())) {
          best = v;
          best_links = links;
        }
      }
      placed[best] = true;
      order_.push_back(best);
    }
    map_.assign(n, n);
    used_.assign(n, false);
  }

  std::optional<std::vector<std::size_t>> run() {
    if (search(0)) return map_;
    return std::nullopt;
  }

 private:
  bool consistent(std::size_t v, std::size_t u) const {
    for (const auto& nb : g1_.neighbours(v)) {
      const auto image = map_[nb.vertex];
      if (image == map_.size()) continue;
      const auto e2 = g2_.edge_between(u, image);
      if (!e2 || g2_.edges()[*e2].weight != g1_.edges()[nb.edge].weight) return false;
    }
    // Non-edges must map to non-edges; with equal degrees this follows from
    // the edge check once all vertices are placed, but checking here prunes.
    std::size_t mapped_neighbours = 0;
    for (const auto& nb : g2_.neighbours(u)) {
      for (std::size_t w = 0; w < map_.size(); ++w) {
        if (map_[w] == nb.vertex) {
          ++mapped_neighbours;
          break;
        }
      }
    }
    std::size_t expected = 0;
    for (const auto& nb : g1_.neighbours(v)) expected += map_[nb.vertex] != map_.size() ? 1 : 0;
    return mapped_neighbours == expected;
  }

  bool search(std::size_t depth) {
    if (depth == order_.size()) return true;
    const auto v = order_[depth];
    for (const auto u : candidates_[v]) {
      if (used_[u] || !consistent(v, u)) continue;
      map_[v] = u;
      used_[u] = true;
      if (search(depth + 1)) return true;
      map_[v] = map_.size();
      used_[u] = false;
    }
    return false;
  }

  const WeightedGraph& g1_;
  const WeightedGraph& g2_;
  std::vector<std::vector<std::size_t>> candidates_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> map_;
  std::vector<bool> used_;
};

}  // namespace

std::optional<std::vector<std::size_t>> weighted_isomorphic(const WeightedGraph& g1,
                                                            const WeightedGraph& g2) {
  if (g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count()) {
    return std::nullopt;
  }
  std::vector<Rat> w1, w2;
  for (const auto& e : g1.edges()) w1.push_back(e.weight);
  for (const auto& e : g2.edges()) w2.push_back(e.weight);
  std::sort(w1.begin(), w1.end());
  std::sort(w2.begin(), w2.end());
  if (w1 != w2) return std::nullopt;
  return IsomorphismSearch(g1, g2).run();
}

bool homeomorphic(const WeightedGraph& g1, const WeightedGraph& g2) {
  return weighted_isomorphic(suppress_auxiliary_degree_two(g1), suppress_auxiliary_degree_two(g2))
      .has_value();
}

std::vector<std::size_t> terminal_vertices(const WeightedGraph& g, const FiniteMetric& m) {
  std::vector<std::size_t> out;
  out.reserve(m.size());
  for (const auto& label : m.labels()) {
    const auto v = g.terminal(label);
    if (!v) throw Error(ErrorCode::InvalidArgument, "graph has no terminal labelled " + label);
    out.push_back(*v);
  }
  return out;
}

bool is_realisation(const WeightedGraph& g, const FiniteMetric& m) {
  std::vector<std::size_t> terms;
  for (const auto& label : m.labels()) {
    const auto v = g.terminal(label);
    if (!v) return false;
    terms.push_back(*v);
  }
  if (!g.is_connected()) return false;
  const auto dist = all_pairs_distance(g);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t j = i + 1; j < terms.size(); ++j) {
      if (dist(terms[i], terms[j]) != m(i, j)) return false;
    }
  }
  return true;
}

OptimalityReport check_optimality_necessary(const WeightedGraph& g, const FiniteMetric& m) {
  OptimalityReport report;
  const auto terms = terminal_vertices(g, m);
  const auto dist = all_pairs_distance(g);
  const std::size_t n = g.vertex_count();

  std::vector<std::vector<std::uint64_t>> counts(n);
  for (const auto t : terms) counts[t] = geodesic_counts(g, dist, t);

  // (a) each edge lies on every geodesic of some terminal pair
  for (std::size_t id = 0; id < g.edge_count() && report.every_edge_on_all_geodesics_of_some_pair;
       ++id) {
    const auto& e = g.edges()[id];
    bool essential = false;
    for (std::size_t i = 0; i < terms.size() && !essential; ++i) {
      for (std::size_t j = i + 1; j < terms.size() && !essential; ++j) {
        const auto x = terms[i];
        const auto y = terms[j];
        std::uint64_t through = 0;
        if (dist(x, e.u) + e.weight + dist(e.v, y) == dist(x, y)) {
          through += counts[x][e.u] * counts[y][e.v];
        }
        if (dist(x, e.v) + e.weight + dist(e.u, y) == dist(x, y)) {
          through += counts[x][e.v] * counts[y][e.u];
        }
        essential = through > 0 && through == counts[x][y];
      }
    }
    if (!essential) {
      report.every_edge_on_all_geodesics_of_some_pair = false;
      report.failing_edge = id;
    }
  }

  // (b) two edges sharing a vertex lie on a common terminal geodesic
  for (std::size_t v = 0; v < n && report.adjacent_edges_on_common_geodesic; ++v) {
    const auto& nbs = g.neighbours(v);
    for (std::size_t p = 0; p < nbs.size() && report.adjacent_edges_on_common_geodesic; ++p) {
      for (std::size_t q = p + 1; q < nbs.size(); ++q) {
        const auto a = nbs[p].vertex;
        const auto b = nbs[q].vertex;
        const Rat middle = g.edges()[nbs[p].edge].weight + g.edges()[nbs[q].edge].weight;
        bool found = false;
        for (const auto x : terms) {
          for (const auto y : terms) {
            if (x != y && dist(x, a) + middle + dist(b, y) == dist(x, y)) {
              found = true;
              break;
            }
          }
          if (found) break;
        }
        if (!found) {
          report.adjacent_edges_on_common_geodesic = false;
          report.failing_wedge = std::vector<std::size_t>{a, v, b};
          break;
        }
      }
    }
  }

  // (c) triangle-free
  for (const auto& e : g.edges()) {
    for (const auto& nb : g.neighbours(e.u)) {
      if (nb.vertex != e.v && g.edge_between(nb.vertex, e.v)) {
        report.triangle_free = false;
        report.triangle = std::vector<std::size_t>{e.u, e.v, nb.vertex};
        break;
      }
    }
    if (!report.triangle_free) break;
  }
  return report;
}

}  // namespace splitspan
