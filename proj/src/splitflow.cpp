#include "splitspan/splitflow.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "splitspan/error.hpp"

namespace splitspan {

bool SplitFlowDigraph::has_arc(std::size_t u, std::size_t v) const {
  if (u >= out.size()) return false;
  return std::binary_search(out[u].begin(), out[u].end(), v);
}

SplitFlowDigraph split_flow_digraph(const WeightedGraph& g, PointSet a) {
  return split_flow_digraph(g, all_pairs_distance(g), a);
}

SplitFlowDigraph split_flow_digraph(const WeightedGraph& g, const RatMatrix& dist, PointSet a) {
  const auto terms = g.terminals();
  const std::size_t nv = g.vertex_count();
  std::vector<std::vector<bool>> arc(nv, std::vector<bool>(nv, false));

  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t j = i + 1; j < terms.size(); ++j) {
      const std::size_t x = terms[i];
      const std::size_t y = terms[j];
      const bool same = contains(a, i) == contains(a, j);
      for (const auto& e : g.edges()) {
        std::size_t from = e.u;
        std::size_t to = e.v;
        if (dist(x, e.u) + e.weight + dist(e.v, y) != dist(x, y)) {
          if (dist(x, e.v) + e.weight + dist(e.u, y) != dist(x, y)) continue;
          std::swap(from, to);
        }
        if (same) {
          arc[from][to] = arc[to][from] = true;
        } else if (contains(a, i)) {
          arc[from][to] = true;
        } else {
          arc[to][from] = true;
        }
      }
    }
  }

  SplitFlowDigraph d;
  d.out.resize(nv);
  for (std::size_t u = 0; u < nv; ++u) {
    for (std::size_t v = 0; v < nv; ++v) {
      if (arc[u][v]) {
        d.out[u].push_back(v);
        d.arcs.emplace_back(u, v);
      }
    }
  }
  d.scc = strongly_connected_components(d.out);
  return d;
}

SccCountReport check_scc_count(const WeightedGraph& g, bool claimed_minimal_path_saturated) {
  const std::size_t n = g.terminals().size();
  if (n > 20) throw Error(ErrorCode::GroundSetTooLarge, "too many terminals for subset sweep");
  const RatMatrix dist = all_pairs_distance(g);
  SccCountReport rep;
  const PointSet subsets = PointSet{1} << n;
  rep.counts.reserve(subsets);
  for (PointSet a = 0; a < subsets; ++a) {
    const auto count = split_flow_digraph(g, dist, a).scc.count;
    rep.counts.push_back(count);
    if (claimed_minimal_path_saturated && (count < 1 || count > 2)) rep.violations.push_back(a);
  }
  return rep;
}

bool check_split_potential(const WeightedGraph& g, const std::vector<Rat>& values) {
  if (values.size() != g.vertex_count()) {
    throw Error(ErrorCode::InvalidArgument, "one potential value per vertex expected");
  }
  const auto terms = g.terminals();
  for (const auto t : terms) {
    if (values[t] != Rat(0) && values[t] != Rat(1)) {
      throw Error(ErrorCode::TerminalValueNotBinary,
                  "terminal " + g.vertex(t).name + " has value " + values[t].str(), {t});
    }
  }
  for (const auto& path : enumerate_shortest_paths(g, terms)) {
    bool up = true;
    bool down = true;
    for (std::size_t k = 1; k < path.size(); ++k) {
      const auto c = values[path[k]] <=> values[path[k - 1]];
      if (c < 0) up = false;
      if (c > 0) down = false;
    }
    if (!up && !down) return false;
  }
  return true;
}

bool verify_potential_vertex_binarity(const WeightedGraph& g, const std::vector<Rat>& values) {
  if (values.size() != g.vertex_count()) {
    throw Error(ErrorCode::InvalidArgument, "one potential value per vertex expected");
  }
  return std::all_of(values.begin(), values.end(),
                     [](const Rat& v) { return v == Rat(0) || v == Rat(1); });
}

namespace {

struct TerminalPath {
  Rat d;
  std::vector<std::size_t> edges;
};

std::vector<TerminalPath> all_terminal_paths(const WeightedGraph& g,
                                             const std::vector<std::size_t>& tv,
                                             const FiniteMetric& m, std::size_t max_paths) {
  std::vector<TerminalPath> paths;
  std::vector<bool> on_path(g.vertex_count(), false);
  std::vector<std::size_t> stack;

  for (std::size_t i = 0; i < tv.size(); ++i) {
    for (std::size_t j = i + 1; j < tv.size(); ++j) {
      const std::size_t target = tv[j];
      auto dfs = [&](auto&& self, std::size_t v) -> void {
        if (v == target) {
          if (paths.size() >= max_paths) {
            throw Error(ErrorCode::BudgetExceeded, "too many simple terminal paths");
          }
          paths.push_back({m(i, j), stack});
          return;
        }
        on_path[v] = true;
        for (const auto& nb : g.neighbours(v)) {
          if (on_path[nb.vertex]) continue;
          stack.push_back(nb.edge);
          self(self, nb.vertex);
          stack.pop_back();
        }
        on_path[v] = false;
      };
      dfs(dfs, tv[i]);
    }
  }
  return paths;
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t v) {
  while (parent[v] != v) {
    parent[v] = parent[parent[v]];
    v = parent[v];
  }
  return v;
}

WeightedGraph contract_zero_edges(const WeightedGraph& g, const std::vector<Rat>& w) {
  const std::size_t nv = g.vertex_count();
  std::vector<std::size_t> parent(nv);
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (!w[e].is_zero()) continue;
    std::size_t ru = find_root(parent, g.edges()[e].u);
    std::size_t rv = find_root(parent, g.edges()[e].v);
    if (ru == rv) continue;
    if (g.is_terminal(ru) && g.is_terminal(rv)) {
      throw Error(ErrorCode::InvariantViolation, "perturbation merged two terminals", {ru, rv});
    }
    if (g.is_terminal(rv)) std::swap(ru, rv);
    parent[rv] = ru;
  }

  WeightedGraph out;
  std::vector<std::size_t> index(nv, nv);
  for (std::size_t v = 0; v < nv; ++v) {
    const std::size_t r = find_root(parent, v);
    if (index[r] != nv) continue;
    index[r] = g.is_terminal(r) ? out.add_terminal(g.vertex(r).name)
                                : out.add_auxiliary(g.vertex(r).name);
  }

  const std::size_t cv = out.vertex_count();
  std::vector<std::vector<std::optional<Rat>>> best(cv, std::vector<std::optional<Rat>>(cv));
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    std::size_t a = index[find_root(parent, g.edges()[e].u)];
    std::size_t b = index[find_root(parent, g.edges()[e].v)];
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    if (!best[a][b] || w[e] < *best[a][b]) best[a][b] = w[e];
  }
  for (std::size_t a = 0; a < cv; ++a) {
    for (std::size_t b = a + 1; b < cv; ++b) {
      if (best[a][b]) out.add_edge(a, b, *best[a][b]);
    }
  }
  return suppress_auxiliary_degree_two(out);
}

}  // namespace

std::optional<Realisation> scc_perturbation_improve(const WeightedGraph& g, const FiniteMetric& m,
                                                    PointSet a, std::size_t max_paths) {
  if (!is_realisation(g, m)) {
    throw Error(ErrorCode::NotARealisation, "graph does not realise the metric");
  }
  const auto tv = terminal_vertices(g, m);
  const RatMatrix dist = all_pairs_distance(g);
  const SplitFlowDigraph d = split_flow_digraph(g, dist, a);

  std::vector<bool> has_terminal(d.scc.count, false);
  for (const auto t : g.terminals()) has_terminal[d.scc.component[t]] = true;

  std::optional<std::vector<TerminalPath>> paths;

  for (std::size_t c = 0; c < d.scc.count; ++c) {
    if (has_terminal[c]) continue;
    const auto inside = [&](std::size_t v) { return d.scc.component[v] == c; };

    std::vector<int> delta(g.edge_count(), 0);
    int total = 0;
    bool moves = false;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      const auto& ed = g.edges()[e];
      if (inside(ed.u) == inside(ed.v)) continue;
      const std::size_t in = inside(ed.u) ? ed.u : ed.v;
      const std::size_t outv = inside(ed.u) ? ed.v : ed.u;
      if (d.has_arc(outv, in)) delta[e] = 1;
      if (d.has_arc(in, outv)) delta[e] = -1;
      total += delta[e];
      moves = moves || delta[e] != 0;
    }
    if (!moves) continue;
    if (total > 0) {
      for (auto& x : delta) x = -x;
      total = -total;
    }

    std::optional<Rat> t;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      if (delta[e] < 0 && (!t || g.edges()[e].weight < *t)) t = g.edges()[e].weight;
    }
    if (!t) continue;

    if (!paths) paths = all_terminal_paths(g, tv, m, max_paths);
    Rat eps = *t;
    for (const auto& p : *paths) {
      int dp = 0;
      Rat len;
      for (const auto e : p.edges) {
        dp += delta[e];
        len += g.edges()[e].weight;
      }
      if (dp >= 0) continue;
      const Rat bound = (len - p.d) / Rat(-dp);
      if (bound < eps) eps = bound;
    }
    if (eps.sign() <= 0) continue;
    const bool zeroes = eps == *t;
    if (total == 0 && !zeroes) continue;

    std::vector<Rat> w(g.edge_count());
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      w[e] = g.edges()[e].weight + eps * Rat(delta[e]);
    }

    WeightedGraph next;
    if (zeroes) {
      next = contract_zero_edges(g, w);
    } else {
      for (const auto& v : g.vertices()) {
        if (v.terminal) {
          next.add_terminal(v.name);
        } else {
          next.add_auxiliary(v.name);
        }
      }
      for (std::size_t e = 0; e < g.edge_count(); ++e) {
        next.add_edge(g.edges()[e].u, g.edges()[e].v, w[e]);
      }
    }
    try {
      return make_realisation(std::move(next), m);
    } catch (const Error& err) {
      if (err.code() != ErrorCode::NotARealisation) throw;
      throw Error(ErrorCode::InvariantViolation, "perturbed graph no longer realises the metric");
    }
  }
  return std::nullopt;
}

}  // namespace splitspan
