#include "splitspan/tightspan.hpp"

#include <algorithm>
#include <set>

#include "splitspan/buneman.hpp"
#include "splitspan/error.hpp"

namespace splitspan {

TightPoint kuratowski(const FiniteMetric& m, std::size_t x) {
  TightPoint f(m.size());
  for (std::size_t y = 0; y < m.size(); ++y) f[y] = m(x, y);
  return f;
}

Rat d_inf(const TightPoint& f, const TightPoint& g) {
  if (f.size() != g.size()) throw Error(ErrorCode::InvalidArgument, "points of different spaces");
  Rat best;
  for (std::size_t x = 0; x < f.size(); ++x) best = max(best, abs(f[x] - g[x]));
  return best;
}

bool in_pd(const FiniteMetric& m, const TightPoint& f) {
  const std::size_t n = m.size();
  if (f.size() != n) return false;
  for (std::size_t x = 0; x < n; ++x) {
    if (f[x].sign() < 0) return false;
    for (std::size_t y = x + 1; y < n; ++y) {
      if (f[x] + f[y] < m(x, y)) return false;
    }
  }
  return true;
}

bool is_tight_point(const FiniteMetric& m, const TightPoint& f) {
  if (!in_pd(m, f)) return false;
  for (std::size_t x = 0; x < m.size(); ++x) {
    Rat best = -f[x];  // y = x term
    for (std::size_t y = 0; y < m.size(); ++y) best = max(best, m(x, y) - f[y]);
    if (best != f[x]) return false;
  }
  return true;
}

namespace {

// f(x) = sign[x] * t(root[x]) + off[x], where each root carries an optional fixed t.
struct AffineState {
  std::vector<std::size_t> root;
  std::vector<int> sign;
  std::vector<Rat> off;
  std::vector<std::optional<Rat>> fixed;

  [[nodiscard]] std::optional<Rat> value(std::size_t x) const {
    const auto& t = fixed[root[x]];
    if (!t) return std::nullopt;
    return Rat(sign[x]) * *t + off[x];
  }
};

// Imposes f(x) + f(y) = d. Returns false on inconsistency or a free even cycle.
bool impose(AffineState& st, std::size_t x, std::size_t y, const Rat& d) {
  const std::size_t rx = st.root[x];
  const std::size_t ry = st.root[y];
  const int sx = st.sign[x];
  const int sy = st.sign[y];
  const Rat rest = d - st.off[x] - st.off[y];
  if (rx == ry) {
    const int coeff = sx + sy;
    if (coeff == 0) return false;  // even cycle: never pins the component
    const Rat t = rest / Rat(coeff);
    if (st.fixed[rx] && *st.fixed[rx] != t) return false;
    st.fixed[rx] = t;
    return true;
  }
  // t_ry = sy * rest - sy * sx * t_rx
  std::optional<Rat> t_rx = st.fixed[rx];
  if (st.fixed[ry]) {
    const Rat implied = Rat(sx) * rest - Rat(sx * sy) * *st.fixed[ry];
    if (t_rx && *t_rx != implied) return false;
    t_rx = implied;
  }
  for (std::size_t z = 0; z < st.root.size(); ++z) {
    if (st.root[z] != ry) continue;
    const int sz = st.sign[z];
    st.off[z] = Rat(sz * sy) * rest + st.off[z];
    st.sign[z] = -sz * sy * sx;
    st.root[z] = rx;
  }
  st.fixed[ry].reset();
  st.fixed[rx] = t_rx;
  return true;
}

bool feasible_so_far(const FiniteMetric& m, const AffineState& st) {
  const std::size_t n = m.size();
  std::vector<std::optional<Rat>> v(n);
  for (std::size_t x = 0; x < n; ++x) {
    v[x] = st.value(x);
    if (v[x] && v[x]->sign() < 0) return false;
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (!v[x]) continue;
    for (std::size_t y = x + 1; y < n; ++y) {
      if (v[y] && *v[x] + *v[y] < m(x, y)) return false;
    }
  }
  return true;
}

void enumerate_partners(const FiniteMetric& m, std::size_t x, const AffineState& st,
                        std::set<TightPoint>& out) {
  const std::size_t n = m.size();
  if (x == n) {
    TightPoint f(n);
    for (std::size_t z = 0; z < n; ++z) {
      const auto v = st.value(z);
      if (!v) return;
      f[z] = *v;
    }
    if (is_tight_point(m, f)) out.insert(std::move(f));
    return;
  }
  for (std::size_t y = 0; y < n; ++y) {
    AffineState next = st;
    if (!impose(next, x, y, m(x, y)) || !feasible_so_far(m, next)) continue;
    enumerate_partners(m, x + 1, next, out);
  }
}

std::size_t rank_of(std::vector<std::vector<Rat>> rows, std::size_t cols) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c].is_zero()) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c].is_zero()) continue;
      const Rat factor = rows[r][c] / rows[rank][c];
      for (std::size_t k = c; k < cols; ++k) rows[r][k] -= factor * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

// Dimension of the smallest face of P(d) containing h.
std::size_t face_dimension(const FiniteMetric& m, const TightPoint& h) {
  const std::size_t n = m.size();
  std::vector<std::vector<Rat>> rows;
  for (std::size_t x = 0; x < n; ++x) {
    if (h[x].is_zero()) {
      std::vector<Rat> row(n);
      row[x] = Rat(2);
      rows.push_back(std::move(row));
    }
    for (std::size_t y = x + 1; y < n; ++y) {
      if (h[x] + h[y] == m(x, y)) {
        std::vector<Rat> row(n);
        row[x] = Rat(1);
        row[y] = Rat(1);
        rows.push_back(std::move(row));
      }
    }
  }
  return n - rank_of(std::move(rows), n);
}

void attach_kappa(const FiniteMetric& m, TightSpanGraph& g) {
  g.kappa.clear();
  for (std::size_t x = 0; x < m.size(); ++x) {
    const auto idx = g.find(kuratowski(m, x));
    if (!idx) {
      throw Error(ErrorCode::InvariantViolation,
                  "kuratowski image of " + m.label(x) + " is not a tight-span vertex", {x});
    }
    g.kappa.push_back(*idx);
  }
}

// Sorts vertices lexicographically and renumbers edges accordingly.
void normalise(TightSpanGraph& g) {
  std::vector<std::size_t> order(g.vertices.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return g.vertices[a] < g.vertices[b]; });
  std::vector<std::size_t> where(order.size());
  std::vector<TightPoint> vertices;
  for (std::size_t i = 0; i < order.size(); ++i) {
    where[order[i]] = i;
    vertices.push_back(std::move(g.vertices[order[i]]));
  }
  g.vertices = std::move(vertices);
  for (auto& e : g.edges) {
    e.u = where[e.u];
    e.v = where[e.v];
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(g.edges.begin(), g.edges.end(), [](const TightSpanEdge& a, const TightSpanEdge& b) {
    return std::pair(a.u, a.v) < std::pair(b.u, b.v);
  });
}

}  // namespace

std::vector<TightPoint> tight_span_vertices(const FiniteMetric& m, std::size_t max_points) {
  const std::size_t n = m.size();
  if (n > max_points) {
    throw Error(ErrorCode::GroundSetTooLarge,
                "direct tight-span enumeration limited to " + std::to_string(max_points) + " points");
  }
  AffineState st;
  st.root.resize(n);
  st.sign.assign(n, 1);
  st.off.assign(n, Rat(0));
  st.fixed.assign(n, std::nullopt);
  for (std::size_t x = 0; x < n; ++x) st.root[x] = x;
  std::set<TightPoint> found;
  enumerate_partners(m, 0, st, found);
  return {found.begin(), found.end()};
}

std::optional<std::size_t> TightSpanGraph::find(const TightPoint& f) const {
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i] == f) return i;
  }
  return std::nullopt;
}

TightSpanGraph tight_span_graph_via_buneman(const FiniteMetric& m, const WeightedSplitSystem& s) {
  if (!is_weakly_compatible(s) || !is_octahedral_free(s)) {
    throw Error(ErrorCode::InvalidArgument,
                "Buneman route needs a weakly compatible, octahedral-free split system");
  }
  const auto sk = buneman_skeleton(s);
  TightSpanGraph g;
  for (const auto p : sk.vertices) g.vertices.push_back(lambda_map(s, vertex_point(s, p)));
  for (const auto& e : sk.edges) {
    g.edges.push_back({e.u, e.v, d_inf(g.vertices[e.u], g.vertices[e.v])});
  }
  normalise(g);
  attach_kappa(m, g);
  return g;
}

TightSpanGraph tight_span_graph_direct(const FiniteMetric& m, std::size_t max_points) {
  TightSpanGraph g;
  g.vertices = tight_span_vertices(m, max_points);
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < g.vertices.size(); ++j) {
      TightPoint mid(n);
      for (std::size_t x = 0; x < n; ++x) mid[x] = (g.vertices[i][x] + g.vertices[j][x]) / Rat(2);
      if (is_tight_point(m, mid) && face_dimension(m, mid) == 1) {
        g.edges.push_back({i, j, d_inf(g.vertices[i], g.vertices[j])});
      }
    }
  }
  attach_kappa(m, g);
  return g;
}

TightSpanGraph tight_span_graph(const FiniteMetric& m) {
  std::optional<WeightedSplitSystem> s;
  try {
    s = decompose(m);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotTotallyDecomposable && e.code() != ErrorCode::GroundSetTooLarge) {
      throw;
    }
  }
  if (s && is_octahedral_free(*s)) return tight_span_graph_via_buneman(m, *s);
  return tight_span_graph_direct(m);
}

bool same_tight_span(const TightSpanGraph& a, const TightSpanGraph& b) {
  if (a.vertices.size() != b.vertices.size() || a.edges.size() != b.edges.size() ||
      a.kappa.size() != b.kappa.size()) {
    return false;
  }
  std::vector<std::size_t> to_b(a.vertices.size());
  for (std::size_t i = 0; i < a.vertices.size(); ++i) {
    const auto j = b.find(a.vertices[i]);
    if (!j) return false;
    to_b[i] = *j;
  }
  for (std::size_t x = 0; x < a.kappa.size(); ++x) {
    if (to_b[a.kappa[x]] != b.kappa[x]) return false;
  }
  std::set<std::pair<std::size_t, std::size_t>> edges_b;
  for (const auto& e : b.edges) edges_b.emplace(std::min(e.u, e.v), std::max(e.u, e.v));
  return std::all_of(a.edges.begin(), a.edges.end(), [&](const TightSpanEdge& e) {
    const std::size_t u = to_b[e.u];
    const std::size_t v = to_b[e.v];
    return edges_b.contains({std::min(u, v), std::max(u, v)});
  });
}

WeightedGraph to_weighted_graph(const TightSpanGraph& gd, const FiniteMetric& m) {
  std::vector<std::optional<std::size_t>> point_at(gd.vertices.size());
  for (std::size_t x = 0; x < gd.kappa.size(); ++x) point_at[gd.kappa[x]] = x;
  WeightedGraph g;
  for (std::size_t i = 0; i < gd.vertices.size(); ++i) {
    if (point_at[i]) {
      g.add_terminal(m.label(*point_at[i]));
    } else {
      g.add_auxiliary("t" + std::to_string(i));
    }
  }
  for (const auto& e : gd.edges) g.add_edge(e.u, e.v, e.weight);
  return g;
}

VertexDistanceReport check_vertex_distance_property(const FiniteMetric& m, bool strict) {
  VertexDistanceReport report;
  if (strict) {
    WeightedSplitSystem s;
    try {
      s = decompose(m);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotTotallyDecomposable) throw;
      throw Error(ErrorCode::NotTwoDecomposable, "metric is not totally decomposable", e.witness());
    }
    if (const auto t = find_incompatible_triple(s)) {
      throw Error(ErrorCode::NotTwoDecomposable,
                  "decomposition contains three pairwise incompatible splits",
                  {(*t)[0], (*t)[1], (*t)[2]});
    }
    report.graph = tight_span_graph_via_buneman(m, s);
  } else {
    report.graph = tight_span_graph(m);
  }
  const auto dist = all_pairs_distance(to_weighted_graph(report.graph, m));
  const auto& vs = report.graph.vertices;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      const Rat direct = d_inf(vs[i], vs[j]);
      if (direct != dist(i, j)) {
        report.holds = false;
        report.witness = std::pair(i, j);
        report.d_inf = direct;
        report.d_graph = dist(i, j);
        return report;
      }
    }
  }
  return report;
}

}  // namespace splitspan
