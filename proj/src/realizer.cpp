#include "splitspan/realizer.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "splitspan/error.hpp"
#include "splitspan/lp.hpp"

namespace splitspan {

Realisation make_realisation(WeightedGraph g, const FiniteMetric& m) {
  if (!is_realisation(g, m)) {
    throw Error(ErrorCode::NotARealisation, "graph does not realise the metric");
  }
  Realisation r;
  r.length = g.total_length();
  r.gamma = count_terminal_geodesics(g, all_pairs_distance(g));
  r.encoding = canonical_encoding(g);
  r.graph = std::move(g);
  return r;
}

std::string canonical_encoding(const WeightedGraph& g) {
  std::vector<std::size_t> terms = g.terminals();
  std::sort(terms.begin(), terms.end(), [&](std::size_t a, std::size_t b) {
    return g.vertex(a).name < g.vertex(b).name;
  });
  std::vector<std::size_t> aux;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (!g.is_terminal(v)) aux.push_back(v);
  }
  std::string header;
  for (const auto t : terms) header += g.vertex(t).name + ",";
  header += "+" + std::to_string(aux.size()) + ":";

  std::vector<std::size_t> rank(g.vertex_count());
  for (std::size_t i = 0; i < terms.size(); ++i) rank[terms[i]] = i;
  const auto encode = [&]() {
    std::vector<std::tuple<std::size_t, std::size_t, Rat>> es;
    for (const auto& e : g.edges()) {
      auto a = rank[e.u];
      auto b = rank[e.v];
      if (a > b) std::swap(a, b);
      es.emplace_back(a, b, e.weight);
    }
    std::sort(es.begin(), es.end());
    std::string out = header;
    for (const auto& [a, b, w] : es) {
      out += std::to_string(a) + "-" + std::to_string(b) + "=" + w.str() + ";";
    }
    return out;
  };
  // Beyond eight auxiliaries the permutation sweep is skipped and the
  // encoding depends on vertex order.
  std::optional<std::string> best;
  std::vector<std::size_t> perm(aux.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  do {
    for (std::size_t i = 0; i < aux.size(); ++i) rank[aux[i]] = terms.size() + perm[i];
    auto s = encode();
    if (!best || s < *best) best = std::move(s);
  } while (aux.size() <= 8 && std::next_permutation(perm.begin(), perm.end()));
  return *best;
}

const Realisation& select_minimal_path_saturated(const std::vector<Realisation>& candidates) {
  if (candidates.empty()) throw Error(ErrorCode::EmptyCandidates, "no candidate realisations");
  const Realisation* best = &candidates.front();
  for (const auto& r : candidates) {
    const auto key = [](const Realisation& c) {
      return std::tuple(-static_cast<std::int64_t>(c.gamma), c.graph.vertex_count(), c.encoding);
    };
    if (key(r) < key(*best)) best = &r;
  }
  return *best;
}

namespace {

using Clock = std::chrono::steady_clock;
using VertexList = std::vector<std::size_t>;

struct Cut {
  std::vector<std::size_t> edges;
  Rat rhs;
};

struct Node {
  std::size_t nv = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<int> edge_id;        // cap * cap, -1 for no edge
  std::vector<std::uint32_t> adj;  // neighbour bitmask per vertex
  std::vector<std::pair<std::size_t, VertexList>> forced;  // (pair index, path)
  std::vector<Cut> cuts;
};

struct Evaluation {
  Rat value;
  std::vector<Rat> weights;
  std::vector<std::optional<Rat>> dist;  // cap * cap
};

struct Topology {
  std::size_t nv;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

class Search {
 public:
  Search(const FiniteMetric& m, const SearchConfig& cfg)
      : m_(m), cfg_(cfg), n_(m.size()), cap_(m.size() + cfg.max_aux), start_(Clock::now()) {
    for (std::size_t x = 0; x < n_; ++x) {
      for (std::size_t y = x + 1; y < n_; ++y) pairs_.emplace_back(x, y);
    }
  }

  RealisationSet run() {
    best_ = initial_upper_bound();
    Node root;
    root.nv = n_;
    root.edge_id.assign(cap_ * cap_, -1);
    root.adj.assign(cap_, 0);
    explore(root);

    RealisationSet out;
    out.exhaustive = !budget_hit_;
    out.nodes = nodes_;
    out.optimum = best_;
    std::map<std::string, Realisation> unique;
    for (const auto& [key, leaf] : leaves_) {
      if (leaf.second != best_) continue;
      for (auto& r : realise_topology(leaf.first)) {
        unique.try_emplace(r.encoding, std::move(r));
      }
    }
    for (auto& [enc, r] : unique) out.optima.push_back(std::move(r));

    return out;
  }

 private:
  [[nodiscard]] const Rat& d(std::size_t x, std::size_t y) const { return m_(x, y); }

  Rat initial_upper_bound() const {
    Rat total;
    for (const auto& [x, y] : pairs_) {
      bool between = false;
      for (std::size_t z = 0; z < n_ && !between; ++z) {
        between = z != x && z != y && d(x, z) + d(z, y) == d(x, y);
      }
      if (!between) total += d(x, y);
    }
    if (cfg_.upper_bound_hint && is_realisation(*cfg_.upper_bound_hint, m_)) {
      const WeightedGraph h = suppress_auxiliary_degree_two(*cfg_.upper_bound_hint);
      bool degree_ok = true;
      if (cfg_.max_degree > 0) {
        for (std::size_t v = 0; v < h.vertex_count(); ++v) degree_ok &= h.degree(v) <= cfg_.max_degree;
      }
      if (h.auxiliary_count() <= cfg_.max_aux && degree_ok) total = min(total, h.total_length());
    }
    return total;
  }

  bool out_of_budget() {
    if (budget_hit_) return true;
    if (cfg_.node_budget && nodes_ >= *cfg_.node_budget) budget_hit_ = true;
    if (cfg_.time_budget && ((nodes_ + evaluations_) & 63U) == 0 &&
        Clock::now() - start_ > *cfg_.time_budget) {
      budget_hit_ = true;
    }
    return budget_hit_;
  }

  std::vector<Rat> path_coeffs(const Node& node, const std::vector<std::size_t>& edges) const {
    std::vector<Rat> c(node.edges.size());
    for (const auto e : edges) c[e] += Rat(1);
    return c;
  }

  std::vector<std::size_t> path_edges(const Node& node, const VertexList& path) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 1; i < path.size(); ++i) {
      out.push_back(static_cast<std::size_t>(node.edge_id[path[i - 1] * cap_ + path[i]]));
    }
    return out;
  }

  LinearProgram node_lp(const Node& node) const {
    const std::size_t e_count = node.edges.size();
    LinearProgram lp;
    lp.variables = e_count;
    lp.objective.assign(e_count, Rat(1));
    for (const auto& [p, path] : node.forced) {
      lp.add(path_coeffs(node, path_edges(node, path)), Relation::Equal,
             d(pairs_[p].first, pairs_[p].second));
    }
    for (const auto& cut : node.cuts) lp.add(path_coeffs(node, cut.edges), Relation::GreaterEqual, cut.rhs);
    return lp;
  }

  enum class Verdict { Viable, Hopeless, Unknown };

  // Floating-point screening of a node against the incumbent. Hopeless is
  // only returned with an exactly verified dual certificate.
  Verdict screen(Node& node) const {
    const std::size_t e_count = node.edges.size();
    while (true) {
      const LinearProgram lp = node_lp(node);
      const FloatLpResult res = solve_lp_float(lp);
      if (res.status == LpStatus::Unbounded) return Verdict::Unknown;
      if (res.status == LpStatus::Optimal) {
        std::vector<double> dist(cap_ * cap_, std::numeric_limits<double>::infinity());
        std::vector<int> next(cap_ * cap_, -1);
        for (std::size_t v = 0; v < node.nv; ++v) {
          dist[v * cap_ + v] = 0;
          next[v * cap_ + v] = static_cast<int>(v);
        }
        for (std::size_t e = 0; e < e_count; ++e) {
          const auto [u, v] = node.edges[e];
          dist[u * cap_ + v] = dist[v * cap_ + u] = std::max(res.x[e], 0.0);
          next[u * cap_ + v] = static_cast<int>(v);
          next[v * cap_ + u] = static_cast<int>(u);
        }
        for (std::size_t k = 0; k < node.nv; ++k) {
          for (std::size_t i = 0; i < node.nv; ++i) {
            for (std::size_t j = 0; j < node.nv; ++j) {
              const double via = dist[i * cap_ + k] + dist[k * cap_ + j];
              if (via < dist[i * cap_ + j]) {
                dist[i * cap_ + j] = via;
                next[i * cap_ + j] = next[i * cap_ + k];
              }
            }
          }
        }
        bool added = false;
        for (const auto& [x, y] : pairs_) {
          if (!(dist[x * cap_ + y] < d(x, y).approx() - 1e-7)) continue;
          VertexList path{x};
          while (path.back() != y) path.push_back(static_cast<std::size_t>(next[path.back() * cap_ + y]));
          node.cuts.push_back({path_edges(node, path), d(x, y)});
          added = true;
        }
        if (added) continue;
        if (res.value <= best_.approx() + 1e-7) return Verdict::Viable;
      }
      try {
        std::vector<Rat> y;
        y.reserve(res.duals.size());
        for (const double v : res.duals) y.push_back(rationalize(v));
        const bool feasible = res.status == LpStatus::Optimal;
        const Rat bound = certified_bound(lp, std::move(y), best_, feasible);
        if (feasible ? bound > best_ : bound.sign() > 0) return Verdict::Hopeless;
      } catch (const RationalOverflow&) {
      }
      return Verdict::Unknown;
    }
  }

  // Maximises the least edge weight under the node constraints with total
  // weight at most the incumbent.
  LinearProgram positivity_lp(const Node& node) const {
    const std::size_t e_count = node.edges.size();
    LinearProgram lp = node_lp(node);
    lp.variables = e_count + 1;
    lp.objective.assign(e_count + 1, Rat(0));
    lp.objective[e_count] = Rat(-1);
    for (auto& c : lp.constraints) c.coeffs.emplace_back(0);
    lp.add(std::vector<Rat>(e_count, Rat(1)), Relation::LessEqual, best_);
    lp.constraints.back().coeffs.emplace_back(0);
    for (std::size_t e = 0; e < e_count; ++e) {
      std::vector<Rat> row(e_count + 1);
      row[e] = Rat(1);
      row[e_count] = Rat(-1);
      lp.add(std::move(row), Relation::GreaterEqual, Rat(0));
    }
    return lp;
  }

  bool admits_positive_weights(const Node& node) const {
    if (node.edges.empty()) return true;
    const LpResult res = solve_lp(positivity_lp(node));
    return res.status == LpStatus::Optimal && res.value.sign() < 0;
  }

  Verdict screen_positivity(const Node& node) const {
    if (node.edges.empty()) return Verdict::Viable;
    const LinearProgram lp = positivity_lp(node);
    const FloatLpResult res = solve_lp_float(lp);
    if (res.status == LpStatus::Optimal && res.value < -1e-7) return Verdict::Viable;
    if (res.status == LpStatus::Unbounded) return Verdict::Unknown;
    try {
      std::vector<Rat> y;
      y.reserve(res.duals.size());
      for (const double v : res.duals) y.push_back(rationalize(v));
      const bool feasible = res.status == LpStatus::Optimal;
      const Rat bound = certified_bound(lp, std::move(y), best_ + best_, feasible);
      if (bound.sign() >= 0 && (feasible || bound.sign() > 0)) return Verdict::Hopeless;
    } catch (const RationalOverflow&) {
    }
    return Verdict::Unknown;
  }

  std::optional<Evaluation> evaluate(Node& node) const {
    const std::size_t e_count = node.edges.size();
    while (true) {
      const LinearProgram lp = node_lp(node);
      LpResult res = solve_lp(lp);
      if (res.status != LpStatus::Optimal) return std::nullopt;

      // Floyd-Warshall on the current weights.
      const std::size_t nv = node.nv;
      std::vector<std::optional<Rat>> dist(cap_ * cap_);
      std::vector<int> next(cap_ * cap_, -1);
      for (std::size_t v = 0; v < nv; ++v) {
        dist[v * cap_ + v] = Rat(0);
        next[v * cap_ + v] = static_cast<int>(v);
      }
      for (std::size_t e = 0; e < e_count; ++e) {
        const auto [u, v] = node.edges[e];
        dist[u * cap_ + v] = res.x[e];
        dist[v * cap_ + u] = res.x[e];
        next[u * cap_ + v] = static_cast<int>(v);
        next[v * cap_ + u] = static_cast<int>(u);
      }
      for (std::size_t k = 0; k < nv; ++k) {
        for (std::size_t i = 0; i < nv; ++i) {
          if (!dist[i * cap_ + k]) continue;
          for (std::size_t j = 0; j < nv; ++j) {
            if (!dist[k * cap_ + j]) continue;
            const Rat via = *dist[i * cap_ + k] + *dist[k * cap_ + j];
            if (!dist[i * cap_ + j] || via < *dist[i * cap_ + j]) {
              dist[i * cap_ + j] = via;
              next[i * cap_ + j] = next[i * cap_ + k];
            }
          }
        }
      }
      bool added = false;
      for (const auto& [x, y] : pairs_) {
        const auto& dxy = dist[x * cap_ + y];
        if (!dxy || *dxy >= d(x, y)) continue;
        VertexList path{x};
        while (path.back() != y) path.push_back(static_cast<std::size_t>(next[path.back() * cap_ + y]));
        node.cuts.push_back({path_edges(node, path), d(x, y)});
        added = true;
      }
      if (!added) return Evaluation{res.value, std::move(res.x), std::move(dist)};
    }
  }

  // Candidate forced paths for a pair. A path runs through existing
  // vertices, along existing edges or over new edges, and may leave an
  // existing edge at an interior point; that point becomes a new auxiliary
  // vertex of degree three. Auxiliaries are never created anywhere else.
  struct Walk {
    Node work;
    VertexList path;
    std::uint32_t visited = 0;
    std::size_t last_terminal = 0;
    Rat along;  // d along the terminal chain up to last_terminal
    bool must_branch = false;
  };

  static void link(Node& node, std::size_t cap, std::size_t a, std::size_t b) {
    const int id = static_cast<int>(node.edges.size());
    node.edges.emplace_back(std::min(a, b), std::max(a, b));
    node.edge_id[a * cap + b] = id;
    node.edge_id[b * cap + a] = id;
    node.adj[a] |= std::uint32_t{1} << b;
    node.adj[b] |= std::uint32_t{1} << a;
  }

  // Inserts a new auxiliary vertex into edge ab, rewriting forced paths.
  std::size_t subdivide(Node& node, std::size_t a, std::size_t b) const {
    const std::size_t p = node.nv++;
    const int id = node.edge_id[a * cap_ + b];
    node.edge_id[a * cap_ + b] = -1;
    node.edge_id[b * cap_ + a] = -1;
    node.adj[a] &= ~(std::uint32_t{1} << b);
    node.adj[b] &= ~(std::uint32_t{1} << a);
    node.edges[static_cast<std::size_t>(id)] = {std::min(a, p), std::max(a, p)};
    node.edge_id[a * cap_ + p] = id;
    node.edge_id[p * cap_ + a] = id;
    node.adj[a] |= std::uint32_t{1} << p;
    node.adj[p] |= std::uint32_t{1} << a;
    link(node, cap_, p, b);
    const std::size_t tail = node.edges.size() - 1;
    for (auto& cut : node.cuts) {
      if (std::find(cut.edges.begin(), cut.edges.end(), static_cast<std::size_t>(id)) != cut.edges.end()) {
        cut.edges.push_back(tail);
      }
    }
    for (auto& [pair, path] : node.forced) {
      for (std::size_t i = 1; i < path.size(); ++i) {
        if ((path[i - 1] == a && path[i] == b) || (path[i - 1] == b && path[i] == a)) {
          path.insert(path.begin() + static_cast<std::ptrdiff_t>(i), p);
          break;
        }
      }
    }
    return p;
  }

  [[nodiscard]] bool degree_full(const Node& node, std::size_t v) const {
    return cfg_.max_degree > 0 &&
           static_cast<std::size_t>(__builtin_popcount(node.adj[v])) >= cfg_.max_degree;
  }

  static bool on_walk(const VertexList& path, std::size_t a, std::size_t b) {
    for (std::size_t i = 1; i < path.size(); ++i) {
      if ((path[i - 1] == a && path[i] == b) || (path[i - 1] == b && path[i] == a)) return true;
    }
    return false;
  }

  void extend_walk(const Walk& w, std::size_t pair, std::vector<Node>& out) const {
    const auto [x, y] = pairs_[pair];
    const std::size_t cur = w.path.back();
    const Node& h = w.work;

    const auto step = [&](std::size_t v, bool fresh_edge) {
      Walk next = w;
      if (fresh_edge) link(next.work, cap_, cur, v);
      next.path.push_back(v);
      next.visited |= std::uint32_t{1} << v;
      next.must_branch = false;
      if (v == y) {
        next.work.forced.emplace_back(pair, std::move(next.path));
        out.push_back(std::move(next.work));
        return;
      }
      if (v < n_) {
        next.along += d(w.last_terminal, v);
        next.last_terminal = v;
      }
      extend_walk(next, pair, out);
    };
    const auto admissible = [&](std::size_t v) {
      if ((w.visited >> v) & 1U) return false;
      if (v == y) return w.along + d(w.last_terminal, y) == d(x, y);
      if (v < n_) return w.along + d(w.last_terminal, v) + d(v, y) == d(x, y);
      return true;
    };

    for (std::size_t v = 0; v < h.nv; ++v) {
      if (v == cur || !admissible(v)) continue;
      const bool adjacent = ((h.adj[cur] >> v) & 1U) != 0;
      if (adjacent) {
        if (!w.must_branch) step(v, false);
      } else if (!degree_full(h, cur) && !degree_full(h, v)) {
        step(v, true);
      }
    }

    if (h.nv >= cap_) return;
    for (std::size_t e = 0; e < h.edges.size(); ++e) {
      const auto [a, b] = h.edges[e];
      if (on_walk(w.path, a, b)) continue;
      const bool incident = cur == a || cur == b;
      if (incident && w.must_branch) continue;
      if (!incident && degree_full(h, cur)) continue;
      Walk next = w;
      const std::size_t p = subdivide(next.work, a, b);
      if (!incident) link(next.work, cap_, cur, p);
      next.path.push_back(p);
      next.visited |= std::uint32_t{1} << p;
      next.must_branch = incident;
      extend_walk(next, pair, out);
    }
  }

  std::vector<Node> enumerate_children(const Node& node, std::size_t pair) const {
    Walk w;
    w.work = node;
    w.path = {pairs_[pair].first};
    w.visited = std::uint32_t{1} << pairs_[pair].first;
    w.last_terminal = pairs_[pair].first;
    std::vector<Node> out;
    extend_walk(w, pair, out);
    return out;
  }

  std::string state_key(const Node& node) const {
    std::vector<std::pair<std::size_t, std::size_t>> es = node.edges;
    std::sort(es.begin(), es.end());
    auto fs = node.forced;
    std::sort(fs.begin(), fs.end());
    std::ostringstream key;
    key << node.nv << '|';
    for (const auto& [a, b] : es) key << a << ',' << b << ';';
    key << '|';
    for (const auto& [p, path] : fs) {
      key << p << ':';
      for (const auto v : path) key << v << ',';
      key << ';';
    }
    return key.str();
  }

  static std::string topology_key(const Node& node) {
    std::vector<std::pair<std::size_t, std::size_t>> es = node.edges;
    std::sort(es.begin(), es.end());
    std::string key = std::to_string(node.nv) + "|";
    for (const auto& [a, b] : es) key += std::to_string(a) + "," + std::to_string(b) + ";";
    return key;
  }

  void explore(Node& node) {
    if (out_of_budget()) return;
    ++nodes_;
    if (!seen_.insert(state_key(node)).second) return;
    const auto ev = evaluate(node);
    if (!ev || ev->value > best_ || !admits_positive_weights(node)) return;

    std::vector<std::size_t> violated;
    for (std::size_t p = 0; p < pairs_.size(); ++p) {
      const auto [x, y] = pairs_[p];
      const auto& dxy = ev->dist[x * cap_ + y];
      if (!dxy || *dxy != d(x, y)) violated.push_back(p);
    }
    if (violated.empty()) {
      if (ev->value < best_) best_ = ev->value;
      if (!has_thin_auxiliary(node)) {
        leaves_.try_emplace(topology_key(node),
                            std::pair(Topology{node.nv, node.edges}, ev->value));
        auto& slot = leaves_[topology_key(node)];
        slot.second = min(slot.second, ev->value);
      }
      return;
    }

    // Branch on the pair with the fewest children that survive their own
    // bound; a pair with none closes the node.
    std::optional<std::size_t> chosen;
    std::vector<Node> children;
    std::vector<std::pair<std::size_t, std::vector<Node>>> raw;
    for (const auto p : violated) raw.emplace_back(p, enumerate_children(node, p));
    std::stable_sort(raw.begin(), raw.end(),
                     [](const auto& a, const auto& b) { return a.second.size() < b.second.size(); });
    for (auto& [p, kids] : raw) {
      std::vector<Node> viable;
      for (auto& c : kids) {
        if (out_of_budget()) return;
        if (viable_child(c)) viable.push_back(std::move(c));
        if (chosen && viable.size() >= children.size()) break;
      }
      if (!chosen || viable.size() < children.size()) {
        chosen = p;
        children = std::move(viable);
        if (children.size() <= 1) break;
      }
    }
    for (auto& c : children) {
      explore(c);
      if (budget_hit_) return;
    }
  }

  bool viable_child(Node& c) {
    const std::string key = state_key(c);
    if (const auto it = verdicts_.find(key); it != verdicts_.end()) {
      return it->second && *it->second <= best_;
    }
    ++evaluations_;
    Verdict v = screen(c);
    if (v == Verdict::Viable) {
      v = screen_positivity(c);
      if (v == Verdict::Viable) return true;
      if (v == Verdict::Unknown) {
        const bool ok = admits_positive_weights(c);
        if (!ok) verdicts_.emplace(key, std::nullopt);
        return ok;
      }
    }
    if (v == Verdict::Hopeless) {
      verdicts_.emplace(key, std::nullopt);
      return false;
    }
    const auto ev = evaluate(c);
    verdicts_.emplace(key, ev ? std::optional<Rat>(ev->value) : std::nullopt);
    return ev && ev->value <= best_;
  }

  bool has_thin_auxiliary(const Node& node) const {
    for (std::size_t v = n_; v < node.nv; ++v) {
      if (__builtin_popcount(node.adj[v]) < 3) return true;
    }
    return false;
  }

  // ---- weights on a fixed optimal topology ----

  struct FacePath {
    std::size_t pair;
    std::vector<std::size_t> edges;
  };

  std::vector<FacePath> terminal_paths(const Topology& t) const {
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(t.nv);
    for (std::size_t e = 0; e < t.edges.size(); ++e) {
      adj[t.edges[e].first].emplace_back(t.edges[e].second, e);
      adj[t.edges[e].second].emplace_back(t.edges[e].first, e);
    }
    std::vector<FacePath> out;
    for (std::size_t p = 0; p < pairs_.size(); ++p) {
      const auto [x, y] = pairs_[p];
      std::vector<std::size_t> stack_edges;
      std::vector<bool> on(t.nv, false);
      on[x] = true;
      const auto dfs = [&](auto&& self, std::size_t v) -> void {
        if (v == y) {
          out.push_back({p, stack_edges});
          return;
        }
        for (const auto& [u, e] : adj[v]) {
          if (on[u]) continue;
          on[u] = true;
          stack_edges.push_back(e);
          self(self, u);
          stack_edges.pop_back();
          on[u] = false;
        }
      };
      dfs(dfs, x);
    }
    return out;
  }

  struct FaceSolution {
    Rat slack;  // minimum edge weight
    std::vector<Rat> weights;
  };

  // Maximises the minimum edge weight among optimal weightings of the
  // topology in which every path of `tight` has length exactly d.
  std::optional<FaceSolution> solve_face(const Topology& t, const std::vector<FacePath>& paths,
                                         const std::vector<std::size_t>& tight,
                                         std::vector<std::size_t>& cuts) const {
    const std::size_t e_count = t.edges.size();
    const auto coeffs = [&](const FacePath& fp) {
      std::vector<Rat> c(e_count + 1);
      for (const auto e : fp.edges) c[e] += Rat(1);
      return c;
    };
    while (true) {
      LinearProgram lp;
      lp.variables = e_count + 1;
      lp.objective.assign(e_count + 1, Rat(0));
      lp.objective[e_count] = Rat(-1);
      std::vector<Rat> total(e_count + 1, Rat(1));
      total[e_count] = Rat(0);
      lp.add(total, Relation::Equal, best_);
      for (std::size_t e = 0; e < e_count; ++e) {
        std::vector<Rat> row(e_count + 1);
        row[e] = Rat(1);
        row[e_count] = Rat(-1);
        lp.add(row, Relation::GreaterEqual, Rat(0));
      }
      for (const auto i : tight) {
        lp.add(coeffs(paths[i]), Relation::Equal, d(pairs_[paths[i].pair].first, pairs_[paths[i].pair].second));
      }
      for (const auto i : cuts) {
        lp.add(coeffs(paths[i]), Relation::GreaterEqual,
               d(pairs_[paths[i].pair].first, pairs_[paths[i].pair].second));
      }
      const LpResult res = solve_lp(lp);
      if (res.status != LpStatus::Optimal) return std::nullopt;
      bool added = false;
      for (std::size_t i = 0; i < paths.size(); ++i) {
        Rat len;
        for (const auto e : paths[i].edges) len += res.x[e];
        if (len < d(pairs_[paths[i].pair].first, pairs_[paths[i].pair].second)) {
          cuts.push_back(i);
          added = true;
        }
      }
      if (!added) {
        return FaceSolution{res.x[e_count],
                            std::vector<Rat>(res.x.begin(), res.x.begin() + static_cast<std::ptrdiff_t>(e_count))};
      }
    }
  }

  std::vector<Realisation> realise_topology(const Topology& t) const {
    const auto paths = terminal_paths(t);
    std::vector<std::size_t> cuts;
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < paths.size(); ++i) {
      const auto sol = solve_face(t, paths, {i}, cuts);
      if (sol && sol->slack.sign() > 0) candidates.push_back(i);
    }
    const auto tight_set = [&](const std::vector<Rat>& w) {
      std::vector<std::size_t> out;
      for (std::size_t i = 0; i < paths.size(); ++i) {
        Rat len;
        for (const auto e : paths[i].edges) len += w[e];
        if (len == d(pairs_[paths[i].pair].first, pairs_[paths[i].pair].second)) out.push_back(i);
      }
      return out;
    };

    std::size_t best_count = 0;
    std::vector<std::vector<Rat>> best_weights;
    std::vector<std::size_t> forced;
    const auto dfs = [&](auto&& self, std::size_t i) -> void {
      if (forced.size() + (candidates.size() - i) < best_count) return;
      if (i == candidates.size()) {
        std::vector<bool> covered(pairs_.size(), false);
        for (const auto f : forced) covered[paths[f].pair] = true;
        if (std::find(covered.begin(), covered.end(), false) != covered.end()) return;
        const auto sol = solve_face(t, paths, forced, cuts);
        if (!sol || sol->slack.sign() <= 0) return;
        const std::size_t count = tight_set(sol->weights).size();
        if (count > best_count) {
          best_count = count;
          best_weights.clear();
        }
        if (count == best_count) best_weights.push_back(sol->weights);
        return;
      }
      forced.push_back(candidates[i]);
      const auto sol = solve_face(t, paths, forced, cuts);
      if (sol && sol->slack.sign() > 0) self(self, i + 1);
      forced.pop_back();
      self(self, i + 1);
    };
    dfs(dfs, 0);

    std::vector<Realisation> out;
    for (const auto& w : best_weights) {
      WeightedGraph g;
      for (std::size_t x = 0; x < n_; ++x) g.add_terminal(m_.label(x));
      for (std::size_t a = n_; a < t.nv; ++a) g.add_auxiliary("a" + std::to_string(a - n_ + 1));
      for (std::size_t e = 0; e < t.edges.size(); ++e) g.add_edge(t.edges[e].first, t.edges[e].second, w[e]);
      Realisation r = make_realisation(std::move(g), m_);
      if (r.gamma != best_count || r.length != best_) {
        throw Error(ErrorCode::InvariantViolation, "face representative disagrees with its tight set");
      }
      out.push_back(std::move(r));
    }
    return out;
  }

  const FiniteMetric& m_;
  const SearchConfig& cfg_;
  std::size_t n_;
  std::size_t cap_;
  Clock::time_point start_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
  Rat best_;
  std::uint64_t nodes_ = 0;
  bool budget_hit_ = false;
  std::unordered_set<std::string> seen_;
  std::unordered_map<std::string, std::optional<Rat>> verdicts_;
  std::uint64_t evaluations_ = 0;
  std::map<std::string, std::pair<Topology, Rat>> leaves_;
};

}  // namespace

RealisationSet optimal_realisations(const FiniteMetric& m, const SearchConfig& cfg) {
  if (m.size() > cfg.max_points) {
    throw Error(ErrorCode::GroundSetTooLarge,
                "exact search limited to " + std::to_string(cfg.max_points) + " points");
  }
  if (m.size() + cfg.max_aux > 31) {
    throw Error(ErrorCode::InvalidArgument, "too many vertices for the exact search");
  }
  return Search(m, cfg).run();
}

}  // namespace splitspan
