#include "splitspan/embedder.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>

#include "splitspan/error.hpp"

namespace splitspan {

std::vector<TightPoint> psi(const WeightedGraph& g, const FiniteMetric& m, bool check_injective) {
  const auto tv = terminal_vertices(g, m);
  const RatMatrix dist = all_pairs_distance(g);
  std::vector<TightPoint> images(g.vertex_count(), TightPoint(m.size()));
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    for (std::size_t x = 0; x < m.size(); ++x) images[v][x] = dist(v, tv[x]);
    if (!is_tight_point(m, images[v])) {
      throw Error(ErrorCode::NotInTightSpan,
                  "vertex " + g.vertex(v).name + " is not mapped into the tight span", {v});
    }
  }
  for (const auto& e : g.edges()) {
    if (d_inf(images[e.u], images[e.v]) > e.weight) {
      throw Error(ErrorCode::InvariantViolation, "psi expands an edge", {e.u, e.v});
    }
  }
  if (check_injective) {
    std::map<TightPoint, std::size_t> seen;
    for (std::size_t v = 0; v < images.size(); ++v) {
      const auto [it, fresh] = seen.emplace(images[v], v);
      if (!fresh) {
        throw Error(ErrorCode::InvariantViolation, "psi is not injective", {it->second, v});
      }
    }
  }
  return images;
}

namespace {

std::map<TightPoint, SignPattern> lambda_of_vertices(const WeightedSplitSystem& s) {
  std::map<TightPoint, SignPattern> table;
  for (const auto p : buneman_vertices(s)) table.emplace(lambda_map(s, vertex_point(s, p)), p);
  return table;
}

}  // namespace

std::vector<BunemanPoint> psi_prime(const std::vector<TightPoint>& images,
                                    const WeightedSplitSystem& s) {
  const auto table = lambda_of_vertices(s);
  std::vector<BunemanPoint> out;
  out.reserve(images.size());
  for (std::size_t v = 0; v < images.size(); ++v) {
    const auto it = table.find(images[v]);
    if (it == table.end()) {
      throw Error(ErrorCode::NoPreimage, "image of vertex " + std::to_string(v) +
                                             " is not Lambda of a Buneman vertex",
                  {v});
    }
    out.push_back(vertex_point(s, it->second));
  }
  return out;
}

bool check_vertices_map_to_vertices(const WeightedGraph& g, const FiniteMetric& m,
                                    const WeightedSplitSystem& s) {
  const auto table = lambda_of_vertices(s);
  const auto images = psi(g, m);
  return std::all_of(images.begin(), images.end(),
                     [&](const TightPoint& f) { return table.contains(f); });
}

std::vector<Rat> side_potential(const WeightedSplitSystem& s,
                                const std::vector<BunemanPoint>& images, SideIndex side) {
  std::vector<Rat> values;
  values.reserve(images.size());
  for (const auto& mu : images) values.push_back(lambda_A(s, mu, side));
  return values;
}

namespace {

bool meets_only_at_shared_ends(const VertexPath& p, const VertexPath& q) {
  const std::set<std::size_t> ends_p{p.front(), p.back()};
  const std::set<std::size_t> ends_q{q.front(), q.back()};
  const std::set<std::size_t> in_q(q.begin(), q.end());
  for (const auto v : p) {
    if (in_q.contains(v) && !(ends_p.contains(v) && ends_q.contains(v))) return false;
  }
  return true;
}

class Router {
 public:
  Router(const std::vector<std::vector<VertexPath>>& candidates, std::size_t max_steps)
      : candidates_(candidates), max_steps_(max_steps), chosen_(candidates.size()) {}

  bool run(std::size_t e = 0) {
    if (e == candidates_.size()) return true;
    for (const auto& p : candidates_[e]) {
      if (++steps_ > max_steps_) {
        throw Error(ErrorCode::BudgetExceeded, "path routing budget exhausted");
      }
      bool ok = true;
      for (std::size_t f = 0; f < e && ok; ++f) ok = meets_only_at_shared_ends(p, chosen_[f]);
      if (!ok) continue;
      chosen_[e] = p;
      if (run(e + 1)) return true;
    }
    return false;
  }

  [[nodiscard]] const std::vector<VertexPath>& chosen() const { return chosen_; }

 private:
  const std::vector<std::vector<VertexPath>>& candidates_;
  std::size_t max_steps_;
  std::size_t steps_ = 0;
  std::vector<VertexPath> chosen_;
};

}  // namespace

EmbeddingCertificate build_g_star(const WeightedGraph& g, const FiniteMetric& m,
                                  const TightSpanGraph& gd, std::size_t max_steps) {
  EmbeddingCertificate cert;
  cert.psi_images = psi(g, m);
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const auto idx = gd.find(cert.psi_images[v]);
    if (!idx) {
      throw Error(ErrorCode::NoPreimage,
                  "image of vertex " + g.vertex(v).name + " is not a vertex of G_d", {v});
    }
    cert.psi_vertex.push_back(*idx);
  }

  const WeightedGraph gdg = to_weighted_graph(gd, m);
  const RatMatrix gdist = all_pairs_distance(gdg);
  const RatMatrix dist = all_pairs_distance(g);

  std::vector<std::vector<VertexPath>> candidates;
  for (const auto& e : g.edges()) {
    const std::size_t a = cert.psi_vertex[e.u];
    const std::size_t b = cert.psi_vertex[e.v];
    if (a == b || gdist(a, b) != dist(e.u, e.v)) {
      throw Error(ErrorCode::InvariantViolation,
                  "G_d distance of the images differs from the edge's endpoint distance",
                  {e.u, e.v});
    }
    auto paths = enumerate_shortest_paths(gdg, gdist, {std::min(a, b), std::max(a, b)});
    if (a > b) {
      for (auto& p : paths) std::reverse(p.begin(), p.end());
    }
    candidates.push_back(std::move(paths));
  }

  Router router(candidates, max_steps);
  if (!router.run()) {
    throw Error(ErrorCode::NoValidPathSystem, "no shortest-path routing meets the disjointness condition");
  }
  cert.chosen_paths = router.chosen();

  std::set<std::size_t> used;
  std::set<std::pair<std::size_t, std::size_t>> star_edges;
  for (const auto& p : cert.chosen_paths) {
    used.insert(p.begin(), p.end());
    for (std::size_t k = 1; k < p.size(); ++k) {
      star_edges.emplace(std::min(p[k - 1], p[k]), std::max(p[k - 1], p[k]));
    }
  }
  std::map<std::size_t, std::size_t> star_index;
  for (const auto v : used) {
    const auto& vx = gdg.vertex(v);
    star_index[v] = vx.terminal ? cert.g_star.add_terminal(vx.name) : cert.g_star.add_auxiliary(vx.name);
    cert.g_star_origin.push_back(v);
  }
  for (const auto& [a, b] : star_edges) {
    cert.g_star.add_edge(star_index.at(a), star_index.at(b), gdg.edges()[*gdg.edge_between(a, b)].weight);
  }

  if (cert.g_star.total_length() > g.total_length()) {
    throw Error(ErrorCode::InvariantViolation, "G* is longer than the realisation");
  }
  if (!is_realisation(cert.g_star, m)) {
    throw Error(ErrorCode::InvariantViolation, "G* does not realise the metric");
  }

  std::vector<bool> keep(cert.g_star.vertex_count(), false);
  for (const auto v : cert.psi_vertex) keep[star_index.at(v)] = true;
  cert.suppressed = suppress_degree_two(cert.g_star, keep).graph;
  auto witness = weighted_isomorphic(cert.suppressed, g);
  if (!witness) {
    throw Error(ErrorCode::InvariantViolation, "suppressed G* is not isomorphic to the realisation");
  }
  cert.witness = std::move(*witness);
  return cert;
}

namespace {

template <typename F>
auto stage(const std::string& name, std::vector<std::string>& trace, F&& body) {
  try {
    auto result = body();
    trace.push_back(name + ": ok");
    return result;
  } catch (const Error& e) {
    throw Error(e.code(), "[" + name + "] " + e.what(), e.witness());
  }
}

}  // namespace

TheoremCertificate certify_theorem(const FiniteMetric& m, const SearchConfig& cfg) {
  TheoremCertificate cert;
  auto& trace = cert.trace;

  cert.system = stage("decompose", trace, [&] { return decompose(m); });
  stage("two-compatibility", trace, [&] {
    if (const auto triple = find_incompatible_triple(cert.system)) {
      throw Error(ErrorCode::NotTwoDecomposable, "three pairwise incompatible splits",
                  {(*triple)[0], (*triple)[1], (*triple)[2]});
    }
    return true;
  });
  cert.gd = stage("tight span", trace, [&] { return tight_span_graph_via_buneman(m, cert.system); });
  cert.optima = stage("optimal realisations", trace, [&] {
    auto set = optimal_realisations(m, cfg);
    if (!set.exhaustive) throw Error(ErrorCode::BudgetExceeded, "realisation search budget exhausted");
    return set;
  });
  cert.selected = stage("selection", trace, [&] { return select_minimal_path_saturated(cert.optima.optima); });
  const WeightedGraph& g = cert.selected.graph;
  auto images = stage("psi", trace, [&] { return psi(g, m, true); });
  auto primes = stage("psi'", trace, [&] { return psi_prime(images, cert.system); });
  stage("vertex images", trace, [&] {
    for (std::size_t v = 0; v < primes.size(); ++v) {
      if (!pattern_of(cert.system, primes[v]) || !in_buneman(cert.system, primes[v])) {
        throw Error(ErrorCode::InvariantViolation, "psi' of a vertex is not a Buneman vertex", {v});
      }
    }
    return true;
  });
  cert.embedding = stage("G*", trace, [&] { return build_g_star(g, m, cert.gd); });
  cert.embedding.psi_prime_images = std::move(primes);
  return cert;
}

}  // namespace splitspan
