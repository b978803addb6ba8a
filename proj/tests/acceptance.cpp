#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "splitspan/buneman.hpp"
#include "splitspan/corpus.hpp"
#include "splitspan/embedder.hpp"
#include "splitspan/error.hpp"
#include "splitspan/io.hpp"
#include "splitspan/realizer.hpp"
#include "splitspan/splitflow.hpp"
#include "splitspan/tightspan.hpp"

using namespace splitspan;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void fail(const std::string& why) {
    pass = false;
    if (notes.size() < 5) notes.push_back(why);
  }
};

int failures = 0;

void report(int number, const std::string& title, const Outcome& o, const std::string& summary) {
  std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << number << ": " << title << " (" << summary << ")\n";
  for (const auto& n : o.notes) std::cout << "        " << n << '\n';
  if (!o.pass) ++failures;
}

std::string fmt_seconds(double s) {
  std::ostringstream out;
  out.precision(2);
  out << std::fixed << s << " s";
  return out.str();
}

// --- criterion 1 -----------------------------------------------------------

void cube_example() {
  Outcome o;
  const auto start = Clock::now();
  const auto s = cube_system();
  const auto m = split_metric(s);
  const auto k = buneman_skeleton(s);
  if (k.vertices.size() != 8) o.fail("Buneman vertices: " + std::to_string(k.vertices.size()));
  if (k.edges.size() != 12) o.fail("Buneman edges: " + std::to_string(k.edges.size()));
  for (const auto& e : k.edges) {
    const auto mu = vertex_point(s, k.vertices[e.u]);
    const auto nu = vertex_point(s, k.vertices[e.v]);
    if (d1(mu, nu) != Rat(1)) o.fail("edge of length " + d1(mu, nu).str());
  }

  std::set<BunemanPoint> terminals;
  for (std::size_t x = 0; x < s.ground_size(); ++x) terminals.insert(phi(s, x));
  std::set<TightPoint> inner;
  for (const auto p : k.vertices) {
    const auto mu = vertex_point(s, p);
    if (!terminals.contains(mu)) inner.insert(lambda_map(s, mu));
  }
  const TightPoint u{1, 2, 1, 2, 1, 2};
  const TightPoint v{2, 1, 2, 1, 2, 1};
  if (inner != std::set<TightPoint>{u, v}) o.fail("non-terminal vertices do not map to u and v");
  if (d_inf(u, v) != Rat(1)) o.fail("d_inf(u, v) = " + d_inf(u, v).str());

  const auto gd = tight_span_graph_via_buneman(m, s);
  const auto iu = gd.find(u);
  const auto iv = gd.find(v);
  Rat dg(-1);
  if (!iu || !iv) {
    o.fail("u or v is not a vertex of G_d");
  } else {
    dg = all_pairs_distance(to_weighted_graph(gd, m))(*iu, *iv);
    if (dg != Rat(3)) o.fail("G_d distance(u, v) = " + dg.str());
  }
  const double t = seconds_since(start);
  if (t >= 1.0) o.fail("took " + fmt_seconds(t));
  report(1, "three-split cube example", o,
         "8 vertices, 12 unit edges, u=" + format_point(u) + ", v=" + format_point(v) +
             ", d_inf=1, d_Gd=" + dg.str() + ", " + fmt_seconds(t));
}

// --- criteria 2, 4, 5, 8 (corpus) -----------------------------------------

struct Certified {
  const CorpusInstance* instance;
  std::optional<TheoremCertificate> cert;
};

std::vector<Certified> main_sweep(const std::vector<CorpusInstance>& corpus) {
  Outcome o;
  const auto start = Clock::now();
  std::vector<Certified> out;
  std::size_t ok = 0;
  for (const auto& inst : corpus) {
    Certified c{&inst, std::nullopt};
    try {
      c.cert = certify_theorem(inst.metric);
      if (!homeomorphic(c.cert->embedding.suppressed, c.cert->selected.graph)) {
        o.fail(inst.name + ": suppressed G* not homeomorphic to the realisation");
        c.cert.reset();
      } else {
        ++ok;
      }
    } catch (const Error& e) {
      o.fail(inst.name + ": " + std::string(to_string(e.code())) + ": " + e.what());
    }
    out.push_back(std::move(c));
  }
  const double t = seconds_since(start);
  if (corpus.size() < 202) o.fail("corpus has only " + std::to_string(corpus.size()) + " instances");
  if (t > 600) o.fail("took " + fmt_seconds(t));
  report(2, "certify on the two-compatible corpus", o,
         std::to_string(ok) + "/" + std::to_string(corpus.size()) + " certified, " + fmt_seconds(t));
  return out;
}

void scc_sweep(const std::vector<Certified>& certified) {
  Outcome o;
  std::size_t subsets = 0;
  for (const auto& c : certified) {
    if (!c.cert) {
      o.fail(c.instance->name + ": no certified realisation");
      continue;
    }
    const auto r = check_scc_count(c.cert->selected.graph, true);
    subsets += r.counts.size();
    for (const auto a : r.violations) {
      o.fail(c.instance->name + ": A mask " + std::to_string(a) + " has " + std::to_string(r.counts[a]) + " SCCs");
    }
  }
  report(4, "split-flow digraphs have 1 or 2 strong components", o,
         std::to_string(subsets) + " subsets over " + std::to_string(certified.size()) + " realisations");
}

void potential_sweep(const std::vector<Certified>& certified) {
  Outcome o;
  std::size_t sides = 0;
  for (const auto& c : certified) {
    if (!c.cert) {
      o.fail(c.instance->name + ": no certified realisation");
      continue;
    }
    const auto& s = c.cert->system;
    const auto& g = c.cert->selected.graph;
    const auto& primes = c.cert->embedding.psi_prime_images;
    try {
      for (SideIndex side = 0; side < s.side_count(); ++side) {
        ++sides;
        const auto values = side_potential(s, primes, side);
        if (!check_split_potential(g, values)) o.fail(c.instance->name + ": side " + std::to_string(side) + " not a split potential");
        if (!verify_potential_vertex_binarity(g, values)) o.fail(c.instance->name + ": side " + std::to_string(side) + " not binary");
      }
      if (!check_vertices_map_to_vertices(g, c.instance->metric, s)) {
        o.fail(c.instance->name + ": a vertex image is not a Buneman vertex");
      }
    } catch (const Error& e) {
      o.fail(c.instance->name + ": " + e.what());
    }
  }
  report(5, "side potentials are binary split potentials, psi' hits Buneman vertices", o,
         std::to_string(sides) + " sides");
}

void necessary_conditions(const FiniteMetric& m, const RealisationSet& set, const std::string& name,
                          Outcome& o, std::size_t& checked) {
  for (const auto& r : set.optima) {
    ++checked;
    const auto rep = check_optimality_necessary(r.graph, m);
    if (!rep.every_edge_on_all_geodesics_of_some_pair) o.fail(name + ": an edge misses every pair's geodesics");
    if (!rep.adjacent_edges_on_common_geodesic) o.fail(name + ": adjacent edges share no geodesic");
    if (!rep.triangle_free || !r.graph.is_triangle_free()) o.fail(name + ": triangle");
  }
}

// --- criterion 3 -----------------------------------------------------------

void vertex_distance_sweep(const std::vector<CorpusInstance>& corpus) {
  Outcome o;
  std::size_t pairs = 0;
  for (const auto& inst : corpus) {
    try {
      const auto r = check_vertex_distance_property(inst.metric);
      const auto nv = r.graph.vertices.size();
      pairs += nv * (nv - 1) / 2;
      if (!r.holds) o.fail(inst.name + ": d_inf " + r.d_inf.str() + " vs path " + r.d_graph.str());
    } catch (const Error& e) {
      o.fail(inst.name + ": " + e.what());
    }
  }

  const auto cube = split_metric(cube_system());
  const auto r = check_vertex_distance_property(cube, false);
  const TightPoint u{1, 2, 1, 2, 1, 2};
  const TightPoint v{2, 1, 2, 1, 2, 1};
  std::string cube_note = "cube: no witness";
  if (r.holds || !r.witness) {
    o.fail("cube example unexpectedly satisfies the property");
  } else {
    const auto& a = r.graph.vertices[r.witness->first];
    const auto& b = r.graph.vertices[r.witness->second];
    if (std::set<TightPoint>{a, b} != std::set<TightPoint>{u, v}) o.fail("cube witness is not (u, v)");
    if (r.d_inf != Rat(1) || r.d_graph != Rat(3)) o.fail("cube witness distances differ from 1 and 3");
    cube_note = "cube fails at " + format_point(a) + ", " + format_point(b) + " with " + r.d_inf.str() + " < " +
                r.d_graph.str();
  }
  report(3, "d_inf equals the G_d path distance on tight-span vertices", o,
         std::to_string(pairs) + " vertex pairs; " + cube_note);
}

// --- criterion 6 -----------------------------------------------------------

// Lexicographically least upper-triangle listing over all point orders.
std::vector<std::int64_t> class_key(const FiniteMetric& m) {
  const std::size_t n = m.size();
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::optional<std::vector<std::int64_t>> best;
  do {
    std::vector<std::int64_t> key;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) key.push_back(m(p[i], p[j]).num());
    }
    if (!best || key < *best) best = key;
  } while (std::next_permutation(p.begin(), p.end()));
  return *best;
}

void oracle_sweep(Outcome& necessary, std::size_t& necessary_checked) {
  Outcome o;
  const auto start = Clock::now();
  std::size_t metrics = 0;
  std::map<std::vector<std::int64_t>, Rat> by_class;
  for (std::size_t n = 2; n <= 4; ++n) {
    const auto family = oracle::topologies(n, 4);
    const std::size_t pairs = n * (n - 1) / 2;
    std::size_t total = 1;
    for (std::size_t i = 0; i < pairs; ++i) total *= 3;
    for (std::size_t code = 0; code < total; ++code) {
      RatMatrix d(n);
      std::size_t c = code;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j, c /= 3) d(i, j) = d(j, i) = Rat(static_cast<std::int64_t>(1 + c % 3));
      }
      std::optional<FiniteMetric> m;
      try {
        m = validate_metric(d, numbered_labels(n));
      } catch (const Error&) {
        continue;
      }
      ++metrics;
      const auto set = optimal_realisations(*m);
      const std::string name = "n=" + std::to_string(n) + " #" + std::to_string(code);
      if (!set.exhaustive) {
        o.fail(name + ": solver did not finish");
        continue;
      }
      necessary_conditions(*m, set, name, necessary, necessary_checked);
      const auto key = class_key(*m);
      auto it = by_class.find(key);
      if (it == by_class.end()) {
        const auto expected = oracle::optimal_length(*m, family);
        if (!expected) {
          o.fail(name + ": oracle found no realisation");
          continue;
        }
        it = by_class.emplace(key, *expected).first;
      }
      if (set.optimum != it->second) o.fail(name + ": solver " + set.optimum.str() + ", oracle " + it->second.str());
    }
  }
  const double t = seconds_since(start);
  if (t > 300) o.fail("took " + fmt_seconds(t));
  report(6, "optimal length matches the brute-force oracle", o,
         std::to_string(metrics) + " metrics in " + std::to_string(by_class.size()) + " classes, " + fmt_seconds(t));
}

// --- criterion 7 -----------------------------------------------------------

void round_trips(const std::vector<CorpusInstance>& corpus) {
  Outcome o;
  for (const auto& inst : corpus) {
    try {
      const auto s = decompose(inst.metric);
      if (split_metric(s) != inst.metric) o.fail(inst.name + ": split_metric(decompose(d)) != d");
      if (is_weakly_compatible(inst.system) && decompose(split_metric(inst.system)) != inst.system) {
        o.fail(inst.name + ": decompose(split_metric(S)) != S");
      }
      const auto a = tight_span_graph_via_buneman(inst.metric, s);
      const auto b = tight_span_graph_direct(inst.metric);
      if (!same_tight_span(a, b) ||
          !weighted_isomorphic(to_weighted_graph(a, inst.metric), to_weighted_graph(b, inst.metric))) {
        o.fail(inst.name + ": the two tight-span routes disagree");
      }
    } catch (const Error& e) {
      o.fail(inst.name + ": " + e.what());
    }
  }
  report(7, "decompose and split_metric invert each other; both tight-span routes agree", o,
         std::to_string(corpus.size()) + " instances");
}

}  // namespace

int main() {
  cube_example();

  const auto corpus = acceptance_corpus();
  const auto certified = main_sweep(corpus);
  vertex_distance_sweep(corpus);
  scc_sweep(certified);
  potential_sweep(certified);

  Outcome necessary;
  std::size_t checked = 0;
  for (const auto& c : certified) {
    if (c.cert) necessary_conditions(c.instance->metric, c.cert->optima, c.instance->name, necessary, checked);
  }
  oracle_sweep(necessary, checked);
  round_trips(corpus);
  report(8, "solver outputs meet the geodesic conditions and are triangle-free", necessary,
         std::to_string(checked) + " realisations");

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << '\n';
  return failures == 0 ? 0 : 1;
}
