#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "splitspan/buneman.hpp"
#include "splitspan/corpus.hpp"
#include "splitspan/embedder.hpp"
#include "splitspan/error.hpp"
#include "splitspan/io.hpp"
#include "splitspan/realizer.hpp"
#include "splitspan/splits.hpp"
#include "splitspan/tightspan.hpp"

namespace {

using namespace splitspan;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

struct Options {
  std::string input;
  std::size_t max_aux = 4;
  std::size_t max_degree = 0;
  std::int64_t time_budget_ms = 0;
  bool json = false;
  bool corpus = false;
  std::uint64_t seed = CorpusConfig{}.seed;
  std::size_t count = CorpusConfig{}.count;
  std::string kind = "auto";
};

SearchConfig search_config(const Options& o) {
  SearchConfig cfg;
  cfg.max_aux = o.max_aux;
  cfg.max_degree = o.max_degree;
  if (o.time_budget_ms > 0) cfg.time_budget = std::chrono::milliseconds(o.time_budget_ms);
  return cfg;
}

int cmd_validate(const Options& o) {
  const auto m = parse_metric(read_file(o.input));
  std::cout << "metric on " << m.size() << " points: ok\n";
  std::cout << "totally-decomposable: " << yes_no(is_totally_decomposable(m)) << '\n';
  std::cout << "#RESULT valid points " << m.size() << '\n';
  return 0;
}

int cmd_decompose(const Options& o) {
  const auto m = parse_metric(read_file(o.input));
  const auto s = decompose(m);
  std::cout << format_splits(s);
  std::cout << "#RESULT splits " << s.size() << " two-compatible " << yes_no(is_two_compatible(s)) << '\n';
  return 0;
}

int cmd_check_splits(const Options& o) {
  const auto s = parse_splits(read_file(o.input));
  const bool weak = is_weakly_compatible(s);
  const bool two = is_two_compatible(s);
  const bool octa = is_octahedral_free(s);
  std::cout << "weakly-compatible: " << yes_no(weak) << ", two-compatible: " << yes_no(two)
            << ", octahedral-free: " << yes_no(octa) << '\n';
  bool total = false;
  try {
    total = is_totally_decomposable(split_metric(s));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotSeparated) throw;
  }
  std::cout << "totally-decomposable: " << yes_no(total) << '\n';
  std::cout << "#RESULT weak " << weak << " two " << two << " octahedral-free " << octa
            << " decomposable " << total << '\n';
  return 0;
}

int cmd_buneman(const Options& o) {
  const auto s = parse_splits(read_file(o.input));
  const auto k = buneman_skeleton(s);
  std::cout << "vertices " << k.vertices.size() << "\nedges " << k.edges.size() << "\nquads "
            << k.quads.size() << '\n';
  std::cout << (o.json ? buneman_json(s, k) : buneman_dot(s, k));
  std::cout << "#RESULT vertices " << k.vertices.size() << " edges " << k.edges.size() << " quads "
            << k.quads.size() << '\n';
  return 0;
}

int cmd_tightspan(const Options& o) {
  const auto m = parse_metric(read_file(o.input));
  std::optional<TightSpanGraph> via_buneman;
  try {
    const auto s = decompose(m);
    if (is_weakly_compatible(s) && is_octahedral_free(s)) via_buneman = tight_span_graph_via_buneman(m, s);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotTotallyDecomposable) throw;
  }
  std::optional<TightSpanGraph> direct;
  if (m.size() <= kMaxDirectPoints) direct = tight_span_graph_direct(m);
  if (!via_buneman && !direct) {
    throw Error(ErrorCode::GroundSetTooLarge, "no route to the tight span for this metric");
  }
  const TightSpanGraph& gd = via_buneman ? *via_buneman : *direct;
  for (std::size_t i = 0; i < gd.vertices.size(); ++i) {
    std::cout << "vertex " << i << ' ' << format_point(gd.vertices[i]) << '\n';
  }
  for (const auto& e : gd.edges) std::cout << "edge " << e.u << ' ' << e.v << ' ' << e.weight << '\n';
  std::cout << to_dot(to_weighted_graph(gd, m), "Gd");
  std::string agree = "n/a";
  if (via_buneman && direct) agree = yes_no(same_tight_span(*via_buneman, *direct));
  std::cout << "#RESULT vertices " << gd.vertices.size() << " edges " << gd.edges.size() << " route "
            << (via_buneman ? "buneman" : "direct") << " agree " << agree << '\n';
  if (agree == "no") throw Error(ErrorCode::InvariantViolation, "the two tight-span routes disagree");
  return 0;
}

int cmd_realize(const Options& o) {
  const auto m = parse_metric(read_file(o.input));
  const auto set = optimal_realisations(m, search_config(o));
  for (std::size_t i = 0; i < set.optima.size(); ++i) {
    const auto& r = set.optima[i];
    std::cout << "optimum " << i << " length " << r.length << " gamma " << r.gamma << " vertices "
              << r.graph.vertex_count() << '\n';
    std::cout << format_graph(r.graph) << to_dot(r.graph, "optimum" + std::to_string(i));
  }
  if (set.optima.empty()) {
    if (!set.exhaustive) {
      std::cerr << "budget exceeded: no realisation found yet\n";
      return 2;
    }
    std::cout << "no realisation found within the search bounds\n";
    return 0;
  }
  const auto& best = select_minimal_path_saturated(set.optima);
  std::cout << "selected " << best.encoding << '\n';
  std::cout << "#RESULT optimum " << best.length << " gamma " << best.gamma << " vertices "
            << best.graph.vertex_count() << '\n';
  if (!set.exhaustive) {
    std::cerr << "budget exceeded: result is not exhaustive\n";
    return 2;
  }
  return 0;
}

void print_certificate(const TheoremCertificate& c) {
  for (const auto& line : c.trace) std::cout << "stage " << line << '\n';
  const auto& g = c.selected.graph;
  const auto& e = c.embedding;
  std::cout << "splits\n" << format_splits(c.system);
  std::cout << "G_d vertices " << c.gd.vertices.size() << " edges " << c.gd.edges.size() << '\n';
  std::cout << "realisation length " << c.selected.length << " gamma " << c.selected.gamma << '\n'
            << format_graph(g);
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    std::cout << "psi " << g.vertex(v).name << " = " << format_point(e.psi_images[v]) << " -> G_d vertex "
              << e.psi_vertex[v] << '\n';
  }
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    const auto& ed = g.edges()[i];
    std::cout << "path " << g.vertex(ed.u).name << '-' << g.vertex(ed.v).name << ':';
    for (const auto v : e.chosen_paths[i]) std::cout << ' ' << v;
    std::cout << '\n';
  }
  std::cout << "G* vertices " << e.g_star.vertex_count() << " edges " << e.g_star.edge_count()
            << " length " << e.g_star.total_length() << '\n';
  std::cout << "witness";
  for (std::size_t v = 0; v < e.witness.size(); ++v) {
    std::cout << ' ' << e.suppressed.vertex(v).name << "->" << g.vertex(e.witness[v]).name;
  }
  std::cout << '\n';
}

int cmd_certify(const Options& o) {
  const auto cfg = search_config(o);
  if (o.corpus) {
    CorpusConfig cc;
    cc.seed = o.seed;
    cc.count = o.count;
    std::size_t ok = 0;
    const auto corpus = acceptance_corpus(cc);
    for (const auto& inst : corpus) {
      const auto c = certify_theorem(inst.metric, cfg);
      std::cout << inst.name << " length " << c.selected.length << " vertices "
                << c.selected.graph.vertex_count() << " certified\n";
      ++ok;
    }
    std::cout << "#RESULT certified " << ok << " of " << corpus.size() << '\n';
    return 0;
  }
  const auto m = parse_metric(read_file(o.input));
  const auto c = certify_theorem(m, cfg);
  print_certificate(c);
  std::cout << "#RESULT certified length " << c.selected.length << " vertices "
            << c.selected.graph.vertex_count() << '\n';
  return 0;
}

int cmd_dot(const Options& o) {
  const auto text = read_file(o.input);
  std::string kind = o.kind;
  if (kind == "auto") {
    std::istringstream in(text);
    std::string first;
    while (in >> first && first[0] == '#') std::getline(in, first);
    if (first == "terminal" || first == "aux" || first == "edge") {
      kind = "graph";
    } else if (text.find('|') != std::string::npos) {
      kind = "splits";
    } else {
      kind = "metric";
    }
  }
  if (kind == "graph") {
    std::cout << to_dot(parse_graph(text));
  } else if (kind == "splits") {
    const auto s = parse_splits(text);
    std::cout << buneman_dot(s, buneman_skeleton(s));
  } else {
    const auto m = parse_metric(text);
    std::cout << to_dot(to_weighted_graph(tight_span_graph(m), m), "Gd");
  }
  return 0;
}

int exit_code(ErrorCode code) {
  switch (classify(code)) {
    case ErrorClass::Input:
      return 1;
    case ErrorClass::Budget:
      return 2;
    case ErrorClass::Internal:
      return 3;
  }
  return 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Split systems, tight spans and optimal realisations"};
  app.require_subcommand(1);
  Options o;

  const auto with_input = [&](CLI::App* sub) { sub->add_option("input", o.input, "input file")->required(); };
  const auto with_search = [&](CLI::App* sub) {
    sub->add_option("--max-aux", o.max_aux, "auxiliary vertex bound")->check(CLI::Range(0, 12));
    sub->add_option("--max-degree", o.max_degree, "vertex degree bound, 0 for none");
    sub->add_option("--time-budget", o.time_budget_ms, "search time budget in milliseconds")
        ->check(CLI::NonNegativeNumber);
  };

  with_input(app.add_subcommand("validate", "check the metric axioms"));
  with_input(app.add_subcommand("decompose", "split decomposition of a metric"));
  with_input(app.add_subcommand("check-splits", "compatibility predicates of a split system"));
  auto* buneman = app.add_subcommand("buneman", "Buneman complex of a split system");
  with_input(buneman);
  buneman->add_flag("--json", o.json, "dump coordinates as JSON instead of DOT");
  with_input(app.add_subcommand("tightspan", "vertices and edges of the tight span"));
  auto* realize = app.add_subcommand("realize", "optimal realisations");
  with_input(realize);
  with_search(realize);
  auto* certify = app.add_subcommand("certify", "embedding certificate for an optimal realisation");
  certify->add_option("input", o.input, "metric file");
  certify->add_flag("--corpus", o.corpus, "certify the generated acceptance corpus instead");
  certify->add_option("--seed", o.seed, "corpus seed");
  certify->add_option("--count", o.count, "number of random corpus instances");
  with_search(certify);
  auto* dot = app.add_subcommand("dot", "render a graph, split system or metric as DOT");
  with_input(dot);
  dot->add_option("--kind", o.kind, "graph, splits, metric or auto")
      ->check(CLI::IsMember({"auto", "graph", "splits", "metric"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    if (name == "certify" && !o.corpus && o.input.empty()) {
      throw Error(ErrorCode::InvalidArgument, "certify needs a metric file or --corpus");
    }
    if (name == "validate") return cmd_validate(o);
    if (name == "decompose") return cmd_decompose(o);
    if (name == "check-splits") return cmd_check_splits(o);
    if (name == "buneman") return cmd_buneman(o);
    if (name == "tightspan") return cmd_tightspan(o);
    if (name == "realize") return cmd_realize(o);
    if (name == "certify") return cmd_certify(o);
    return cmd_dot(o);
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what();
    if (!e.witness().empty()) {
      std::cerr << " (witness";
      for (const auto w : e.witness()) std::cerr << ' ' << w;
      std::cerr << ')';
    }
    std::cerr << '\n';
    return exit_code(e.code());
  } catch (const RationalOverflow& e) {
    std::cerr << "error: arithmetic overflow: " << e.what() << '\n';
    return 2;
  }
}
