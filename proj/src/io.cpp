#include "splitspan/io.hpp"

#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "splitspan/error.hpp"

namespace splitspan {

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream words(raw);
    Line line{number, {}};
    for (std::string w; words >> w;) line.tokens.push_back(w);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::Parse, "line " + std::to_string(line) + ": " + what, {line});
}

Rat parse_rat(const std::string& token, std::size_t line) {
  try {
    return Rat::parse(token);
  } catch (const RationalOverflow&) {
    parse_error(line, "number out of range '" + token + "'");
  } catch (const std::logic_error&) {
    parse_error(line, "malformed number '" + token + "'");
  }
}

}  // namespace

FiniteMetric parse_metric(std::string_view text) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw Error(ErrorCode::Parse, "empty metric file");
  std::size_t n = 0;
  try {
    if (lines[0].tokens.size() != 1) throw std::invalid_argument("size");
    const long long v = std::stoll(lines[0].tokens[0]);
    if (v < 1) throw std::invalid_argument("size");
    n = static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    parse_error(lines[0].number, "first line must hold the number of points");
  }

  // Flatten everything after the size line, then peel off the labels.
  std::vector<std::pair<std::string, std::size_t>> tokens;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    for (const auto& t : lines[i].tokens) tokens.emplace_back(t, lines[i].number);
  }
  const std::size_t last_line = lines.back().number;
  if (tokens.size() < n) parse_error(last_line, "expected " + std::to_string(n) + " labels");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(tokens[i].first);

  const std::size_t entries = tokens.size() - n;
  const std::size_t strict = n * (n - 1) / 2;
  const bool with_diagonal = entries == strict + n;
  if (entries != strict && !with_diagonal) {
    parse_error(last_line, "expected " + std::to_string(strict) + " or " + std::to_string(strict + n) +
                               " matrix entries, found " + std::to_string(entries));
  }

  RatMatrix d(n);
  std::size_t k = n;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t row = with_diagonal ? i + 1 : i;
    for (std::size_t j = 0; j < row; ++j, ++k) {
      const Rat value = parse_rat(tokens[k].first, tokens[k].second);
      d(i, j) = value;
      d(j, i) = value;
    }
  }
  return validate_metric(d, std::move(labels));
}

std::string format_metric(const FiniteMetric& m) {
  std::ostringstream out;
  out << m.size() << '\n';
  for (std::size_t i = 0; i < m.size(); ++i) out << (i ? " " : "") << m.label(i);
  out << '\n';
  for (std::size_t i = 1; i < m.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) out << (j ? " " : "") << m(i, j);
    out << '\n';
  }
  return out.str();
}

WeightedSplitSystem parse_splits(std::string_view text) {
  const auto lines = tokenize(text);
  std::vector<std::string> ground;
  std::map<std::string, std::size_t> index;
  std::size_t first = 0;
  const auto register_label = [&](const std::string& label) {
    if (index.emplace(label, ground.size()).second) ground.push_back(label);
  };
  if (!lines.empty() && lines[0].tokens[0] == "ground") {
    for (std::size_t i = 1; i < lines[0].tokens.size(); ++i) {
      if (index.contains(lines[0].tokens[i])) parse_error(lines[0].number, "duplicate label");
      register_label(lines[0].tokens[i]);
    }
    first = 1;
  }

  struct Raw {
    std::vector<std::string> a, b;
    Rat weight;
    std::size_t line;
  };
  std::vector<Raw> raw;
  for (std::size_t i = first; i < lines.size(); ++i) {
    const auto& toks = lines[i].tokens;
    Raw r{{}, {}, Rat(0), lines[i].number};
    std::size_t k = 0;
    for (; k < toks.size() && toks[k] != "|"; ++k) r.a.push_back(toks[k]);
    if (k == toks.size()) parse_error(r.line, "missing '|'");
    for (++k; k < toks.size() && toks[k] != ":"; ++k) r.b.push_back(toks[k]);
    if (k + 2 != toks.size()) parse_error(r.line, "expected ': weight' at the end");
    if (r.a.empty() || r.b.empty()) parse_error(r.line, "empty split side");
    r.weight = parse_rat(toks[k + 1], r.line);
    if (first == 0) {
      for (const auto& l : r.a) register_label(l);
      for (const auto& l : r.b) register_label(l);
    }
    raw.push_back(std::move(r));
  }
  if (ground.size() > kMaxGroundSize) throw Error(ErrorCode::GroundSetTooLarge, "too many points");

  WeightedSplitSystem s(ground);
  for (const auto& r : raw) {
    PointSet a = 0;
    PointSet b = 0;
    for (const auto& l : r.a) {
      const auto it = index.find(l);
      if (it == index.end()) parse_error(r.line, "unknown label '" + l + "'");
      a |= PointSet{1} << it->second;
    }
    for (const auto& l : r.b) {
      const auto it = index.find(l);
      if (it == index.end()) parse_error(r.line, "unknown label '" + l + "'");
      b |= PointSet{1} << it->second;
    }
    if ((a & b) != 0 || (a | b) != full_set(ground.size())) {
      parse_error(r.line, "sides must partition the ground set");
    }
    try {
      s.add(Split::from_side(a, ground.size()), r.weight);
    } catch (const Error& e) {
      parse_error(r.line, e.what());
    }
  }
  return s;
}

std::string format_splits(const WeightedSplitSystem& s) {
  std::ostringstream out;
  out << "ground";
  for (const auto& l : s.ground()) out << ' ' << l;
  out << '\n';
  const auto side = [&](PointSet p) {
    std::string text;
    for (std::size_t x = 0; x < s.ground_size(); ++x) {
      if (contains(p, x)) text += s.ground()[x] + " ";
    }
    return text;
  };
  for (std::size_t i = 0; i < s.size(); ++i) {
    out << side(s.split(i).a) << "| " << side(s.split(i).b) << ": " << s.weight(i) << '\n';
  }
  return out.str();
}

WeightedGraph parse_graph(std::string_view text) {
  WeightedGraph g;
  std::map<std::string, std::size_t> index;
  for (const auto& line : tokenize(text)) {
    const auto& t = line.tokens;
    if ((t[0] == "terminal" || t[0] == "aux") && t.size() == 2) {
      if (index.contains(t[1])) parse_error(line.number, "duplicate vertex '" + t[1] + "'");
      index[t[1]] = t[0] == "terminal" ? g.add_terminal(t[1]) : g.add_auxiliary(t[1]);
    } else if (t[0] == "edge" && t.size() == 4) {
      const auto u = index.find(t[1]);
      const auto v = index.find(t[2]);
      if (u == index.end() || v == index.end()) parse_error(line.number, "unknown vertex");
      try {
        g.add_edge(u->second, v->second, parse_rat(t[3], line.number));
      } catch (const Error& e) {
        if (e.code() == ErrorCode::Parse) throw;
        parse_error(line.number, e.what());
      }
    } else {
      parse_error(line.number, "expected 'terminal L', 'aux N' or 'edge N1 N2 w'");
    }
  }
  return g;
}

namespace {

std::string vertex_name(const WeightedGraph& g, std::size_t v) {
  const auto& name = g.vertex(v).name;
  return name.empty() ? "v" + std::to_string(v) : name;
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string format_graph(const WeightedGraph& g) {
  std::ostringstream out;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    out << (g.is_terminal(v) ? "terminal " : "aux ") << vertex_name(g, v) << '\n';
  }
  for (const auto& e : g.edges()) {
    out << "edge " << vertex_name(g, e.u) << ' ' << vertex_name(g, e.v) << ' ' << e.weight << '\n';
  }
  return out.str();
}

std::string to_dot(const WeightedGraph& g, const std::string& name) {
  std::ostringstream out;
  out << "graph " << quoted(name) << " {\n";
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    out << "  n" << v << " [label=" << quoted(vertex_name(g, v))
        << (g.is_terminal(v) ? ", shape=box" : ", shape=circle") << "];\n";
  }
  for (const auto& e : g.edges()) {
    out << "  n" << e.u << " -- n" << e.v << " [label=" << quoted(e.weight.str()) << "];\n";
  }
  out << "}\n";
  return out.str();
}

namespace {

std::string pattern_string(const WeightedSplitSystem& s, SignPattern p) {
  std::string text;
  for (std::size_t i = 0; i < s.size(); ++i) text += ((p >> i) & 1U) ? '1' : '0';
  return text;
}

}  // namespace

std::string buneman_dot(const WeightedSplitSystem& s, const BunemanSkeleton& k) {
  std::ostringstream out;
  out << "graph \"B\" {\n";
  for (std::size_t v = 0; v < k.vertices.size(); ++v) {
    out << "  b" << v << " [label=" << quoted(pattern_string(s, k.vertices[v])) << "];\n";
  }
  for (const auto& e : k.edges) {
    out << "  b" << e.u << " -- b" << e.v << " [label=" << quoted(s.weight(e.split).str()) << "];\n";
  }
  out << "}\n";
  return out.str();
}

std::string buneman_json(const WeightedSplitSystem& s, const BunemanSkeleton& k) {
  nlohmann::ordered_json doc;
  doc["splits"] = nlohmann::json::array();
  for (std::size_t i = 0; i < s.size(); ++i) {
    doc["splits"].push_back({{"split", format_split(s, s.split(i))}, {"weight", s.weight(i).str()}});
  }
  doc["vertices"] = nlohmann::json::array();
  for (const auto p : k.vertices) {
    nlohmann::ordered_json coords = nlohmann::json::array();
    for (const auto& c : vertex_point(s, p).coords) coords.push_back(c.str());
    doc["vertices"].push_back({{"pattern", pattern_string(s, p)}, {"coords", coords}});
  }
  doc["edges"] = nlohmann::json::array();
  for (const auto& e : k.edges) doc["edges"].push_back({e.u, e.v, e.split});
  doc["quads"] = nlohmann::json::array();
  for (const auto& q : k.quads) doc["quads"].push_back(q.corners);
  return doc.dump(2) + "\n";
}

std::string format_point(const TightPoint& f) {
  std::string text = "(";
  for (std::size_t i = 0; i < f.size(); ++i) text += (i ? "," : "") + f[i].str();
  return text + ")";
}

}  // namespace splitspan
