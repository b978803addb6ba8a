#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <string>

#include <json.hpp>

#include "splitspan/corpus.hpp"
#include "splitspan/error.hpp"
#include "splitspan/io.hpp"
#include "support.hpp"

using namespace splitspan;
using testing::square_metric;
using testing::unit_cycle;

namespace {

Error error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e;
  }
  FAIL("no error raised");
  return Error(ErrorCode::InvariantViolation, "");
}

bool mentions(const Error& e, const std::string& text) {
  return std::string(e.what()).find(text) != std::string::npos;
}

}  // namespace

TEST_CASE("metric text: strict lower triangle") {
  const auto m = parse_metric("# tree\n4\na b c d\n2\n4 4\n4 4 2\n");
  CHECK(m.size() == 4);
  CHECK(m.label(2) == "c");
  CHECK(m(0, 1) == Rat(2));
  CHECK(m(3, 2) == Rat(2));
  CHECK(m(1, 3) == Rat(4));
}

TEST_CASE("metric text: lower triangle with the diagonal, rational entries") {
  const auto m = parse_metric("3\nx y z\n0\n1/2 0\n1 1/2 0   # comment\n");
  CHECK(m(0, 1) == Rat(1, 2));
  CHECK(m(0, 2) == Rat(1));
  CHECK(m(1, 2) == Rat(1, 2));
}

TEST_CASE("metric round trip") {
  for (const auto& inst : acceptance_corpus({.count = 20})) {
    CAPTURE(inst.name);
    CHECK(parse_metric(format_metric(inst.metric)) == inst.metric);
  }
}

TEST_CASE("metric parse errors") {
  CHECK(error_of([] { parse_metric(""); }).code() == ErrorCode::Parse);
  CHECK(error_of([] { parse_metric("two\na b\n1\n"); }).code() == ErrorCode::Parse);
  const auto bad = error_of([] { parse_metric("2\na b\n\nx\n"); });
  CHECK(bad.code() == ErrorCode::Parse);
  CHECK(mentions(bad, "line 4"));
  CHECK(error_of([] { parse_metric("3\na b c\n1\n1 1\n1\n"); }).code() == ErrorCode::Parse);
  CHECK(error_of([] { parse_metric("2\na b\n1/0\n"); }).code() == ErrorCode::Parse);
  CHECK(error_of([] { parse_metric("3\na b c\n1\n5 1\n"); }).code() == ErrorCode::TriangleViolation);
}

TEST_CASE("split text round trip") {
  for (const auto& inst : acceptance_corpus({.count = 20})) {
    CAPTURE(inst.name);
    CHECK(parse_splits(format_splits(inst.system)) == inst.system);
  }
  CHECK(parse_splits(format_splits(cube_system())) == cube_system());
}

TEST_CASE("split text without a ground line") {
  const auto s = parse_splits("p q | r s : 1\np s | q r : 3/2\n");
  CHECK(s.ground() == std::vector<std::string>{"p", "q", "r", "s"});
  CHECK(s.size() == 2);
  CHECK(s.weight(1) == Rat(3, 2));
  CHECK(format_split(s, s.split(1)) == "ps|qr");
}

TEST_CASE("split parse errors") {
  CHECK(mentions(error_of([] { parse_splits("a b c d : 1\n"); }), "'|'"));
  CHECK(error_of([] { parse_splits("ground a b c\na | b : 1\n"); }).code() == ErrorCode::Parse);
  CHECK(error_of([] { parse_splits("ground a b\na | z : 1\n"); }).code() == ErrorCode::Parse);
  CHECK(error_of([] { parse_splits("a | b : 0\n"); }).code() == ErrorCode::Parse);
  CHECK(mentions(error_of([] { parse_splits("a | b : 1\nb | a : 2\n"); }), "line 2"));
}

TEST_CASE("graph text round trip") {
  const auto g = unit_cycle(4);
  const auto back = parse_graph(format_graph(g));
  CHECK(weighted_isomorphic(back, g));
  CHECK(back.edges().size() == 4);

  WeightedGraph h;
  h.add_terminal("x");
  h.add_auxiliary();
  h.add_edge(0, 1, Rat(5, 2));
  const auto text = format_graph(h);
  CHECK(text == "terminal x\naux a1\nedge x a1 5/2\n");
  CHECK(weighted_isomorphic(parse_graph(text), h));
}

TEST_CASE("graph parse errors") {
  CHECK(error_of([] { parse_graph("terminal a\nterminal a\n"); }).code() == ErrorCode::Parse);
  CHECK(error_of([] { parse_graph("terminal a\nedge a b 1\n"); }).code() == ErrorCode::Parse);
  CHECK(error_of([] { parse_graph("terminal a\nterminal b\nedge a b -1\n"); }).code() == ErrorCode::Parse);
  CHECK(mentions(error_of([] { parse_graph("terminal a\nvertex b\n"); }), "line 2"));
}

TEST_CASE("DOT output") {
  const auto dot = to_dot(unit_cycle(4), "square");
  CHECK(dot.rfind("graph \"square\" {", 0) == 0);
  CHECK(dot.find("shape=box") != std::string::npos);
  CHECK(dot.find("n0 -- n1 [label=\"1\"]") != std::string::npos);

  const auto s = square_system();
  const auto k = buneman_skeleton(s);
  const auto bdot = buneman_dot(s, k);
  CHECK(bdot.find("label=\"00\"") != std::string::npos);
  CHECK(bdot.find("label=\"11\"") != std::string::npos);
}

TEST_CASE("Buneman JSON") {
  const auto s = cube_system();
  const auto doc = nlohmann::json::parse(buneman_json(s, buneman_skeleton(s)));
  CHECK(doc["splits"].size() == 3);
  CHECK(doc["vertices"].size() == 8);
  CHECK(doc["edges"].size() == 12);
  CHECK(doc["quads"].size() == 6);
  CHECK(doc["vertices"][0]["coords"].size() == 6);
}

TEST_CASE("point formatting") {
  CHECK(format_point({Rat(1), Rat(2), Rat(1, 2)}) == "(1,2,1/2)");
  CHECK(format_point({}) == "()");
}
