#include <map>

#include "bloch/catalog.hpp"
#include "bloch/errors.hpp"
#include "bloch/graph.hpp"
#include "doctest.h"

using namespace bloch;

namespace {

bool has_violation(const PeriodicGraph& g, ViolationKind kind) {
  for (const auto& v : validate(g)) {
    if (v.kind == kind) return true;
  }
  return false;
}

std::vector<TilingName> every_catalog_entry() {
  std::vector<TilingName> all = archimedean_tilings();
  for (int d = 1; d <= 4; ++d) all.push_back(TilingName::z(d));
  all.push_back(TilingName::non_archimedean(0.0));
  return all;
}

}  // namespace

TEST_CASE("cell offsets add componentwise and reject mixed dimensions") {
  CellOffset a{1, -2}, b{3, 4};
  CHECK(a + b == CellOffset{4, 2});
  CHECK(a - b == CellOffset{-2, -6});
  CHECK(-a == CellOffset{-1, 2});
  CHECK(CellOffset::zero(3).is_zero());
  const CellOffset c3{1, 2, 3};
  CHECK_THROWS_AS(a + c3, DimensionError);
}

TEST_CASE("edges are stored in canonical orientation") {
  PeriodicEdge e{1, 0, {0, 1}};
  CHECK(e.canonical() == PeriodicEdge{0, 1, {0, -1}});
  PeriodicEdge loop{0, 0, {-1, 0}};
  CHECK(loop.canonical() == PeriodicEdge{0, 0, {-1, 0}});
  CHECK(PeriodicEdge{0, 0, {1, 0}}.canonical() == loop);
}

TEST_CASE("catalog sizes and degrees") {
  struct Row {
    TilingName t;
    std::size_t q;
    int degree;
    std::size_t edges;
  };
  const std::vector<Row> rows = {
      {TilingName::z(2), 1, 4, 2},         {{Tiling::t4_4}, 1, 4, 2},        {{Tiling::t3_6}, 1, 6, 3},
      {{Tiling::t6_3}, 2, 3, 3},           {{Tiling::kagome}, 3, 4, 6},      {{Tiling::t3_12_12}, 6, 3, 9},
      {{Tiling::t3_3_4_2}, 2, 5, 5},       {{Tiling::t4_8_8}, 4, 3, 6},      {{Tiling::t3_2_4_3_4}, 4, 5, 10},
      {{Tiling::t3_4_6_4}, 6, 4, 12},      {{Tiling::t4_6_12}, 12, 3, 18},   {{Tiling::t3_4_6}, 6, 5, 15},
      {TilingName::z(1), 1, 2, 1},         {TilingName::z(3), 1, 6, 3},
  };
  for (const auto& r : rows) {
    CAPTURE(r.t.id());
    const PeriodicGraph g = catalog(r.t);
    CHECK(g.num_vertices() == r.q);
    CHECK(g.edges().size() == r.edges);
    CHECK(g.expected_degree() == r.degree);
    for (std::size_t v = 0; v < g.num_vertices(); ++v) CHECK(g.degree(v) == r.degree);
  }
}

TEST_CASE("Z^2 has the two axis loops") {
  const PeriodicGraph g = catalog(TilingName::z(2));
  REQUIRE(g.edges().size() == 2);
  CHECK(g.edges()[0] == PeriodicEdge{0, 0, {-1, 0}});
  CHECK(g.edges()[1] == PeriodicEdge{0, 0, {0, -1}});
  CHECK(g.labels() == std::vector<std::string>{"a"});
}

TEST_CASE("catalog labels follow a, b, c, ...") {
  const PeriodicGraph g = catalog({Tiling::t4_6_12});
  CHECK(g.labels().front() == "a");
  CHECK(g.labels().back() == "l");
  CHECK(catalog({Tiling::kagome}).labels() == std::vector<std::string>{"a", "b", "c"});
}

TEST_CASE("every catalog graph validates") {
  for (const auto& t : every_catalog_entry()) {
    CAPTURE(t.id());
    CHECK(validate(catalog(t)).empty());
  }
}

TEST_CASE("the non-Archimedean example has degrees 3, 4 and 8") {
  const PeriodicGraph g = catalog(TilingName::non_archimedean(0.0));
  CHECK(g.num_vertices() == 19);
  CHECK_FALSE(g.expected_degree().has_value());
  std::map<int, int> histogram;
  for (int d : g.degrees()) ++histogram[d];
  CHECK(histogram == std::map<int, int>{{3, 16}, {4, 2}, {8, 1}});
}

TEST_CASE("validate reports each broken invariant") {
  SUBCASE("self-loop in the same cell") {
    PeriodicGraph g("x", 2, {"a"}, {{0, 0, {0, 0}}, {0, 0, {1, 0}}, {0, 0, {0, 1}}});
    CHECK(has_violation(g, ViolationKind::self_loop));
  }
  SUBCASE("isolated vertex") {
    PeriodicGraph g("x", 1, {"a", "b"}, {{0, 0, {1}}});
    CHECK(has_violation(g, ViolationKind::zero_degree));
  }
  SUBCASE("offset length") {
    PeriodicGraph g("x", 2, {"a"}, {{0, 0, {1, 0, 0}}, {0, 0, {0, 1}}});
    CHECK(has_violation(g, ViolationKind::offset_length));
  }
  SUBCASE("vertex out of range") {
    PeriodicGraph g("x", 1, {"a"}, {{0, 3, {1}}});
    CHECK(has_violation(g, ViolationKind::vertex_out_of_range));
  }
  SUBCASE("degree mismatch") {
    PeriodicGraph g("x", 1, {"a"}, {{0, 0, {1}}}, 3);
    CHECK(has_violation(g, ViolationKind::degree_mismatch));
  }
  SUBCASE("disconnected lift") {
    // only the first axis is connected
    PeriodicGraph g("x", 2, {"a"}, {{0, 0, {1, 0}}});
    CHECK(has_violation(g, ViolationKind::disconnected_patch));
  }
  SUBCASE("empty domain") {
    PeriodicGraph g("x", 1, {}, {});
    CHECK(has_violation(g, ViolationKind::empty_domain));
  }
}

TEST_CASE("load_graph reads a Z^1 document") {
  const PeriodicGraph g = load_graph(R"({"name": "line", "dimension": 1, "vertices": ["a"],
                                         "edges": [["a", "a", [1]]], "expected_degree": 2})");
  CHECK(g.num_vertices() == 1);
  CHECK(g.degree(0) == 2);
  CHECK(g.name() == "line");
}

TEST_CASE("serialize and load_graph round-trip every catalog graph") {
  for (const auto& t : every_catalog_entry()) {
    CAPTURE(t.id());
    const PeriodicGraph g = catalog(t);
    const PeriodicGraph back = load_graph(serialize(g));
    CHECK(back == g);
    CHECK(serialize(back) == serialize(g));
  }
}

TEST_CASE("kagome document in another vertex order matches up to relabeling") {
  const std::string doc = R"({"name": "kagome", "dimension": 2, "vertices": ["c", "a", "b"],
    "edges": [["b", "a", [0, 0]], ["a", "b", [1, 0]], ["c", "a", [-1, 0]], ["a", "c", [0, 1]],
              ["b", "c", [0, 0]], ["b", "c", [0, 1]]], "expected_degree": 4})";
  const PeriodicGraph g = load_graph(doc);
  CHECK(same_up_to_relabeling(g, catalog({Tiling::kagome})));
  CHECK_FALSE(g == catalog({Tiling::kagome}));
}

TEST_CASE("load_graph errors") {
  CHECK_THROWS_AS(load_graph("{not json"), ParseError);
  CHECK_THROWS_AS(load_graph(R"({"dimension": 1, "vertices": ["a"], "edges": []})"), ParseError);
  CHECK_THROWS_AS(load_graph(R"({"name": "x", "dimension": 1, "vertices": ["a"], "edges": [["a", "z", [1]]]})"),
                  ParseError);
  CHECK_THROWS_AS(load_graph(R"({"name": "x", "dimension": 1, "vertices": ["a", "a"], "edges": []})"), ParseError);
  CHECK_THROWS_AS(load_graph(R"({"name": "x", "dimension": 1, "vertices": ["a"], "edges": [["a", "a", [1.5]]]})"),
                  ParseError);
  CHECK_THROWS_AS(
      load_graph(R"({"name": "x", "dimension": 2, "vertices": ["a"], "edges": [["a", "a", [1, 0, 0]], ["a", "a", [0, 1]]]})"),
      ValidationError);
  CHECK_THROWS_AS(load_graph(R"({"name": "x", "dimension": 1, "vertices": ["a", "b"], "edges": [["a", "a", [1]]]})"),
                  ValidationError);
  CHECK_THROWS_AS(load_graph_file("/nonexistent/graph.json"), IoError);
  try {
    load_graph(R"({"name": "x", "dimension": 1, "vertices": ["a"], "edges": [["a", "a", [0]]]})");
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK_FALSE(e.violations().empty());
  }
}

TEST_CASE("tiling names parse from ids and vertex-type notation") {
  auto kind = [](const char* s) { return parse_tiling(s).value().kind; };
  CHECK(kind("kagome") == Tiling::kagome);
  CHECK(kind("3.6.3.6") == Tiling::kagome);
  CHECK(kind("(3.6)^2") == Tiling::kagome);
  CHECK(kind("6.3.6.3") == Tiling::kagome);
  CHECK(kind("3.12.12") == Tiling::t3_12_12);
  CHECK(kind("(3.12^2)") == Tiling::t3_12_12);
  CHECK(kind("4.4.4.4") == Tiling::t4_4);
  CHECK(kind("4^4") == Tiling::t4_4);
  CHECK(kind("3^6") == Tiling::t3_6);
  CHECK(kind("6.6.6") == Tiling::t6_3);
  CHECK(kind("3^4.6") == Tiling::t3_4_6);
  CHECK(kind("3.3.3.4.4") == Tiling::t3_3_4_2);
  CHECK(kind("3.3.4.3.4") == Tiling::t3_2_4_3_4);
  CHECK(kind("3.4.3.3.4") == Tiling::t3_2_4_3_4);
  CHECK(kind("4.8.8") == Tiling::t4_8_8);
  CHECK(kind("4.6.12") == Tiling::t4_6_12);
  CHECK(kind("12.6.4") == Tiling::t4_6_12);
  CHECK(kind("3.4.6.4") == Tiling::t3_4_6_4);
  CHECK(kind("T3_4_6") == Tiling::t3_4_6);
  CHECK(parse_tiling("z_d(3)") == TilingName::z(3));
  CHECK(parse_tiling("z2") == TilingName::z(2));
  CHECK(parse_tiling("Z^1") == TilingName::z(1));
  CHECK(parse_tiling("non_archimedean_example") == TilingName::non_archimedean(0.0));
  CHECK(parse_tiling("non_archimedean_example(2.5)") == TilingName::non_archimedean(2.5));
  CHECK_FALSE(parse_tiling("3.3.3.3").has_value());
  CHECK_FALSE(parse_tiling("penrose").has_value());
  CHECK_FALSE(parse_tiling("z_d(0)").has_value());
  CHECK_FALSE(parse_tiling("").has_value());
}

TEST_CASE("ids and notation round-trip through the parser") {
  for (const auto& t : every_catalog_entry()) {
    CAPTURE(t.id());
    CHECK(parse_tiling(t.id()) == t);
    if (t.kind != Tiling::non_archimedean_example) CHECK(parse_tiling(t.notation()) == t);
  }
  CHECK(archimedean_tilings().size() == 11);
}
