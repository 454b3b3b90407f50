#include "mwtree/io.hpp"

#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "fixtures.hpp"

namespace mwtree {
namespace {

using namespace mwtree::testing;

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

io::ParseError parse_failure(const std::string& text) {
  try {
    io::parse_graph(text);
  } catch (const io::ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "parsed: " << text;
  return io::ParseError("none");
}

bool same_graph(const MatrixWeightedGraph& a, const MatrixWeightedGraph& b) {
  if (a.n != b.n || a.s != b.s || a.edges.size() != b.edges.size()) return false;
  for (std::size_t k = 0; k < a.edges.size(); ++k) {
    if (a.edges[k].u != b.edges[k].u || a.edges[k].v != b.edges[k].v ||
        a.edges[k].weight != b.edges[k].weight)
      return false;
  }
  return true;
}

TEST(GraphFile, DataFixturesMatchBuilders) {
  EXPECT_TRUE(same_graph(io::parse_graph(slurp(data_path("mixed_path4.json"))), mixed_path4()));
  EXPECT_TRUE(
      same_graph(io::parse_graph(slurp(data_path("swap_cycle4.json"))), swap_cycle4()));
  EXPECT_TRUE(
      same_graph(io::parse_graph(slurp(data_path("k4_minus_edge.json"))), k4_minus_edge()));
  EXPECT_TRUE(same_graph(io::parse_graph(slurp(data_path("c4_cycle.json"))), cycle4_scalar()));
}

TEST(GraphFile, RoundTripsThroughJson) {
  for (const auto& g : {mixed_path4(), swap_cycle4(), k4_minus_edge()}) {
    const auto text = io::graph_to_json(g).dump();
    EXPECT_TRUE(same_graph(io::parse_graph(text), g));
  }
}

TEST(GraphFile, RoundTripIsBitExactForArbitraryDoubles) {
  const DenseMatrix w = from_rows({{0.1, 1.0 / 3.0}, {-2.5e-300, 6.02214076e23}});
  const auto g = path_graph({w});
  EXPECT_TRUE(same_graph(io::parse_graph(io::graph_to_json(g).dump()), g));
}

TEST(GraphFile, SchemaFieldOptionalButChecked) {
  EXPECT_NO_THROW(io::parse_graph(R"({"n":2,"s":1,"edges":[{"u":1,"v":2,"weight":[[1]]}]})"));
  const auto e = parse_failure(
      R"({"schema":"other/9","n":2,"s":1,"edges":[{"u":1,"v":2,"weight":[[1]]}]})");
  EXPECT_EQ(e.field(), "schema");
}

TEST(GraphFile, SyntaxErrorReportsLine) {
  const auto e = parse_failure("{\n  \"n\": 2,\n  \"s\": 1,\n  \"edges\": [ oops ]\n}");
  ASSERT_TRUE(e.line().has_value());
  EXPECT_EQ(*e.line(), 4u);
  EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos);
}

TEST(GraphFile, UnknownFieldsRejected) {
  EXPECT_EQ(parse_failure(R"({"n":2,"s":1,"extra":0,"edges":[]})").field(), "extra");
  EXPECT_EQ(
      parse_failure(R"({"n":2,"s":1,"edges":[{"u":1,"v":2,"w":1,"weight":[[1]]}]})").field(),
      "edges[0].w");
}

TEST(GraphFile, FieldDiagnostics) {
  EXPECT_EQ(parse_failure(R"({"s":1,"edges":[]})").field(), "n");
  EXPECT_EQ(parse_failure(R"({"n":2.5,"s":1,"edges":[]})").field(), "n");
  EXPECT_EQ(parse_failure(R"({"n":2,"s":1,"edges":[{"u":1,"v":2}]})").field(),
            "edges[0].weight");
  EXPECT_EQ(parse_failure(R"({"n":2,"s":1,"edges":[{"u":1,"v":2,"weight":[["x"]]}]})").field(),
            "edges[0].weight[0][0]");
  EXPECT_EQ(parse_failure(R"({"n":2,"s":1,"edges":[{"u":1,"v":2,"weight":[]}]})").field(),
            "edges[0].weight");
  EXPECT_EQ(
      parse_failure(R"({"n":3,"s":1,"edges":[{"u":1,"v":2,"weight":[[1]]},
                                          {"u":2,"v":3,"weight":[[1],[2,3]]}]})")
          .field(),
      "edges[1].weight[1]");
}

TEST(GraphFile, ValidationFailuresNameTheEdge) {
  const auto shape =
      parse_failure(R"({"n":2,"s":2,"edges":[{"u":1,"v":2,"weight":[[1]]}]})");
  EXPECT_EQ(shape.field(), "edges[0]");
  EXPECT_NE(std::string(shape.what()).find("BadWeightShape"), std::string::npos);

  const auto orient =
      parse_failure(R"({"n":2,"s":1,"edges":[{"u":2,"v":1,"weight":[[1]]}]})");
  EXPECT_EQ(orient.field(), "edges[0]");

  const auto disconnected = parse_failure(
      R"({"n":4,"s":1,"edges":[{"u":1,"v":2,"weight":[[1]]},{"u":3,"v":4,"weight":[[1]]}]})");
  EXPECT_NE(std::string(disconnected.what()).find("NotConnected"), std::string::npos);
}

TEST(MatrixJson, RowMajorLayout) {
  const DenseMatrix m = from_rows({{1, 2, 3}, {4, 5, 6}});
  const auto j = io::matrix_to_json(m);
  EXPECT_EQ(j.dump(), "[[1.0,2.0,3.0],[4.0,5.0,6.0]]");
  EXPECT_EQ(io::matrix_from_json(j), m);
}

}  // namespace
}  // namespace mwtree
