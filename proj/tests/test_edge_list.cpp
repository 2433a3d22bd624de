#include <gtest/gtest.h>

#include <sstream>

#include "sgof/edge_list.hpp"
#include "sgof/errors.hpp"
#include "test_graphs.hpp"

using namespace sgof;

TEST(EdgeList, TokensMapInFirstSeenOrder) {
  std::istringstream in("# yeast screen\nYAL001C YBR002W\n\nYBR002W  YCL003X\n\tYAL001C\tYCL003X\n");
  const auto g = read_edge_list(in);
  EXPECT_EQ(g.labels, (std::vector<std::string>{"YAL001C", "YBR002W", "YCL003X"}));
  EXPECT_EQ(g.graph.num_edges(), 3u);
  EXPECT_TRUE(g.graph.has_edge(0, 2));
}

TEST(EdgeList, SelfLoopsAndDuplicatesCollapsed) {
  std::istringstream in("a b\nb a\nc c\na b\nb c\n");
  const auto g = read_edge_list(in);
  EXPECT_EQ(g.graph.num_vertices(), 3u);
  EXPECT_EQ(g.graph.num_edges(), 2u);
  EXPECT_EQ(g.graph.construction().self_loops_dropped, 1u);
  EXPECT_EQ(g.graph.construction().duplicate_edges_dropped, 2u);
}

TEST(EdgeList, ParseErrorsCarryLineNumbers) {
  std::istringstream one("a b\n# fine\nlonely\n");
  try {
    read_edge_list(one);
    FAIL();
  } catch (const parse_error& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
  std::istringstream three("a b\nx y z\n");
  try {
    read_edge_list(three);
    FAIL();
  } catch (const parse_error& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(EdgeList, EmptyInputGivesEmptyGraph) {
  std::istringstream in("# nothing\n\n");
  const auto g = read_edge_list(in);
  EXPECT_EQ(g.graph.num_vertices(), 0u);
  EXPECT_EQ(g.graph.num_edges(), 0u);
}

TEST(EdgeList, RoundTrip) {
  const auto g = testing_graphs::petersen();
  std::stringstream buf;
  write_edge_list(buf, g);
  const auto back = read_edge_list(buf);
  EXPECT_EQ(back.graph.num_edges(), g.num_edges());
  EXPECT_EQ(degree_distribution(back.graph).pmf, degree_distribution(g).pmf);
}

TEST(EdgeList, IsolateHelpers) {
  const auto g = testing_graphs::cycle(4);
  const auto padded = with_isolates(g, 3);
  EXPECT_EQ(padded.num_vertices(), 7u);
  EXPECT_EQ(padded.num_edges(), 4u);
  const auto stripped = without_isolates(padded);
  EXPECT_EQ(stripped.num_vertices(), 4u);
  EXPECT_EQ(stripped.edges(), g.edges());
}
