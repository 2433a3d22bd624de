#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "sgof/graph.hpp"

namespace sgof {

/// A graph read from an edge list together with the original vertex tokens.
struct LabeledGraph {
  Graph graph;
  std::vector<std::string> labels;  // labels[i] is the token of vertex i
};

/// Reads whitespace-separated "u v" pairs, one per line. Blank lines and
/// lines starting with '#' are skipped. Tokens map to dense ids in first-seen
/// order. Self-loops are dropped and duplicate edges collapsed; both are
/// counted in graph.construction(). Throws parse_error with the offending line
/// number when a line does not hold exactly two tokens.
LabeledGraph read_edge_list(std::istream& in);
LabeledGraph read_edge_list(const std::filesystem::path& path);

/// Writes one "u v" line per edge (u < v) using 0-based integer ids.
void write_edge_list(std::ostream& out, const Graph& g);
void write_edge_list(const std::filesystem::path& path, const Graph& g);

/// Same graph with `extra` isolated vertices appended.
Graph with_isolates(const Graph& g, std::size_t extra);

/// Subgraph induced on the vertices of nonzero degree.
Graph without_isolates(const Graph& g);

}  // namespace sgof
