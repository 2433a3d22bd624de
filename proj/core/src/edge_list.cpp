#include "sgof/edge_list.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "sgof/errors.hpp"

namespace sgof {

LabeledGraph read_edge_list(std::istream& in) {
  std::unordered_map<std::string, vertex_id> ids;
  std::vector<std::string> labels;
  std::vector<Edge> edges;
  const auto intern = [&](const std::string& token) {
    const auto [it, inserted] = ids.try_emplace(token, static_cast<vertex_id>(labels.size()));
    if (inserted) labels.push_back(token);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::istringstream fields(line);
    std::string a, b, extra;
    if (!(fields >> a >> b)) throw parse_error("expected two vertex tokens", line_no);
    if (fields >> extra) throw parse_error("expected two vertex tokens, found more", line_no);
    const auto u = intern(a);
    const auto v = intern(b);
    edges.push_back({u, v});
  }
  if (in.bad()) throw parse_error("read error", line_no);

  LabeledGraph out;
  out.graph = Graph::from_edges(labels.size(), edges);
  out.labels = std::move(labels);
  return out;
}

LabeledGraph read_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open " + path.string(), 0);
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

void write_edge_list(const std::filesystem::path& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_edge_list(out, g);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

Graph with_isolates(const Graph& g, std::size_t extra) {
  const auto edges = g.edges();
  auto out = Graph::from_edges(g.num_vertices() + extra, edges);
  out.set_construction(g.construction());
  return out;
}

Graph without_isolates(const Graph& g) {
  std::vector<vertex_id> keep;
  for (vertex_id v = 0; v < g.num_vertices(); ++v) {
    if (g.degree(v) > 0) keep.push_back(v);
  }
  auto sub = induced_subgraph(g, keep);
  if (!g.parent_ids().empty()) {
    std::vector<vertex_id> ids;
    ids.reserve(keep.size());
    for (const auto v : keep) ids.push_back(g.parent_ids()[v]);
    sub.set_parent_ids(std::move(ids));
  }
  return sub;
}

}  // namespace sgof
