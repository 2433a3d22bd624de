#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace sgof {

using vertex_id = std::uint32_t;

struct Edge {
  vertex_id u;
  vertex_id v;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// What happened while a graph was materialized from a stub matching or an
/// edge list.
struct ConstructionInfo {
  std::size_t self_loops_dropped = 0;
  std::size_t duplicate_edges_dropped = 0;
  std::size_t attempts = 1;
  bool retry_exhausted = false;

  bool was_multigraph() const noexcept { return self_loops_dropped + duplicate_edges_dropped > 0; }
};

/// Simple undirected graph in compressed adjacency form. Immutable once built.
class Graph {
 public:
  Graph() = default;

  /// Builds the simple graph on `num_vertices` vertices from a list of vertex
  /// pairs. Self-loops and repeated pairs are dropped and counted in
  /// construction(). Throws sgof::invalid_argument on out-of-range ids.
  static Graph from_edges(std::size_t num_vertices, std::span<const Edge> edges);

  std::size_t num_vertices() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t num_edges() const noexcept { return adjacency_.size() / 2; }

  std::size_t degree(vertex_id v) const { return offsets_[v + 1] - offsets_[v]; }

  /// Sorted neighbor list of v.
  std::span<const vertex_id> neighbors(vertex_id v) const {
    return {adjacency_.data() + offsets_[v], degree(v)};
  }

  bool has_edge(vertex_id u, vertex_id v) const;

  /// Every edge once, as (u, v) with u < v, in lexicographic order.
  std::vector<Edge> edges() const;

  std::vector<std::size_t> degrees() const;

  const ConstructionInfo& construction() const noexcept { return info_; }
  void set_construction(const ConstructionInfo& info) { info_ = info; }

  /// For graphs produced by induced_subgraph or sampling: the id each vertex
  /// had in the parent graph. Empty when the graph has no parent.
  std::span<const vertex_id> parent_ids() const noexcept { return parent_ids_; }
  void set_parent_ids(std::vector<vertex_id> ids);

 private:
  std::vector<std::size_t> offsets_;
  std::vector<vertex_id> adjacency_;
  std::vector<vertex_id> parent_ids_;
  ConstructionInfo info_;
};

/// Degree frequencies P(k) = #{i : d_i = k} / count_basis over k = 0..k_max.
struct DegreeDistribution {
  std::vector<double> pmf;
  std::size_t count_basis = 0;

  std::size_t max_degree() const noexcept { return pmf.empty() ? 0 : pmf.size() - 1; }
  std::vector<double> cdf() const;
};

DegreeDistribution degree_distribution(const Graph& g);

/// Builds a distribution from raw per-degree vertex counts.
DegreeDistribution distribution_from_counts(std::span<const std::size_t> counts);

struct DegreeSequence {
  std::vector<std::uint32_t> degrees;

  std::uint64_t total() const noexcept;
  std::size_t size() const noexcept { return degrees.size(); }
};

/// Converts a PMF (index = degree) into a degree sequence of length
/// n_vertices. Counts use largest-remainder rounding so they sum to
/// n_vertices exactly; ties in the remainder go to the higher degree. If the
/// resulting degree sum is odd, one stub is added to a vertex of the modal
/// degree.
DegreeSequence degree_sequence_from_pmf(std::span<const double> pmf, std::size_t n_vertices);

enum class SimplifyPolicy {
  ignore,  // drop self-loops and repeated pairs from a single matching
  retry,   // redraw the matching until it is simple
};

struct ConfigurationOptions {
  SimplifyPolicy policy = SimplifyPolicy::ignore;
  std::size_t max_attempts = 100;
  // When the retry budget runs out: throw construction_failure instead of
  // keeping the last matching with retry_exhausted set.
  bool strict = false;
};

/// Pairs adjacent entries of a permuted stub list: (s[0], s[1]), (s[2], s[3]), ...
/// The result is the multigraph before simplification.
std::vector<Edge> pair_stubs(std::span<const vertex_id> permuted_stubs);

/// Stub list with vertex i repeated degrees[i] times, in vertex order.
std::vector<vertex_id> stub_list(const DegreeSequence& seq);

/// One uniformly random perfect matching of the stubs of `seq`.
template <typename Rng>
std::vector<Edge> random_stub_matching(const DegreeSequence& seq, Rng& rng);

Graph configuration_model(const DegreeSequence& seq, std::uint64_t seed, const ConfigurationOptions& options = {});

/// Subgraph on `vertices` keeping exactly the edges with both endpoints
/// selected. Vertex i of the result is vertices[i] of g; see parent_ids().
Graph induced_subgraph(const Graph& g, std::span<const vertex_id> vertices);

}  // namespace sgof

#include <algorithm>

namespace sgof {

template <typename Rng>
std::vector<Edge> random_stub_matching(const DegreeSequence& seq, Rng& rng) {
  auto stubs = stub_list(seq);
  std::shuffle(stubs.begin(), stubs.end(), rng);
  return pair_stubs(stubs);
}

}  // namespace sgof
