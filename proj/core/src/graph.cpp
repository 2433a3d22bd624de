#include "sgof/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sgof/errors.hpp"
#include "sgof/rng.hpp"

namespace sgof {

Graph Graph::from_edges(std::size_t num_vertices, std::span<const Edge> edges) {
  ConstructionInfo info;
  std::vector<Edge> normalized;
  normalized.reserve(edges.size());
  for (const auto& e : edges) {
    if (e.u >= num_vertices || e.v >= num_vertices) {
      throw invalid_argument("edge {" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                             "} references a vertex outside 0.." + std::to_string(num_vertices) + "-1");
    }
    if (e.u == e.v) {
      ++info.self_loops_dropped;
      continue;
    }
    normalized.push_back(e.u < e.v ? e : Edge{e.v, e.u});
  }
  std::sort(normalized.begin(), normalized.end());
  const auto last = std::unique(normalized.begin(), normalized.end());
  info.duplicate_edges_dropped = static_cast<std::size_t>(normalized.end() - last);
  normalized.erase(last, normalized.end());

  Graph g;
  g.info_ = info;
  g.offsets_.assign(num_vertices + 1, 0);
  for (const auto& e : normalized) {
    ++g.offsets_[e.u + 1];
    ++g.offsets_[e.v + 1];
  }
  std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
  g.adjacency_.resize(normalized.size() * 2);
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& e : normalized) {
    g.adjacency_[cursor[e.u]++] = e.v;
    g.adjacency_[cursor[e.v]++] = e.u;
  }
  for (std::size_t v = 0; v < num_vertices; ++v) {
    std::sort(g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]),
              g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]));
  }
  return g;
}

bool Graph::has_edge(vertex_id u, vertex_id v) const {
  if (u >= num_vertices() || v >= num_vertices()) return false;
  const auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (vertex_id u = 0; u < num_vertices(); ++u) {
    for (const auto v : neighbors(u)) {
      if (u < v) out.push_back({u, v});
    }
  }
  return out;
}

std::vector<std::size_t> Graph::degrees() const {
  std::vector<std::size_t> out(num_vertices());
  for (vertex_id v = 0; v < num_vertices(); ++v) out[v] = degree(v);
  return out;
}

void Graph::set_parent_ids(std::vector<vertex_id> ids) {
  if (!ids.empty() && ids.size() != num_vertices()) {
    throw invalid_argument("parent id map has " + std::to_string(ids.size()) + " entries for " +
                           std::to_string(num_vertices()) + " vertices");
  }
  parent_ids_ = std::move(ids);
}

std::vector<double> DegreeDistribution::cdf() const {
  std::vector<double> out(pmf.size());
  std::partial_sum(pmf.begin(), pmf.end(), out.begin());
  return out;
}

DegreeDistribution distribution_from_counts(std::span<const std::size_t> counts) {
  DegreeDistribution d;
  d.count_basis = std::accumulate(counts.begin(), counts.end(), std::size_t{0});
  std::size_t top = counts.size();
  while (top > 1 && counts[top - 1] == 0) --top;
  d.pmf.assign(std::max<std::size_t>(top, 1), 0.0);
  if (d.count_basis == 0) return d;
  const auto basis = static_cast<double>(d.count_basis);
  for (std::size_t k = 0; k < top; ++k) d.pmf[k] = static_cast<double>(counts[k]) / basis;
  return d;
}

DegreeDistribution degree_distribution(const Graph& g) {
  std::vector<std::size_t> counts;
  for (vertex_id v = 0; v < g.num_vertices(); ++v) {
    const auto d = g.degree(v);
    if (d >= counts.size()) counts.resize(d + 1, 0);
    ++counts[d];
  }
  return distribution_from_counts(counts);
}

std::uint64_t DegreeSequence::total() const noexcept {
  return std::accumulate(degrees.begin(), degrees.end(), std::uint64_t{0});
}

DegreeSequence degree_sequence_from_pmf(std::span<const double> pmf, std::size_t n_vertices) {
  if (n_vertices == 0) throw invalid_argument("degree sequence needs at least one vertex");
  if (pmf.empty()) throw invalid_argument("empty pmf");
  double mass = 0;
  for (const auto x : pmf) {
    if (!(x >= 0)) throw invalid_argument("pmf has a negative or NaN entry");
    mass += x;
  }
  if (std::abs(mass - 1.0) > 1e-9) throw invalid_argument("pmf sums to " + std::to_string(mass) + ", not 1");

  const auto n = static_cast<double>(n_vertices);
  std::vector<std::size_t> counts(pmf.size());
  std::vector<double> remainder(pmf.size());
  std::size_t assigned = 0;
  for (std::size_t k = 0; k < pmf.size(); ++k) {
    const double share = n * pmf[k] / mass;
    counts[k] = static_cast<std::size_t>(std::floor(share));
    remainder[k] = share - static_cast<double>(counts[k]);
    assigned += counts[k];
  }
  if (assigned > n_vertices) throw invalid_argument("pmf rounding overflowed the vertex count");

  std::vector<std::size_t> order(pmf.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (remainder[a] != remainder[b]) return remainder[a] > remainder[b];
    return a > b;
  });
  for (std::size_t i = 0; assigned < n_vertices; ++i) {
    ++counts[order[i % order.size()]];
    ++assigned;
  }

  DegreeSequence seq;
  seq.degrees.reserve(n_vertices);
  std::uint64_t total = 0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    seq.degrees.insert(seq.degrees.end(), counts[k], static_cast<std::uint32_t>(k));
    total += static_cast<std::uint64_t>(k) * counts[k];
  }

  if (total % 2 == 1) {
    // Parity repair: one extra stub on the first vertex of the modal degree.
    const auto modal = static_cast<std::uint32_t>(std::max_element(counts.begin(), counts.end()) - counts.begin());
    const auto it = std::find(seq.degrees.begin(), seq.degrees.end(), modal);
    ++*it;
  }
  return seq;
}

std::vector<Edge> pair_stubs(std::span<const vertex_id> permuted_stubs) {
  if (permuted_stubs.size() % 2 != 0) {
    throw invalid_argument("stub count " + std::to_string(permuted_stubs.size()) +
                           " is odd; a degree sequence needs an even sum");
  }
  std::vector<Edge> out;
  out.reserve(permuted_stubs.size() / 2);
  for (std::size_t i = 0; i + 1 < permuted_stubs.size(); i += 2) {
    out.push_back({permuted_stubs[i], permuted_stubs[i + 1]});
  }
  return out;
}

std::vector<vertex_id> stub_list(const DegreeSequence& seq) {
  std::vector<vertex_id> stubs;
  stubs.reserve(seq.total());
  for (std::size_t v = 0; v < seq.size(); ++v) {
    stubs.insert(stubs.end(), seq.degrees[v], static_cast<vertex_id>(v));
  }
  return stubs;
}

Graph configuration_model(const DegreeSequence& seq, std::uint64_t seed, const ConfigurationOptions& options) {
  if (seq.total() % 2 != 0) {
    throw invalid_argument("degree sum " + std::to_string(seq.total()) + " is odd");
  }
  if (options.max_attempts == 0) throw invalid_argument("max_attempts must be positive");

  auto rng = make_rng(seed);
  const auto base = stub_list(seq);
  std::vector<vertex_id> stubs;
  Graph g;
  std::size_t attempt = 0;
  while (true) {
    ++attempt;
    stubs = base;
    std::shuffle(stubs.begin(), stubs.end(), rng);
    g = Graph::from_edges(seq.size(), pair_stubs(stubs));
    if (options.policy == SimplifyPolicy::ignore || !g.construction().was_multigraph()) break;
    if (attempt >= options.max_attempts) {
      if (options.strict) {
        throw construction_failure("no simple graph after " + std::to_string(options.max_attempts) +
                                   " configuration-model attempts");
      }
      auto info = g.construction();
      info.retry_exhausted = true;
      info.attempts = attempt;
      g.set_construction(info);
      return g;
    }
  }
  auto info = g.construction();
  info.attempts = attempt;
  g.set_construction(info);
  return g;
}

Graph induced_subgraph(const Graph& g, std::span<const vertex_id> vertices) {
  constexpr auto unmapped = static_cast<vertex_id>(-1);
  std::vector<vertex_id> local(g.num_vertices(), unmapped);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const auto v = vertices[i];
    if (v >= g.num_vertices()) {
      throw invalid_argument("vertex " + std::to_string(v) + " is not in a graph of " +
                             std::to_string(g.num_vertices()) + " vertices");
    }
    if (local[v] != unmapped) throw invalid_argument("vertex " + std::to_string(v) + " selected twice");
    local[v] = static_cast<vertex_id>(i);
  }
  std::vector<Edge> kept;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (const auto w : g.neighbors(vertices[i])) {
      const auto j = local[w];
      if (j != unmapped && i < j) kept.push_back({static_cast<vertex_id>(i), j});
    }
  }
  auto sub = Graph::from_edges(vertices.size(), kept);
  sub.set_parent_ids({vertices.begin(), vertices.end()});
  return sub;
}

}  // namespace sgof
