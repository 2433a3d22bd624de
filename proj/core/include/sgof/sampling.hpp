#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "sgof/graph.hpp"

namespace sgof {

/// How vertices (and, through edge_retention, edges) reach the observed
/// subgraph.
struct SamplingDesign {
  enum class Kind { srs, bernoulli };

  Kind kind = Kind::srs;
  std::size_t sample_size = 0;   // srs
  double inclusion_prob = 1.0;   // bernoulli
  double edge_retention = 1.0;   // chance a population edge between sampled vertices is observed

  static SamplingDesign srs(std::size_t n, double edge_retention = 1.0);
  static SamplingDesign bernoulli(double p, double edge_retention = 1.0);

  /// Throws sgof::invalid_argument if the design cannot be applied to a
  /// population of `population_size` vertices.
  void validate(std::size_t population_size) const;

  /// Per-vertex inclusion probability: p, or n/N for SRS.
  double vertex_rate(std::size_t population_size) const;

  std::string describe() const;
};

/// Draws vertices per the design, takes the induced subgraph and then drops
/// each surviving edge with probability 1 - edge_retention. Vertex selection
/// and edge deletion use separate streams derived from `seed`, so the vertex
/// sample does not depend on edge_retention. Isolated vertices are kept.
Graph draw_sample(const Graph& g, const SamplingDesign& design, std::uint64_t seed);

}  // namespace sgof
