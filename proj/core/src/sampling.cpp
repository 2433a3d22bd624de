#include "sgof/sampling.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <random>

#include "sgof/errors.hpp"
#include "sgof/rng.hpp"

namespace sgof {

namespace {

constexpr std::uint64_t vertex_stream = 0;
constexpr std::uint64_t edge_stream = 1;

}  // namespace

SamplingDesign SamplingDesign::srs(std::size_t n, double edge_retention) {
  SamplingDesign d;
  d.kind = Kind::srs;
  d.sample_size = n;
  d.edge_retention = edge_retention;
  return d;
}

SamplingDesign SamplingDesign::bernoulli(double p, double edge_retention) {
  SamplingDesign d;
  d.kind = Kind::bernoulli;
  d.inclusion_prob = p;
  d.edge_retention = edge_retention;
  return d;
}

void SamplingDesign::validate(std::size_t population_size) const {
  // r = 0 is a valid sampling design (every edge missed) even though no
  // design matrix can be built for it.
  if (!(edge_retention >= 0 && edge_retention <= 1)) {
    throw invalid_argument("edge retention must lie in [0, 1], got " + std::to_string(edge_retention));
  }
  if (kind == Kind::srs) {
    if (sample_size < 1 || sample_size > population_size) {
      throw invalid_argument("sample size " + std::to_string(sample_size) + " must lie in 1.." +
                             std::to_string(population_size));
    }
  } else if (!(inclusion_prob > 0 && inclusion_prob <= 1)) {
    throw invalid_argument("inclusion probability must lie in (0, 1], got " + std::to_string(inclusion_prob));
  }
}

double SamplingDesign::vertex_rate(std::size_t population_size) const {
  if (kind == Kind::bernoulli) return inclusion_prob;
  return static_cast<double>(sample_size) / static_cast<double>(population_size);
}

std::string SamplingDesign::describe() const {
  char buf[96];
  if (kind == Kind::srs) {
    std::snprintf(buf, sizeof buf, "srs(n=%zu, r=%.6g)", sample_size, edge_retention);
  } else {
    std::snprintf(buf, sizeof buf, "bernoulli(p=%.6g, r=%.6g)", inclusion_prob, edge_retention);
  }
  return buf;
}

Graph draw_sample(const Graph& g, const SamplingDesign& design, std::uint64_t seed) {
  const auto population = g.num_vertices();
  design.validate(population);

  auto vertex_rng = make_rng(derive_seed(seed, vertex_stream));
  std::vector<vertex_id> chosen;
  if (design.kind == SamplingDesign::Kind::srs) {
    std::vector<vertex_id> all(population);
    std::iota(all.begin(), all.end(), vertex_id{0});
    chosen.reserve(design.sample_size);
    std::sample(all.begin(), all.end(), std::back_inserter(chosen), design.sample_size, vertex_rng);
  } else {
    std::bernoulli_distribution keep(design.inclusion_prob);
    for (vertex_id v = 0; v < population; ++v) {
      if (keep(vertex_rng)) chosen.push_back(v);
    }
  }

  auto sub = induced_subgraph(g, chosen);
  if (design.edge_retention >= 1.0) return sub;

  auto edge_rng = make_rng(derive_seed(seed, edge_stream));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Edge> kept;
  for (const auto& e : sub.edges()) {
    if (unit(edge_rng) < design.edge_retention) kept.push_back(e);
  }
  auto thinned = Graph::from_edges(sub.num_vertices(), kept);
  thinned.set_parent_ids(std::move(chosen));
  return thinned;
}

}  // namespace sgof
