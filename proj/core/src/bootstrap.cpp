#include "sgof/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sgof/errors.hpp"
#include "sgof/parallel.hpp"
#include "sgof/rng.hpp"

namespace sgof {

namespace {

constexpr std::uint64_t null_graph_stream = 0;
constexpr std::uint64_t replicate_stream = 1;

std::size_t design_columns(const FamilySpec& family, std::size_t population_size) {
  return family_k_max_over_search(family, population_size - 1) + 1;
}

struct Replicate {
  double statistic = 0;
  bool failed = false;
  bool boundary = false;
};

}  // namespace

void BootstrapConfig::validate() const {
  if (replicates < 1) throw invalid_argument("bootstrap needs at least one replicate");
  if (!(alpha > 0 && alpha < 1)) throw invalid_argument("alpha must lie in (0, 1)");
  if (population_size < 2) throw invalid_argument("population size must be at least 2");
  if (!(max_failure_fraction >= 0 && max_failure_fraction <= 1)) {
    throw invalid_argument("max_failure_fraction must lie in [0, 1]");
  }
  design.validate(population_size);
}

std::size_t critical_rank(std::size_t count, double alpha) {
  const double position = (1.0 - alpha) * static_cast<double>(count + 1);
  return static_cast<std::size_t>(std::ceil(position - 1e-9));
}

Graph build_null_graph(const FamilySpec& family, double theta, std::size_t population_size, std::uint64_t seed,
                       const ConfigurationOptions& options) {
  if (population_size < 2) throw invalid_argument("population size must be at least 2");
  const auto k_max = family_k_max(family, theta, population_size - 1);
  const auto pmf = family_pmf(family, theta, k_max);
  const auto seq = degree_sequence_from_pmf(pmf.values, population_size);
  return configuration_model(seq, seed, options);
}

std::vector<double> bootstrap_distribution(double theta_hat, const FamilySpec& family, const BootstrapConfig& config,
                                           std::size_t* failures, std::size_t* boundary, bool* retry_exhausted) {
  config.validate();
  const auto null_graph = build_null_graph(family, theta_hat, config.population_size,
                                           derive_seed(config.seed, null_graph_stream), config.null_graph);
  if (retry_exhausted != nullptr) *retry_exhausted = null_graph.construction().retry_exhausted;
  const auto design = design_for(config.design, config.population_size, design_columns(family, config.population_size));

  std::vector<Replicate> results(config.replicates);
  parallel_for(config.replicates, config.threads, [&](std::size_t b) {
    auto& out = results[b];
    try {
      const auto pseudo = draw_sample(null_graph, config.design, derive_seed(config.seed, replicate_stream, b));
      GmmObjective objective(make_problem(pseudo, design, family, config.zero_truncated, config.weighting));
      const auto est = estimate_theta(objective);
      out.statistic = objective.ks(est.theta_hat);
      out.boundary = !est.converged;
    } catch (const estimation_failure&) {
      out.failed = true;
    }
  });

  std::vector<double> statistics;
  statistics.reserve(results.size());
  std::size_t failed = 0;
  std::size_t at_boundary = 0;
  for (const auto& r : results) {
    if (r.failed) {
      ++failed;
      continue;
    }
    at_boundary += r.boundary ? 1 : 0;
    statistics.push_back(r.statistic);
  }
  if (static_cast<double>(failed) > config.max_failure_fraction * static_cast<double>(config.replicates) ||
      statistics.empty()) {
    throw test_failure(std::to_string(failed) + " of " + std::to_string(config.replicates) +
                       " bootstrap replicates failed to estimate " + family.name() + " parameter at theta " +
                       std::to_string(theta_hat));
  }
  if (failures != nullptr) *failures = failed;
  if (boundary != nullptr) *boundary = at_boundary;
  return statistics;
}

TestResult run_test(const Graph& sample, const FamilySpec& family, const BootstrapConfig& config) {
  config.validate();
  if (sample.num_vertices() == 0) throw invalid_argument("sample has no vertices");
  if (sample.num_vertices() > config.population_size) {
    throw invalid_argument("sample has more vertices than the population");
  }
  if (config.design.kind == SamplingDesign::Kind::srs) {
    const bool exact = sample.num_vertices() == config.design.sample_size;
    const bool isolates_missing = config.zero_truncated && sample.num_vertices() <= config.design.sample_size;
    if (!exact && !isolates_missing) {
      throw invalid_argument("sample has " + std::to_string(sample.num_vertices()) +
                             " vertices but the design draws " + std::to_string(config.design.sample_size));
    }
  }

  const auto design = design_for(config.design, config.population_size, design_columns(family, config.population_size));
  GmmObjective objective(make_problem(sample, design, family, config.zero_truncated, config.weighting));

  TestResult result;
  result.family = family;
  result.estimate = estimate_theta(objective);
  result.statistic = objective.ks(result.estimate.theta_hat);
  result.sample_size = static_cast<std::size_t>(objective.problem().sample_size);
  result.replicates = config.replicates;
  result.alpha = config.alpha;
  result.seed = config.seed;
  result.design = config.design.describe() + " " + design->describe();

  result.bootstrap_statistics =
      bootstrap_distribution(result.estimate.theta_hat, family, config, &result.failed_replicates,
                             &result.boundary_replicates, &result.null_graph_retry_exhausted);

  auto sorted = result.bootstrap_statistics;
  std::sort(sorted.begin(), sorted.end());
  const auto rank = critical_rank(sorted.size(), config.alpha);
  if (rank >= 1 && rank <= sorted.size()) {
    result.critical_rank = rank;
    result.critical_value = sorted[rank - 1];
  } else {
    result.critical_rank = 0;
    result.critical_value = std::numeric_limits<double>::infinity();
  }
  const auto at_least = static_cast<std::size_t>(
      sorted.end() - std::lower_bound(sorted.begin(), sorted.end(), result.statistic));
  result.p_value = static_cast<double>(1 + at_least) / static_cast<double>(sorted.size() + 1);
  result.reject = result.statistic > result.critical_value;
  return result;
}

}  // namespace sgof
