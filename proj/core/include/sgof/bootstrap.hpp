#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "sgof/design.hpp"
#include "sgof/estimate.hpp"
#include "sgof/families.hpp"
#include "sgof/graph.hpp"
#include "sgof/sampling.hpp"

namespace sgof {

struct BootstrapConfig {
  std::size_t replicates = 500;
  double alpha = 0.05;
  std::size_t population_size = 0;
  SamplingDesign design;
  std::uint64_t seed = 0;
  ConfigurationOptions null_graph;
  Weighting weighting = Weighting::observed_diag;
  // Remove isolates from the observed sample and every pseudo-sample.
  bool zero_truncated = false;
  // Abort when more than this fraction of replicates fail to estimate.
  double max_failure_fraction = 0.2;
  unsigned threads = 1;

  void validate() const;
};

struct TestResult {
  FamilySpec family;
  Estimate estimate;
  double statistic = 0;  // D of the observed sample
  std::vector<double> bootstrap_statistics;
  double critical_value = 0;  // +inf when too few replicates for the level
  std::size_t critical_rank = 0;  // 1-based order statistic used, 0 if none
  double p_value = 1;
  bool reject = false;
  std::size_t failed_replicates = 0;
  std::size_t boundary_replicates = 0;  // replicates whose θ̂* hit the search boundary
  std::size_t sample_size = 0;
  bool null_graph_retry_exhausted = false;

  // Configuration echoed for serialization.
  std::size_t replicates = 0;
  double alpha = 0;
  std::uint64_t seed = 0;
  std::string design;
};

/// Critical value convention: the ceil((1-α)(B+1))-th smallest of B values,
/// or +inf when that rank exceeds B.
std::size_t critical_rank(std::size_t count, double alpha);

/// Null graph on N vertices whose degree sequence follows family(θ).
Graph build_null_graph(const FamilySpec& family, double theta, std::size_t population_size, std::uint64_t seed,
                       const ConfigurationOptions& options);

/// Draws B induced subgraphs from a null graph built at theta_hat and returns
/// D* for each. Failed replicates are omitted; `failures` receives their
/// count when non-null.
std::vector<double> bootstrap_distribution(double theta_hat, const FamilySpec& family, const BootstrapConfig& config,
                                           std::size_t* failures = nullptr, std::size_t* boundary = nullptr,
                                           bool* retry_exhausted = nullptr);

TestResult run_test(const Graph& sample, const FamilySpec& family, const BootstrapConfig& config);

}  // namespace sgof
