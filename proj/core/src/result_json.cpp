#include "sgof/result_json.hpp"

#include <cmath>

namespace sgof {

nlohmann::json to_json(const TestResult& result, bool include_bootstrap_statistics) {
  nlohmann::json j;
  j["family"] = result.family.name();
  j["theta_hat"] = result.estimate.theta_hat;
  j["wald"] = result.estimate.objective_value;
  j["converged"] = result.estimate.converged;
  j["D"] = result.statistic;
  if (std::isfinite(result.critical_value)) {
    j["critical_value"] = result.critical_value;
  } else {
    j["critical_value"] = nullptr;
  }
  j["critical_rank"] = result.critical_rank;
  j["quantile_convention"] = "ceil((1-alpha)(B+1))-th order statistic of surviving replicates";
  j["p_value"] = result.p_value;
  j["reject"] = result.reject;
  j["B"] = result.replicates;
  j["alpha"] = result.alpha;
  j["seed"] = result.seed;
  j["design"] = result.design;
  j["sample_size"] = result.sample_size;
  j["failed_replicates"] = result.failed_replicates;
  j["boundary_replicates"] = result.boundary_replicates;
  j["null_graph_retry_exhausted"] = result.null_graph_retry_exhausted;
  if (include_bootstrap_statistics) j["bootstrap_statistics"] = result.bootstrap_statistics;
  return j;
}

}  // namespace sgof
