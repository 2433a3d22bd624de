#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "sgof/design.hpp"
#include "sgof/families.hpp"
#include "sgof/graph.hpp"

namespace sgof {

/// Weighting matrix of the GMM quadratic form.
enum class Weighting {
  observed_diag,       // [diag(P_obs)]^+
  model_diag,          // [diag(X P0(θ))]^+
  model_diag_literal,  // diag(X P0(θ)), no inverse
};

struct GmmProblem {
  std::vector<double> observed_pmf;  // sampled-degree PMF, index = degree
  std::shared_ptr<const DesignMatrix> design;
  FamilySpec family;
  double sample_size = 0;  // n in the √n and n factors
  Weighting weighting = Weighting::observed_diag;
  // Condition both the observed and model PMFs on degree >= 1 (unobserved
  // isolates).
  bool zero_truncated = false;

  /// Throws sgof::invalid_argument on empty or unnormalized input.
  void validate() const;
};

/// Builds a problem from an observed subgraph. With zero_truncated the sample
/// size is the number of non-isolated vertices.
GmmProblem make_problem(const Graph& sample, std::shared_ptr<const DesignMatrix> design, const FamilySpec& family,
                        bool zero_truncated, Weighting weighting = Weighting::observed_diag);

struct Estimate {
  double theta_hat = 0;
  double objective_value = 0;  // the Wald statistic
  std::size_t iterations = 0;  // objective evaluations
  bool converged = false;      // false when θ̂ sits on the search boundary
};

/// Precomputed evaluator for one problem. Evaluates the objective, the model
/// PMF and the KS statistic for many θ. Not thread-safe.
class GmmObjective {
 public:
  explicit GmmObjective(const GmmProblem& problem);

  /// n (P - X P0(θ))' W (P - X P0(θ)). Throws sgof::invalid_argument when θ
  /// is outside the family's parameter domain.
  double operator()(double theta);

  /// √n sup_i |F_obs(i) - F_model(i)| with F_model the CDF of X P0(θ).
  double ks(double theta);

  /// Model PMF X P0(θ) on rows 0..last_row(), conditioned on degree >= 1 when
  /// the problem is zero-truncated.
  std::span<const double> model_pmf(double theta);

  /// Observed PMF after conditioning.
  std::span<const double> observed() const noexcept { return observed_; }

  std::size_t last_row() const noexcept { return last_row_; }
  const GmmProblem& problem() const noexcept { return problem_; }

 private:
  void evaluate_model(double theta);

  GmmProblem problem_;
  std::size_t first_row_ = 0;  // 1 when zero-truncated
  std::size_t last_row_ = 0;
  std::vector<double> observed_;
  std::vector<double> tail_mass_;      // column mass beyond last_row_
  std::vector<double> nonzero_mass_;   // column mass in rows >= 1
  FamilyEvaluator family_;
  std::vector<double> p0_;
  std::vector<double> model_;
  double model_tail_ = 0;  // model mass beyond last_row_, after conditioning
  double cached_theta_ = 0;
  bool cache_valid_ = false;
};

double gmm_objective(const GmmProblem& problem, double theta);

/// Minimizes the GMM objective over the family's search domain: objective on
/// 8 log-spaced points, then Brent's method around every local minimum of
/// that grid. Throws estimation_failure when the observed PMF puts no mass
/// above the family's support minimum.
Estimate estimate_theta(const GmmProblem& problem);
Estimate estimate_theta(GmmObjective& objective);

double ks_statistic(std::span<const double> observed_pmf, std::shared_ptr<const DesignMatrix> design,
                    const FamilySpec& family, double theta_hat, double n, bool zero_truncated = false);

double wald_statistic(const GmmProblem& problem, double theta_hat);

}  // namespace sgof
