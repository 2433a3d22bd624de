#include "sgof/estimate.hpp"

#include <algorithm>
#include <array>
#include <cfloat>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <boost/math/tools/minima.hpp>

#include "sgof/errors.hpp"

namespace sgof {

namespace {

constexpr std::size_t grid_points = 8;
// Objective values are capped here before they reach Brent's parabolic
// interpolation, which cannot work with infinities.
constexpr double objective_cap = 1e200;

}  // namespace

void GmmProblem::validate() const {
  if (!design) throw invalid_argument("GMM problem has no design matrix");
  if (observed_pmf.empty()) throw invalid_argument("observed pmf is empty");
  if (!(sample_size >= 1)) throw invalid_argument("sample size must be at least 1");
  double mass = 0;
  for (const auto p : observed_pmf) {
    if (!(p >= 0)) throw invalid_argument("observed pmf has a negative or NaN entry");
    mass += p;
  }
  if (std::abs(mass - 1.0) > 1e-9) throw invalid_argument("observed pmf sums to " + std::to_string(mass));
  std::size_t top = observed_pmf.size();
  while (top > 0 && observed_pmf[top - 1] == 0) --top;
  if (top > design->rows()) {
    throw invalid_argument("observed degree " + std::to_string(top - 1) + " exceeds the design's " +
                           std::to_string(design->rows()) + " rows");
  }
  if (design->cols() <= family.support_min()) throw invalid_argument("design has too few columns for the family");
}

GmmProblem make_problem(const Graph& sample, std::shared_ptr<const DesignMatrix> design, const FamilySpec& family,
                        bool zero_truncated, Weighting weighting) {
  if (sample.num_vertices() == 0) throw invalid_argument("sample has no vertices");
  auto dist = degree_distribution(sample);
  GmmProblem problem;
  problem.design = std::move(design);
  problem.family = family;
  problem.weighting = weighting;
  problem.zero_truncated = zero_truncated;
  const double isolated = dist.pmf[0] * static_cast<double>(dist.count_basis);
  problem.sample_size =
      zero_truncated ? static_cast<double>(dist.count_basis) - std::round(isolated) : static_cast<double>(dist.count_basis);
  problem.observed_pmf = std::move(dist.pmf);
  if (problem.sample_size < 1) throw estimation_failure("sample has no vertex of positive degree");
  return problem;
}

GmmObjective::GmmObjective(const GmmProblem& problem)
    : problem_(problem), family_(problem.family, [&] {
        problem.validate();
        return problem.design->cols() - 1;
      }()) {
  const auto& x = *problem_.design;
  first_row_ = problem_.zero_truncated ? 1 : 0;

  observed_.assign(problem_.observed_pmf.begin(), problem_.observed_pmf.end());
  if (problem_.zero_truncated) {
    const double kept = 1.0 - observed_[0];
    observed_[0] = 0;
    if (kept > 0) {
      for (auto& p : observed_) p /= kept;
    }
  }
  last_row_ = first_row_;
  for (std::size_t i = observed_.size(); i-- > first_row_;) {
    if (observed_[i] > 0) {
      last_row_ = i;
      break;
    }
  }
  if (problem_.weighting == Weighting::model_diag_literal) last_row_ = x.rows() - 1;
  last_row_ = std::min(last_row_, x.rows() - 1);
  observed_.resize(last_row_ + 1, 0.0);

  tail_mass_.resize(x.cols());
  nonzero_mass_.resize(x.cols());
  for (std::size_t k = 0; k < x.cols(); ++k) {
    const auto first = x.first_row(k);
    const auto col = x.column(k);
    double tail = 0;
    for (std::size_t t = 0; t < col.size(); ++t) {
      if (first + t > last_row_) tail += col[t];
    }
    tail_mass_[k] = tail;
    nonzero_mass_[k] = first == 0 && !col.empty() ? x.column_mass(k) - col[0] : x.column_mass(k);
  }
  p0_.resize(x.cols());
  model_.resize(last_row_ + 1);
}

void GmmObjective::evaluate_model(double theta) {
  if (cache_valid_ && theta == cached_theta_) return;
  family_.evaluate(theta, p0_);
  apply_design_prefix(*problem_.design, p0_, model_);

  double scale = 1.0;
  model_tail_ = 0;
  if (problem_.weighting == Weighting::model_diag) {
    for (std::size_t k = 0; k < p0_.size(); ++k) model_tail_ += p0_[k] * tail_mass_[k];
  }
  if (problem_.zero_truncated) {
    double kept = 0;
    for (std::size_t k = 0; k < p0_.size(); ++k) kept += p0_[k] * nonzero_mass_[k];
    model_[0] = 0;
    if (kept > 0) {
      scale = 1.0 / kept;
      for (auto& m : model_) m *= scale;
      model_tail_ *= scale;
    } else {
      // No model mass at positive degrees: conditioning is undefined.
      model_tail_ = std::numeric_limits<double>::infinity();
    }
  }
  cached_theta_ = theta;
  cache_valid_ = true;
}

std::span<const double> GmmObjective::model_pmf(double theta) {
  evaluate_model(theta);
  return model_;
}

double GmmObjective::operator()(double theta) {
  evaluate_model(theta);
  if (!std::isfinite(model_tail_)) return std::numeric_limits<double>::infinity();
  double sum = 0;
  switch (problem_.weighting) {
    case Weighting::observed_diag:
      for (std::size_t i = first_row_; i <= last_row_; ++i) {
        const double p = observed_[i];
        if (p > DBL_MIN) {
          const double r = p - model_[i];
          sum += r * r / p;
        }
      }
      break;
    case Weighting::model_diag:
      for (std::size_t i = first_row_; i <= last_row_; ++i) {
        const double m = model_[i];
        if (m > DBL_MIN) {
          const double r = observed_[i] - m;
          sum += r * r / m;
        }
      }
      sum += model_tail_;
      break;
    case Weighting::model_diag_literal:
      for (std::size_t i = first_row_; i <= last_row_; ++i) {
        const double r = observed_[i] - model_[i];
        sum += r * r * model_[i];
      }
      break;
  }
  return problem_.sample_size * sum;
}

double GmmObjective::ks(double theta) {
  evaluate_model(theta);
  // Past last_row_ the observed CDF is 1 and the model CDF only rises, so the
  // supremum over all rows is attained on first_row_..last_row_.
  double observed_cdf = 0;
  double model_cdf = 0;
  double sup = 0;
  for (std::size_t i = first_row_; i <= last_row_; ++i) {
    observed_cdf += observed_[i];
    model_cdf += model_[i];
    sup = std::max(sup, std::abs(observed_cdf - model_cdf));
  }
  return std::sqrt(problem_.sample_size) * sup;
}

double gmm_objective(const GmmProblem& problem, double theta) {
  problem.family.check_theta(theta);
  GmmObjective objective(problem);
  return objective(theta);
}

Estimate estimate_theta(const GmmProblem& problem) {
  GmmObjective objective(problem);
  return estimate_theta(objective);
}

Estimate estimate_theta(GmmObjective& objective) {
  const auto& problem = objective.problem();
  const auto observed = objective.observed();
  const std::size_t floor_degree = problem.family.support_min();
  bool identifiable = false;
  for (std::size_t i = floor_degree + 1; i < observed.size(); ++i) {
    if (observed[i] > 0) {
      identifiable = true;
      break;
    }
  }
  if (!identifiable) {
    throw estimation_failure("observed degrees carry no mass above " + std::to_string(floor_degree) +
                             "; the " + problem.family.name() + " parameter is not identifiable");
  }

  const auto domain = problem.family.search_domain();
  std::size_t evaluations = 0;
  const auto f = [&](double theta) {
    ++evaluations;
    const double v = objective(theta);
    return std::isnan(v) ? objective_cap : std::min(v, objective_cap);
  };

  std::array<double, grid_points> xs{};
  std::array<double, grid_points> fs{};
  const double ratio = domain.upper / domain.lower;
  for (std::size_t t = 0; t < grid_points; ++t) {
    xs[t] = t + 1 == grid_points ? domain.upper
                                 : domain.lower * std::pow(ratio, static_cast<double>(t) / (grid_points - 1));
    fs[t] = f(xs[t]);
  }

  Estimate best;
  best.objective_value = std::numeric_limits<double>::infinity();
  const auto consider = [&](double theta, double value) {
    if (value < best.objective_value) {
      best.theta_hat = theta;
      best.objective_value = value;
    }
  };
  // Brent in log θ to match the grid spacing. The objective need not be
  // unimodal across a whole grid bracket, so a bracket whose Brent minimum
  // does not beat its grid point is split there and each half refined.
  const int bits = std::numeric_limits<double>::digits / 2;
  const auto g = [&](double log_theta) { return f(std::clamp(std::exp(log_theta), domain.lower, domain.upper)); };
  const auto refine = [&](double lo, double hi) {
    std::uintmax_t max_iter = 200;
    const auto [u, fu] = boost::math::tools::brent_find_minima(g, std::log(lo), std::log(hi), bits, max_iter);
    const double theta = std::clamp(std::exp(u), domain.lower, domain.upper);
    consider(theta, fu);
    return fu;
  };
  for (std::size_t t = 0; t < grid_points; ++t) {
    const bool left_ok = t == 0 || fs[t] < fs[t - 1];
    const bool right_ok = t + 1 == grid_points || fs[t] <= fs[t + 1];
    if (!left_ok || !right_ok) continue;
    consider(xs[t], fs[t]);
    const double lo = xs[t == 0 ? 0 : t - 1];
    const double hi = xs[t + 1 == grid_points ? t : t + 1];
    if (refine(lo, hi) <= fs[t]) continue;
    if (t > 0) refine(lo, xs[t]);
    if (t + 1 < grid_points) refine(xs[t], hi);
  }
  if (!std::isfinite(best.objective_value)) {
    throw estimation_failure("objective is not finite anywhere on the " + problem.family.name() + " search domain");
  }

  // Report the uncapped objective at the optimum.
  best.objective_value = objective(best.theta_hat);
  best.iterations = evaluations;
  const double edge_tol = 1e-6 * (domain.upper - domain.lower);
  best.converged = best.theta_hat - domain.lower > edge_tol && domain.upper - best.theta_hat > edge_tol;
  return best;
}

double ks_statistic(std::span<const double> observed_pmf, std::shared_ptr<const DesignMatrix> design,
                    const FamilySpec& family, double theta_hat, double n, bool zero_truncated) {
  family.check_theta(theta_hat);
  GmmProblem problem;
  problem.observed_pmf.assign(observed_pmf.begin(), observed_pmf.end());
  problem.design = std::move(design);
  problem.family = family;
  problem.sample_size = n;
  problem.zero_truncated = zero_truncated;
  GmmObjective objective(problem);
  return objective.ks(theta_hat);
}

double wald_statistic(const GmmProblem& problem, double theta_hat) { return gmm_objective(problem, theta_hat); }

}  // namespace sgof
