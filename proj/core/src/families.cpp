#include "sgof/families.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <string>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/zeta.hpp>

#include "sgof/errors.hpp"

namespace sgof {

namespace {

constexpr double cdf_tolerance = 1e-12;
constexpr double inf = std::numeric_limits<double>::infinity();

std::string format_interval(const Interval& d) {
  char buf[64];
  if (std::isinf(d.upper)) {
    std::snprintf(buf, sizeof buf, "(%g, inf)", d.lower);
  } else {
    std::snprintf(buf, sizeof buf, "(%g, %g)", d.lower, d.upper);
  }
  return buf;
}

}  // namespace

FamilySpec FamilySpec::parse(std::string_view name) {
  std::string key;
  for (const char c : name) {
    if (c == '-' || c == '_' || c == ' ') continue;
    key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  if (key == "poisson") return poisson();
  if (key == "scalefree" || key == "powerlaw" || key == "zeta") return scale_free();
  if (key == "exponential" || key == "exp") return exponential();
  throw invalid_argument("unknown family '" + std::string(name) +
                         "' (expected poisson, scale-free or exponential)");
}

std::string FamilySpec::name() const {
  switch (kind) {
    case FamilyKind::poisson:
      return "poisson";
    case FamilyKind::scale_free:
      return "scale-free";
    case FamilyKind::exponential:
      return "exponential";
  }
  return "?";
}

Interval FamilySpec::param_domain() const {
  switch (kind) {
    case FamilyKind::poisson:
      return {0.0, inf};
    case FamilyKind::scale_free:
      return {1.0, inf};
    case FamilyKind::exponential:
      return {0.0, inf};
  }
  return {0.0, inf};
}

Interval FamilySpec::search_domain() const {
  switch (kind) {
    case FamilyKind::poisson:
      return {1e-3, 500.0};
    case FamilyKind::scale_free:
      return {1.0 + 1e-3, 10.0};
    case FamilyKind::exponential:
      return {1e-4, 10.0};
  }
  return {1e-3, 10.0};
}

std::size_t FamilySpec::support_min() const noexcept {
  if (kind == FamilyKind::scale_free || zero_truncated) return 1;
  return 0;
}

void FamilySpec::check_theta(double theta) const {
  const auto d = param_domain();
  if (!d.contains_open(theta)) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%g", theta);
    throw invalid_argument("parameter " + std::string(buf) + " outside the " + name() + " domain " +
                           format_interval(d));
  }
}

FamilyEvaluator::FamilyEvaluator(const FamilySpec& spec, std::size_t k_max)
    : spec_(spec), k_max_(k_max), log_k_(k_max + 1, 0.0) {
  if (k_max < spec.support_min()) {
    throw invalid_argument("k_max " + std::to_string(k_max) + " below the " + spec.name() + " support minimum " +
                           std::to_string(spec.support_min()));
  }
  for (std::size_t k = 1; k <= k_max; ++k) log_k_[k] = std::log(static_cast<double>(k));
  if (spec.kind == FamilyKind::poisson) {
    log_factorial_.assign(k_max + 1, 0.0);
    for (std::size_t k = 1; k <= k_max; ++k) log_factorial_[k] = log_factorial_[k - 1] + log_k_[k];
  }
}

double FamilyEvaluator::evaluate(double theta, std::span<double> out) {
  spec_.check_theta(theta);
  if (out.size() != k_max_ + 1) throw invalid_argument("output span does not match k_max + 1");

  const std::size_t start = spec_.support_min();
  std::fill(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(start), 0.0);

  // Weights are formed relative to the largest one so that nothing overflows
  // and the bulk of the mass never underflows.
  double peak_log = 0;
  double sum = 0;
  switch (spec_.kind) {
    case FamilyKind::poisson: {
      const double log_lambda = std::log(theta);
      const auto mode = std::clamp<std::size_t>(static_cast<std::size_t>(std::floor(theta)), start, k_max_);
      peak_log = static_cast<double>(mode) * log_lambda - theta - log_factorial_[mode];
      for (std::size_t k = start; k <= k_max_; ++k) {
        const double lw = static_cast<double>(k) * log_lambda - theta - log_factorial_[k];
        out[k] = std::exp(lw - peak_log);
      }
      break;
    }
    case FamilyKind::scale_free: {
      peak_log = -theta * log_k_[start];
      for (std::size_t k = start; k <= k_max_; ++k) out[k] = std::exp(-theta * log_k_[k] - peak_log);
      break;
    }
    case FamilyKind::exponential: {
      peak_log = -theta * static_cast<double>(start);
      for (std::size_t k = start; k <= k_max_; ++k) out[k] = std::exp(-theta * static_cast<double>(k - start));
      break;
    }
  }
  // Small terms first.
  for (std::size_t k = k_max_ + 1; k-- > start;) sum += out[k];
  const double scale = 1.0 / sum;
  for (std::size_t k = start; k <= k_max_; ++k) out[k] *= scale;
  return sum * std::exp(peak_log);
}

TruncatedPmf family_pmf(const FamilySpec& spec, double theta, std::size_t k_max) {
  spec.check_theta(theta);
  FamilyEvaluator eval(spec, k_max);
  TruncatedPmf pmf;
  pmf.values.resize(k_max + 1);
  pmf.normalization = eval.evaluate(theta, pmf.values);
  pmf.support_min = spec.support_min();
  return pmf;
}

std::vector<double> family_cdf(const FamilySpec& spec, double theta, std::size_t k_max) {
  auto pmf = family_pmf(spec, theta, k_max);
  std::partial_sum(pmf.values.begin(), pmf.values.end(), pmf.values.begin());
  return std::move(pmf.values);
}

std::size_t family_k_max(const FamilySpec& spec, double theta, std::size_t cap) {
  spec.check_theta(theta);
  const auto floor_k = spec.support_min();
  std::size_t k = cap;
  switch (spec.kind) {
    case FamilyKind::poisson: {
      // P(X <= k) = Q(k + 1, λ).
      std::size_t j = static_cast<std::size_t>(std::floor(theta));
      while (j < cap && boost::math::gamma_q(static_cast<double>(j + 1), theta) <= 1.0 - cdf_tolerance) ++j;
      k = j;
      break;
    }
    case FamilyKind::scale_free: {
      // Tail Σ_{j>k} j^-γ ≈ (k + 1/2)^{1-γ} / (γ - 1).
      const double zeta = boost::math::zeta(theta);
      const double target = cdf_tolerance * zeta * (theta - 1.0);
      const double bound = std::pow(target, -1.0 / (theta - 1.0)) - 0.5;
      k = bound >= static_cast<double>(cap) ? cap : static_cast<std::size_t>(std::ceil(std::max(bound, 1.0)));
      break;
    }
    case FamilyKind::exponential: {
      // 1 - F(k) = e^{-θ(k+1)}.
      const double bound = -std::log(cdf_tolerance) / theta - 1.0;
      k = bound >= static_cast<double>(cap) ? cap : static_cast<std::size_t>(std::ceil(std::max(bound, 0.0)));
      break;
    }
  }
  return std::clamp(k, std::min(floor_k, cap), cap);
}

std::size_t family_k_max_over_search(const FamilySpec& spec, std::size_t cap) {
  const auto d = spec.search_domain();
  const double widest = spec.kind == FamilyKind::poisson ? d.upper : d.lower;
  return family_k_max(spec, widest, cap);
}

}  // namespace sgof
