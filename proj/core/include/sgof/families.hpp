#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sgof {

enum class FamilyKind { poisson, scale_free, exponential };

struct Interval {
  double lower;
  double upper;

  bool contains_open(double x) const noexcept { return x > lower && x < upper; }
};

/// A one-parameter family of degree distributions.
///   poisson      P(k) ∝ λ^k / k!,  k >= 0, λ > 0
///   scale_free   P(k) ∝ k^-γ,      k >= 1, γ > 1
///   exponential  P(k) ∝ e^{-θk},   k >= 0, θ > 0
struct FamilySpec {
  FamilyKind kind = FamilyKind::poisson;
  bool zero_truncated = false;  // drop k = 0 before normalizing

  static FamilySpec poisson() { return {FamilyKind::poisson, false}; }
  static FamilySpec scale_free() { return {FamilyKind::scale_free, false}; }
  static FamilySpec exponential() { return {FamilyKind::exponential, false}; }

  /// Accepts "poisson", "scale-free" (or "scalefree", "scale_free", "power-law")
  /// and "exponential", case-insensitively.
  static FamilySpec parse(std::string_view name);

  std::string name() const;

  /// Open interval of admissible parameters.
  Interval param_domain() const;

  /// Closed search interval used by the estimator; strictly inside param_domain().
  Interval search_domain() const;

  std::size_t support_min() const noexcept;

  /// Throws sgof::invalid_argument naming the domain when theta is outside it.
  void check_theta(double theta) const;

  friend bool operator==(const FamilySpec&, const FamilySpec&) = default;
};

/// PMF on k = 0..k_max (entries below support_min are zero), renormalized
/// over the finite support.
struct TruncatedPmf {
  std::vector<double> values;
  double normalization = 1.0;  // sum of the unnormalized weights
  std::size_t support_min = 0;

  std::size_t k_max() const noexcept { return values.empty() ? 0 : values.size() - 1; }
};

TruncatedPmf family_pmf(const FamilySpec& spec, double theta, std::size_t k_max);

std::vector<double> family_cdf(const FamilySpec& spec, double theta, std::size_t k_max);

/// Smallest k at which the untruncated family CDF exceeds 1 - 1e-12, capped
/// at `cap`.
std::size_t family_k_max(const FamilySpec& spec, double theta, std::size_t cap);

/// Widest k_max over the estimator's search domain, capped at `cap`. Used to
/// size design matrices so every candidate theta fits.
std::size_t family_k_max_over_search(const FamilySpec& spec, std::size_t cap);

/// Evaluates a family's PMF repeatedly on a fixed support without
/// reallocating. Not thread-safe; give each thread its own.
class FamilyEvaluator {
 public:
  FamilyEvaluator(const FamilySpec& spec, std::size_t k_max);

  /// Fills `out` (length k_max + 1) and returns the normalization constant.
  double evaluate(double theta, std::span<double> out);

  const FamilySpec& spec() const noexcept { return spec_; }
  std::size_t k_max() const noexcept { return k_max_; }

 private:
  FamilySpec spec_;
  std::size_t k_max_;
  std::vector<double> log_k_;          // log k (k >= 1)
  std::vector<double> log_factorial_;  // log k!
};

}  // namespace sgof
