#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "sgof/sampling.hpp"

namespace sgof {

/// Linear map from a population degree PMF (column index k) to the expected
/// sampled-degree PMF (row index i). Columns are stored as bands: entries
/// outside [first_row(k), first_row(k) + column(k).size()) are zero. Bands
/// are trimmed where entries fall below 1e-20 of the column's peak.
class DesignMatrix {
 public:
  enum class Kind { hypergeometric_srs, binomial_bernoulli, poisson_false_negative };

  struct Params {
    std::size_t population_size = 0;  // hypergeometric
    std::size_t sample_size = 0;      // hypergeometric
    double inclusion_prob = 1.0;      // binomial, poisson
    double edge_retention = 1.0;      // poisson
  };

  Kind kind() const noexcept { return kind_; }
  const Params& params() const noexcept { return params_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return first_row_.size(); }

  double operator()(std::size_t i, std::size_t k) const;

  std::size_t first_row(std::size_t k) const { return first_row_[k]; }
  std::span<const double> column(std::size_t k) const {
    return {values_.data() + offset_[k], offset_[k + 1] - offset_[k]};
  }
  /// Sum of column k over all rows.
  double column_mass(std::size_t k) const { return mass_[k]; }

  std::string describe() const;

  class Builder;

 private:
  Kind kind_ = Kind::hypergeometric_srs;
  Params params_;
  std::size_t rows_ = 0;
  std::vector<std::size_t> first_row_;
  std::vector<std::size_t> offset_{0};
  std::vector<double> values_;
  std::vector<double> mass_;
};

/// X(i, j) = C(j, i) C(N-1-j, n-1-i) / C(N-1, n-1): the chance that a vertex
/// of population degree j keeps i neighbors when it and n-1 others are drawn
/// without replacement. Rows 0..n-1.
DesignMatrix design_hypergeometric(std::size_t population_size, std::size_t sample_size, std::size_t n_cols);

/// X(i, k) = C(k, i) p^i (1-p)^(k-i).
DesignMatrix design_binomial(double p, std::size_t n_rows, std::size_t n_cols);

/// X(i, k) = e^{-rpk} (rpk)^i / i!, the small-rp limit of Binomial(k, rp)
/// under edge false negatives.
DesignMatrix design_poisson_fn(double edge_retention, double p, std::size_t n_rows, std::size_t n_cols);

/// X * pmf over all rows. pmf may be shorter than cols() (zero padded) but not
/// longer.
std::vector<double> apply_design(const DesignMatrix& x, std::span<const double> pmf);

/// Rows 0..row_count-1 of X * pmf, written to out. Columns whose pmf entry is
/// zero are skipped.
void apply_design_prefix(const DesignMatrix& x, std::span<const double> pmf, std::span<double> out);

/// The design matrix that models `design` on a population of N vertices with
/// n_cols population degrees:
///   edge_retention < 1 -> poisson_false_negative(r, vertex_rate)
///   srs               -> hypergeometric(N, n)
///   bernoulli         -> binomial(p), N rows
std::shared_ptr<const DesignMatrix> design_for(const SamplingDesign& design, std::size_t population_size,
                                               std::size_t n_cols);

}  // namespace sgof
