#include "sgof/design.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <map>
#include <mutex>
#include <tuple>

#include <boost/math/special_functions/gamma.hpp>

#include "sgof/errors.hpp"

namespace sgof {

namespace {

// Entries below peak * 1e-20 are dropped from a column's band.
constexpr double log_band_cutoff = -46.051701859880914;

std::vector<double> log_factorials(std::size_t up_to) {
  std::vector<double> lf(up_to + 1);
  for (std::size_t k = 0; k <= up_to; ++k) lf[k] = boost::math::lgamma(static_cast<double>(k) + 1.0);
  return lf;
}

}  // namespace

class DesignMatrix::Builder {
 public:
  Builder(Kind kind, Params params, std::size_t rows, std::size_t cols) {
    m_.kind_ = kind;
    m_.params_ = params;
    m_.rows_ = rows;
    m_.first_row_.reserve(cols);
    m_.offset_.reserve(cols + 1);
    m_.mass_.reserve(cols);
  }

  /// Appends the next column. `log_entry(i)` is the log of the entry at row i
  /// for i in [lo, hi]; it must be unimodal with its peak near `mode`.
  template <typename LogEntry>
  void add_column(std::size_t lo, std::size_t hi, std::size_t mode, LogEntry&& log_entry) {
    hi = std::min(hi, m_.rows_ == 0 ? 0 : m_.rows_ - 1);
    if (m_.rows_ == 0 || lo > hi) {
      push_empty(lo);
      return;
    }
    std::size_t peak = std::clamp(mode, lo, hi);
    double peak_log = log_entry(peak);
    while (peak > lo && log_entry(peak - 1) > peak_log) peak_log = log_entry(--peak);
    while (peak < hi && log_entry(peak + 1) > peak_log) peak_log = log_entry(++peak);
    const double floor_log = peak_log + log_band_cutoff;

    std::size_t first = peak;
    while (first > lo && log_entry(first - 1) >= floor_log) --first;
    std::size_t last = peak;
    while (last < hi && log_entry(last + 1) >= floor_log) ++last;

    double mass = 0;
    for (std::size_t i = first; i <= last; ++i) {
      const double v = std::exp(log_entry(i));
      m_.values_.push_back(v);
      mass += v;
    }
    m_.first_row_.push_back(first);
    m_.offset_.push_back(m_.values_.size());
    m_.mass_.push_back(mass);
  }

  void push_empty(std::size_t first) {
    m_.first_row_.push_back(first);
    m_.offset_.push_back(m_.values_.size());
    m_.mass_.push_back(0.0);
  }

  DesignMatrix finish() && {
    m_.values_.shrink_to_fit();
    return std::move(m_);
  }

 private:
  DesignMatrix m_;
};

double DesignMatrix::operator()(std::size_t i, std::size_t k) const {
  if (i >= rows_ || k >= cols()) throw invalid_argument("design matrix index out of range");
  const auto first = first_row_[k];
  const auto col = column(k);
  if (i < first || i >= first + col.size()) return 0.0;
  return col[i - first];
}

std::string DesignMatrix::describe() const {
  char buf[128];
  switch (kind_) {
    case Kind::hypergeometric_srs:
      std::snprintf(buf, sizeof buf, "hypergeometric(N=%zu, n=%zu)", params_.population_size, params_.sample_size);
      break;
    case Kind::binomial_bernoulli:
      std::snprintf(buf, sizeof buf, "binomial(p=%.6g)", params_.inclusion_prob);
      break;
    case Kind::poisson_false_negative:
      std::snprintf(buf, sizeof buf, "poisson-fn(r=%.6g, p=%.6g)", params_.edge_retention, params_.inclusion_prob);
      break;
  }
  return buf;
}

DesignMatrix design_hypergeometric(std::size_t population_size, std::size_t sample_size, std::size_t n_cols) {
  if (sample_size < 1 || sample_size > population_size) {
    throw invalid_argument("sample size " + std::to_string(sample_size) + " must lie in 1.." +
                           std::to_string(population_size));
  }
  if (n_cols > population_size) {
    throw invalid_argument("hypergeometric design has at most N = " + std::to_string(population_size) + " columns");
  }
  const std::size_t big = population_size - 1;  // N - 1
  const std::size_t draws = sample_size - 1;    // n - 1
  const auto lf = log_factorials(big);
  const auto lchoose = [&](std::size_t a, std::size_t b) { return lf[a] - lf[b] - lf[a - b]; };
  const double denominator = lchoose(big, draws);

  DesignMatrix::Params params;
  params.population_size = population_size;
  params.sample_size = sample_size;
  params.inclusion_prob = static_cast<double>(sample_size) / static_cast<double>(population_size);
  DesignMatrix::Builder b(DesignMatrix::Kind::hypergeometric_srs, params, sample_size, n_cols);
  for (std::size_t j = 0; j < n_cols; ++j) {
    // i neighbors drawn among j marked vertices, n-1-i among the N-1-j others.
    const std::size_t lo = draws > big - j ? draws - (big - j) : 0;
    const std::size_t hi = std::min(j, draws);
    const auto mode = static_cast<std::size_t>(
        std::floor(static_cast<double>(draws + 1) * static_cast<double>(j + 1) / static_cast<double>(big + 2)));
    b.add_column(lo, hi, mode,
                 [&](std::size_t i) { return lchoose(j, i) + lchoose(big - j, draws - i) - denominator; });
  }
  return std::move(b).finish();
}

DesignMatrix design_binomial(double p, std::size_t n_rows, std::size_t n_cols) {
  if (!(p > 0 && p <= 1)) throw invalid_argument("inclusion probability must lie in (0, 1], got " + std::to_string(p));
  const auto lf = log_factorials(n_cols == 0 ? 0 : n_cols - 1);
  const double log_p = std::log(p);
  const double log_q = std::log1p(-p);

  DesignMatrix::Params params;
  params.inclusion_prob = p;
  DesignMatrix::Builder b(DesignMatrix::Kind::binomial_bernoulli, params, n_rows, n_cols);
  for (std::size_t k = 0; k < n_cols; ++k) {
    if (p == 1.0) {
      b.add_column(k, k, k, [](std::size_t) { return 0.0; });
      continue;
    }
    const auto mode = static_cast<std::size_t>(std::floor(static_cast<double>(k + 1) * p));
    b.add_column(0, k, mode, [&](std::size_t i) {
      return lf[k] - lf[i] - lf[k - i] + static_cast<double>(i) * log_p + static_cast<double>(k - i) * log_q;
    });
  }
  return std::move(b).finish();
}

DesignMatrix design_poisson_fn(double edge_retention, double p, std::size_t n_rows, std::size_t n_cols) {
  if (!(edge_retention > 0 && edge_retention <= 1)) {
    throw invalid_argument("edge retention must lie in (0, 1], got " + std::to_string(edge_retention));
  }
  if (!(p > 0 && p <= 1)) throw invalid_argument("inclusion probability must lie in (0, 1], got " + std::to_string(p));
  const double rate = edge_retention * p;
  const auto lf = log_factorials(n_rows);

  DesignMatrix::Params params;
  params.inclusion_prob = p;
  params.edge_retention = edge_retention;
  DesignMatrix::Builder b(DesignMatrix::Kind::poisson_false_negative, params, n_rows, n_cols);
  for (std::size_t k = 0; k < n_cols; ++k) {
    if (k == 0) {
      b.add_column(0, 0, 0, [](std::size_t) { return 0.0; });
      continue;
    }
    const double mu = rate * static_cast<double>(k);
    const double log_mu = std::log(mu);
    const auto mode = static_cast<std::size_t>(std::floor(mu));
    b.add_column(0, n_rows, mode,
                 [&](std::size_t i) { return -mu + static_cast<double>(i) * log_mu - lf[i]; });
  }
  return std::move(b).finish();
}

void apply_design_prefix(const DesignMatrix& x, std::span<const double> pmf, std::span<double> out) {
  if (pmf.size() > x.cols()) {
    throw invalid_argument("pmf has " + std::to_string(pmf.size()) + " entries but the design has " +
                           std::to_string(x.cols()) + " columns");
  }
  if (out.size() > x.rows()) throw invalid_argument("requested more rows than the design has");
  std::fill(out.begin(), out.end(), 0.0);
  const std::size_t rows = out.size();
  for (std::size_t k = 0; k < pmf.size(); ++k) {
    const double w = pmf[k];
    if (w == 0.0) continue;
    const auto first = x.first_row(k);
    if (first >= rows) continue;
    const auto col = x.column(k);
    const std::size_t count = std::min(col.size(), rows - first);
    double* dst = out.data() + first;
    for (std::size_t t = 0; t < count; ++t) dst[t] += w * col[t];
  }
}

std::vector<double> apply_design(const DesignMatrix& x, std::span<const double> pmf) {
  std::vector<double> out(x.rows());
  apply_design_prefix(x, pmf, out);
  return out;
}

std::shared_ptr<const DesignMatrix> design_for(const SamplingDesign& design, std::size_t population_size,
                                               std::size_t n_cols) {
  design.validate(population_size);
  using Key = std::tuple<int, std::size_t, std::size_t, double, double, std::size_t>;
  const bool false_negatives = design.edge_retention < 1.0;
  const Key key{false_negatives ? 2 : static_cast<int>(design.kind), population_size,
                design.kind == SamplingDesign::Kind::srs ? design.sample_size : 0,
                design.vertex_rate(population_size), design.edge_retention, n_cols};

  // Designs are expensive to build and shared by every test on the same
  // population; keep the most recent few.
  static std::mutex mutex;
  static std::map<Key, std::shared_ptr<const DesignMatrix>> cache;
  static std::deque<Key> order;
  constexpr std::size_t capacity = 8;
  {
    std::lock_guard lock(mutex);
    if (const auto it = cache.find(key); it != cache.end()) return it->second;
  }

  std::shared_ptr<const DesignMatrix> built;
  if (false_negatives) {
    built = std::make_shared<const DesignMatrix>(
        design_poisson_fn(design.edge_retention, design.vertex_rate(population_size), population_size, n_cols));
  } else if (design.kind == SamplingDesign::Kind::srs) {
    built = std::make_shared<const DesignMatrix>(design_hypergeometric(population_size, design.sample_size, n_cols));
  } else {
    built = std::make_shared<const DesignMatrix>(design_binomial(design.inclusion_prob, population_size, n_cols));
  }

  std::lock_guard lock(mutex);
  if (const auto [it, inserted] = cache.emplace(key, built); inserted) {
    order.push_back(key);
    if (order.size() > capacity) {
      cache.erase(order.front());
      order.pop_front();
    }
    return built;
  } else {
    return it->second;
  }
}

}  // namespace sgof
