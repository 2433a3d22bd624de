#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "sgof/families.hpp"

namespace sgof {

struct Dgp {
  FamilySpec family;
  double theta = 0;
};

struct ExperimentGrid {
  std::size_t population_size = 10000;
  std::vector<Dgp> dgps;
  std::vector<double> rates;  // fraction of N sampled by SRS
  std::vector<FamilySpec> tests;
  std::size_t replications = 200;
  std::size_t bootstrap = 200;
  double alpha = 0.05;
  std::uint64_t seed = 1;
  // Build a fresh population graph for every replication instead of one per DGP.
  bool regenerate_population = false;
  unsigned threads = 1;

  void validate() const;
  std::size_t sample_size(double rate) const;
};

struct RejectionCell {
  FamilyKind dgp_family = FamilyKind::poisson;
  double dgp_param = 0;
  double rate = 0;
  FamilyKind test_family = FamilyKind::poisson;
  std::size_t rejections = 0;
  std::size_t reps = 0;
  std::size_t bootstrap = 0;
  std::uint64_t seed = 0;
  std::size_t failed_replicates = 0;  // bootstrap failures summed over replications

  double reject_pct() const noexcept;
  double mc_se() const noexcept;  // percentage points
  bool is_size_cell() const noexcept { return dgp_family == test_family; }
};

struct RejectionTable {
  std::size_t population_size = 0;
  std::vector<RejectionCell> cells;

  /// Header plus one line per cell:
  /// dgp_family,dgp_param,rate,test_family,reject_pct,mc_se,reps,B,seed
  void write_csv(std::ostream& out) const;
  static RejectionTable read_csv(std::istream& in);

  const RejectionCell* find(FamilyKind dgp, double param, double rate, FamilyKind test) const;
};

using GridProgress = std::function<void(const RejectionCell&)>;

RejectionTable run_grid(const ExperimentGrid& grid, const GridProgress& progress = {});

struct ScalingPair {
  RejectionCell small;
  RejectionCell large;
  bool flagged = false;
};

struct ScalingReport {
  std::vector<ScalingPair> pairs;
  std::vector<ScalingPair> flagged() const;
};

/// Matches cells of two tables by (dgp, param, rate, test). Flags power cells
/// where the larger population's rejection rate is lower than the smaller's
/// by more than two combined Monte Carlo standard errors. Throws
/// sgof::invalid_argument if the tables do not cover the same cells.
ScalingReport compare_scaling(const RejectionTable& small, const RejectionTable& large);

}  // namespace sgof
