#include "sgof/simstudy.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "sgof/bootstrap.hpp"
#include "sgof/errors.hpp"
#include "sgof/parallel.hpp"
#include "sgof/rng.hpp"
#include "sgof/sampling.hpp"

namespace sgof {

namespace {

constexpr std::uint64_t population_stream = 0x706f70;  // "pop"
constexpr std::uint64_t sample_stream = 0x736d70;      // "smp"

std::uint64_t bits(double x) { return std::bit_cast<std::uint64_t>(x); }

std::string cell_label(const Dgp& dgp, double rate, const FamilySpec& test) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "dgp %s:%g, rate %g, test %s", dgp.family.name().c_str(), dgp.theta, rate,
                test.name().c_str());
  return buf;
}

bool same(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)); }

}  // namespace

void ExperimentGrid::validate() const {
  if (population_size < 2) throw invalid_argument("population size must be at least 2");
  if (dgps.empty()) throw invalid_argument("grid has no data generating process");
  if (rates.empty()) throw invalid_argument("grid has no sampling rate");
  if (tests.empty()) throw invalid_argument("grid has no test family");
  if (replications < 1) throw invalid_argument("replications must be at least 1");
  if (bootstrap < 1) throw invalid_argument("bootstrap replicates must be at least 1");
  if (!(alpha > 0 && alpha < 1)) throw invalid_argument("alpha must lie in (0, 1)");
  for (const auto& d : dgps) d.family.check_theta(d.theta);
  for (const auto r : rates) {
    if (!(r > 0 && r <= 1)) throw invalid_argument("sampling rate " + std::to_string(r) + " outside (0, 1]");
    if (sample_size(r) < 1) throw invalid_argument("sampling rate " + std::to_string(r) + " selects no vertex");
  }
}

std::size_t ExperimentGrid::sample_size(double rate) const {
  return static_cast<std::size_t>(std::llround(rate * static_cast<double>(population_size)));
}

double RejectionCell::reject_pct() const noexcept {
  return reps == 0 ? 0.0 : 100.0 * static_cast<double>(rejections) / static_cast<double>(reps);
}

double RejectionCell::mc_se() const noexcept {
  if (reps == 0) return 0.0;
  const double p = static_cast<double>(rejections) / static_cast<double>(reps);
  return 100.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(reps));
}

void RejectionTable::write_csv(std::ostream& out) const {
  out << "dgp_family,dgp_param,rate,test_family,reject_pct,mc_se,reps,B,seed\n";
  char buf[256];
  for (const auto& c : cells) {
    std::snprintf(buf, sizeof buf, "%s,%.6g,%.6g,%s,%.2f,%.3f,%zu,%zu,%llu\n", FamilySpec{c.dgp_family}.name().c_str(),
                  c.dgp_param, c.rate, FamilySpec{c.test_family}.name().c_str(), c.reject_pct(), c.mc_se(), c.reps,
                  c.bootstrap, static_cast<unsigned long long>(c.seed));
    out << buf;
  }
}

RejectionTable RejectionTable::read_csv(std::istream& in) {
  RejectionTable table;
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw parse_error("empty rejection table", 0);
  ++line_no;
  if (line.rfind("dgp_family,", 0) != 0) throw parse_error("missing rejection table header", line_no);
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) f.push_back(field);
    if (f.size() != 9) throw parse_error("expected 9 fields", line_no);
    try {
      RejectionCell c;
      c.dgp_family = FamilySpec::parse(f[0]).kind;
      c.dgp_param = std::stod(f[1]);
      c.rate = std::stod(f[2]);
      c.test_family = FamilySpec::parse(f[3]).kind;
      c.reps = std::stoul(f[6]);
      c.rejections = static_cast<std::size_t>(std::llround(std::stod(f[4]) * static_cast<double>(c.reps) / 100.0));
      c.bootstrap = std::stoul(f[7]);
      c.seed = std::stoull(f[8]);
      table.cells.push_back(c);
    } catch (const std::exception& e) {
      throw parse_error(e.what(), line_no);
    }
  }
  return table;
}

const RejectionCell* RejectionTable::find(FamilyKind dgp, double param, double rate, FamilyKind test) const {
  for (const auto& c : cells) {
    if (c.dgp_family == dgp && c.test_family == test && same(c.dgp_param, param) && same(c.rate, rate)) return &c;
  }
  return nullptr;
}

RejectionTable run_grid(const ExperimentGrid& grid, const GridProgress& progress) {
  grid.validate();
  RejectionTable table;
  table.population_size = grid.population_size;

  for (const auto& dgp : grid.dgps) {
    const auto kind = static_cast<std::uint64_t>(dgp.family.kind);
    const auto population_seed = derive_seed(grid.seed, population_stream, kind, bits(dgp.theta));
    const ConfigurationOptions construction;
    Graph shared_population;
    if (!grid.regenerate_population) {
      shared_population = build_null_graph(dgp.family, dgp.theta, grid.population_size, population_seed, construction);
    }

    for (const auto rate : grid.rates) {
      const auto n = grid.sample_size(rate);
      // rejected[r * tests + t]
      std::vector<unsigned char> rejected(grid.replications * grid.tests.size(), 0);
      std::vector<std::size_t> failures(grid.replications * grid.tests.size(), 0);
      std::string failure_message;

      try {
        parallel_for(grid.replications, grid.threads, [&](std::size_t r) {
          Graph regenerated;
          if (grid.regenerate_population) {
            regenerated = build_null_graph(dgp.family, dgp.theta, grid.population_size,
                                           derive_seed(population_seed, r), construction);
          }
          const Graph& population = grid.regenerate_population ? regenerated : shared_population;
          const auto sample_seed = derive_seed(grid.seed, sample_stream, kind, bits(dgp.theta), bits(rate), r);
          const auto sample = draw_sample(population, SamplingDesign::srs(n), sample_seed);
          for (std::size_t t = 0; t < grid.tests.size(); ++t) {
            BootstrapConfig config;
            config.replicates = grid.bootstrap;
            config.alpha = grid.alpha;
            config.population_size = grid.population_size;
            config.design = SamplingDesign::srs(n);
            config.seed = derive_seed(sample_seed, static_cast<std::uint64_t>(grid.tests[t].kind));
            const auto result = run_test(sample, grid.tests[t], config);
            rejected[r * grid.tests.size() + t] = result.reject ? 1 : 0;
            failures[r * grid.tests.size() + t] = result.failed_replicates;
          }
        });
      } catch (const std::exception& e) {
        std::string where = "dgp " + dgp.family.name() + ":" + std::to_string(dgp.theta) + ", rate " +
                            std::to_string(rate) + ": ";
        throw test_failure(where + e.what());
      }

      for (std::size_t t = 0; t < grid.tests.size(); ++t) {
        RejectionCell cell;
        cell.dgp_family = dgp.family.kind;
        cell.dgp_param = dgp.theta;
        cell.rate = rate;
        cell.test_family = grid.tests[t].kind;
        cell.reps = grid.replications;
        cell.bootstrap = grid.bootstrap;
        cell.seed = grid.seed;
        for (std::size_t r = 0; r < grid.replications; ++r) {
          cell.rejections += rejected[r * grid.tests.size() + t];
          cell.failed_replicates += failures[r * grid.tests.size() + t];
        }
        table.cells.push_back(cell);
        if (progress) progress(cell);
      }
    }
  }
  return table;
}

std::vector<ScalingPair> ScalingReport::flagged() const {
  std::vector<ScalingPair> out;
  for (const auto& p : pairs) {
    if (p.flagged) out.push_back(p);
  }
  return out;
}

ScalingReport compare_scaling(const RejectionTable& small, const RejectionTable& large) {
  if (small.cells.size() != large.cells.size()) {
    throw invalid_argument("tables cover different cells (" + std::to_string(small.cells.size()) + " vs " +
                           std::to_string(large.cells.size()) + ")");
  }
  ScalingReport report;
  for (const auto& s : small.cells) {
    const auto* l = large.find(s.dgp_family, s.dgp_param, s.rate, s.test_family);
    if (l == nullptr) {
      throw invalid_argument("no matching cell for " +
                             cell_label({FamilySpec{s.dgp_family}, s.dgp_param}, s.rate, FamilySpec{s.test_family}));
    }
    ScalingPair pair{s, *l, false};
    if (!s.is_size_cell()) {
      const double se = std::sqrt(s.mc_se() * s.mc_se() + l->mc_se() * l->mc_se());
      pair.flagged = s.reject_pct() - l->reject_pct() > 2.0 * se;
    }
    report.pairs.push_back(pair);
  }
  return report;
}

}  // namespace sgof
