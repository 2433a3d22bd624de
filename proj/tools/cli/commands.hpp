#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sgof/estimate.hpp"
#include "sgof/graph.hpp"
#include "sgof/parallel.hpp"

namespace sgof::cli {

// Process exit codes. A rejected hypothesis is a result, not a failure.
enum exit_code : int {
  exit_ok = 0,
  exit_usage = 1,
  exit_data = 2,
  exit_numerical = 3,
};

struct GenerateOptions {
  std::string family = "poisson";
  double theta = 3;
  std::size_t population_size = 10000;
  std::uint64_t seed = 1;
  std::string policy = "ignore";
  std::filesystem::path out;  // empty: stdout
};

struct SampleOptions {
  std::filesystem::path in;
  std::optional<std::size_t> sample_size;
  std::optional<double> rate;
  double edge_retention = 1.0;
  std::uint64_t seed = 1;
  std::filesystem::path out;
};

struct TestOptions {
  std::filesystem::path edge_list;
  std::string family = "poisson";
  std::size_t population_size = 0;
  std::optional<double> rate;
  std::optional<std::size_t> sample_size;
  double edge_retention = 1.0;
  bool zero_truncated = false;
  std::size_t replicates = 500;
  double alpha = 0.05;
  std::uint64_t seed = 1;
  unsigned threads = default_thread_count();
  std::string weighting = "observed";
  std::string policy = "ignore";
  bool include_bootstrap_statistics = false;
};

struct PinOptions {
  std::vector<std::string> datasets;  // "name=path" or "path"
  std::size_t population_size = 6000;
  std::vector<double> fn_rates{0.7, 0.8, 0.9};
  std::vector<std::string> families{"poisson", "scale-free", "exponential"};
  std::size_t replicates = 500;
  double alpha = 0.05;
  std::uint64_t seed = 1;
  unsigned threads = default_thread_count();
  std::string format = "csv";
};

struct SimulateOptions {
  std::size_t population_size = 10000;
  std::vector<std::string> dgps;  // "family:theta"
  std::vector<double> rates{0.05, 0.10, 0.15, 0.20};
  std::vector<std::string> tests{"poisson", "scale-free"};
  std::size_t replications = 200;
  std::size_t replicates = 200;
  double alpha = 0.05;
  std::uint64_t seed = 1;
  unsigned threads = default_thread_count();
  bool regenerate_population = false;
  bool quiet = false;
};

struct CompareOptions {
  std::filesystem::path small;
  std::filesystem::path large;
};

/// Each command writes its primary output to `out` and progress or
/// human-readable notes to `log`. Library exceptions propagate; main() maps
/// them to exit codes via exit_code_for().
void cmd_generate(const GenerateOptions& opt, std::ostream& out, std::ostream& log);
void cmd_sample(const SampleOptions& opt, std::ostream& out, std::ostream& log);
void cmd_test(const TestOptions& opt, std::ostream& out, std::ostream& log);
void cmd_pin(const PinOptions& opt, std::ostream& out, std::ostream& log);
void cmd_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& log);
void cmd_compare(const CompareOptions& opt, std::ostream& out, std::ostream& log);

/// Maps an in-flight exception to an exit code and writes its message to log.
int exit_code_for(std::exception_ptr error, std::ostream& log);

Weighting parse_weighting(const std::string& name);
SimplifyPolicy parse_policy(const std::string& name);

/// Runs the command line. Used by the sgof executable and by the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& log);

}  // namespace sgof::cli
