#include "commands.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "sgof/bootstrap.hpp"
#include "sgof/edge_list.hpp"
#include "sgof/errors.hpp"
#include "sgof/families.hpp"
#include "sgof/parallel.hpp"
#include "sgof/result_json.hpp"
#include "sgof/rng.hpp"
#include "sgof/sampling.hpp"
#include "sgof/simstudy.hpp"

namespace sgof::cli {

namespace {

std::string fmt(const char* spec, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

LabeledGraph load_nonempty(const std::filesystem::path& path) {
  auto g = read_edge_list(path);
  if (g.graph.num_edges() == 0) throw parse_error(path.string() + ": no edges", 0);
  return g;
}

Dgp parse_dgp(const std::string& text) {
  const auto colon = text.rfind(':');
  if (colon == std::string::npos) throw invalid_argument("DGP '" + text + "' must look like family:theta");
  Dgp d;
  d.family = FamilySpec::parse(text.substr(0, colon));
  try {
    d.theta = std::stod(text.substr(colon + 1));
  } catch (const std::exception&) {
    throw invalid_argument("DGP '" + text + "' has no numeric parameter");
  }
  d.family.check_theta(d.theta);
  return d;
}

}  // namespace

Weighting parse_weighting(const std::string& name) {
  if (name == "observed") return Weighting::observed_diag;
  if (name == "model") return Weighting::model_diag;
  if (name == "model-literal") return Weighting::model_diag_literal;
  throw invalid_argument("unknown weighting '" + name + "' (observed, model, model-literal)");
}

SimplifyPolicy parse_policy(const std::string& name) {
  if (name == "ignore") return SimplifyPolicy::ignore;
  if (name == "retry") return SimplifyPolicy::retry;
  throw invalid_argument("unknown simplify policy '" + name + "' (ignore, retry)");
}

void cmd_generate(const GenerateOptions& opt, std::ostream& out, std::ostream& log) {
  const auto family = FamilySpec::parse(opt.family);
  family.check_theta(opt.theta);
  ConfigurationOptions construction;
  construction.policy = parse_policy(opt.policy);
  const auto g = build_null_graph(family, opt.theta, opt.population_size, opt.seed, construction);
  if (opt.out.empty()) {
    write_edge_list(out, g);
  } else {
    write_edge_list(opt.out, g);
  }
  log << "generated " << family.name() << "(" << opt.theta << ") graph: " << g.num_vertices() << " vertices, "
      << g.num_edges() << " edges, " << g.construction().self_loops_dropped << " self-loops and "
      << g.construction().duplicate_edges_dropped << " repeated pairs dropped\n";
}

void cmd_sample(const SampleOptions& opt, std::ostream& out, std::ostream& log) {
  if (opt.rate && opt.sample_size) throw invalid_argument("give either --rate or --sample-size, not both");
  const auto population = load_nonempty(opt.in);
  const auto design = opt.rate ? SamplingDesign::bernoulli(*opt.rate, opt.edge_retention)
                               : SamplingDesign::srs(opt.sample_size.value_or(population.graph.num_vertices()),
                                                     opt.edge_retention);
  const auto sample = draw_sample(population.graph, design, opt.seed);
  std::ostringstream text;
  for (const auto& e : sample.edges()) {
    text << population.labels[sample.parent_ids()[e.u]] << ' ' << population.labels[sample.parent_ids()[e.v]] << '\n';
  }
  if (opt.out.empty()) {
    out << text.str();
  } else {
    std::ofstream file(opt.out);
    if (!file) throw std::runtime_error("cannot write " + opt.out.string());
    file << text.str();
  }
  log << "sampled " << sample.num_vertices() << " vertices (" << sample.num_edges() << " edges) with "
      << design.describe() << "\n";
}

void cmd_test(const TestOptions& opt, std::ostream& out, std::ostream& log) {
  if (opt.rate && opt.sample_size) throw invalid_argument("give either --rate or --sample-size, not both");
  const auto family = FamilySpec::parse(opt.family);
  const auto loaded = load_nonempty(opt.edge_list);
  const auto observed = loaded.graph.num_vertices();
  if (opt.population_size < observed) {
    throw invalid_argument("--population-N " + std::to_string(opt.population_size) + " is smaller than the " +
                           std::to_string(observed) + " vertices in the sample");
  }

  BootstrapConfig config;
  config.replicates = opt.replicates;
  config.alpha = opt.alpha;
  config.population_size = opt.population_size;
  config.seed = opt.seed;
  config.threads = opt.threads;
  config.zero_truncated = opt.zero_truncated;
  config.weighting = parse_weighting(opt.weighting);
  config.null_graph.policy = parse_policy(opt.policy);

  Graph sample = loaded.graph;
  if (opt.rate) {
    config.design = SamplingDesign::bernoulli(*opt.rate, opt.edge_retention);
  } else {
    const auto n = opt.sample_size.value_or(observed);
    if (n < observed) {
      throw invalid_argument("--sample-size " + std::to_string(n) + " is smaller than the " +
                             std::to_string(observed) + " vertices in the edge list");
    }
    config.design = SamplingDesign::srs(n, opt.edge_retention);
    // Sampled vertices without edges do not appear in an edge list.
    if (!opt.zero_truncated && n > observed) sample = with_isolates(sample, n - observed);
  }

  const auto result = run_test(sample, family, config);
  out << to_json(result, opt.include_bootstrap_statistics).dump(2) << '\n';
  log << (result.reject ? "reject" : "retain") << " H0: degree distribution is " << family.name() << " (theta_hat "
      << fmt("%.4g", result.estimate.theta_hat) << ", D " << fmt("%.4g", result.statistic) << ", critical value "
      << fmt("%.4g", result.critical_value) << ", p " << fmt("%.3f", result.p_value) << ")\n";
}

void cmd_pin(const PinOptions& opt, std::ostream& out, std::ostream& log) {
  if (opt.datasets.empty()) throw invalid_argument("pin needs at least one --edge-list");
  std::vector<FamilySpec> families;
  for (const auto& f : opt.families) families.push_back(FamilySpec::parse(f));
  for (const auto fn : opt.fn_rates) {
    if (!(fn > 0 && fn < 1)) throw invalid_argument("false negative rate " + std::to_string(fn) + " outside (0, 1)");
  }

  nlohmann::json rows = nlohmann::json::array();
  std::ostringstream csv;
  csv << "dataset,family,fn_rate,r,n,theta_hat,D,p_value,reject\n";
  for (std::size_t d = 0; d < opt.datasets.size(); ++d) {
    const auto& spec = opt.datasets[d];
    const auto eq = spec.find('=');
    const std::filesystem::path path = eq == std::string::npos ? spec : spec.substr(eq + 1);
    const std::string name = eq == std::string::npos ? path.stem().string() : spec.substr(0, eq);
    const auto loaded = load_nonempty(path);
    const auto n = loaded.graph.num_vertices();
    if (opt.population_size < n) {
      throw invalid_argument(name + " has " + std::to_string(n) + " proteins, more than N = " +
                             std::to_string(opt.population_size));
    }
    const double p = static_cast<double>(n) / static_cast<double>(opt.population_size);

    for (const auto& family : families) {
      for (std::size_t ri = 0; ri < opt.fn_rates.size(); ++ri) {
        const double r = 1.0 - opt.fn_rates[ri];
        BootstrapConfig config;
        config.replicates = opt.replicates;
        config.alpha = opt.alpha;
        config.population_size = opt.population_size;
        config.design = SamplingDesign::bernoulli(p, r);
        config.zero_truncated = true;
        config.threads = opt.threads;
        config.seed = derive_seed(opt.seed, d, static_cast<std::uint64_t>(family.kind), ri);
        const auto result = run_test(loaded.graph, family, config);

        csv << name << ',' << family.name() << ',' << fmt("%.6g", opt.fn_rates[ri]) << ',' << fmt("%.6g", r) << ','
            << n << ',' << fmt("%.6g", result.estimate.theta_hat) << ',' << fmt("%.6g", result.statistic) << ','
            << fmt("%.4f", result.p_value) << ',' << (result.reject ? "true" : "false") << '\n';
        auto row = to_json(result, false);
        row["dataset"] = name;
        row["fn_rate"] = opt.fn_rates[ri];
        row["r"] = r;
        rows.push_back(std::move(row));
        log << name << ' ' << family.name() << " fn " << opt.fn_rates[ri] << ": theta_hat "
            << fmt("%.4g", result.estimate.theta_hat) << ", p " << fmt("%.3f", result.p_value) << '\n';
      }
    }
  }
  if (opt.format == "json") {
    out << rows.dump(2) << '\n';
  } else if (opt.format == "csv") {
    out << csv.str();
  } else {
    throw invalid_argument("unknown format '" + opt.format + "' (csv, json)");
  }
}

void cmd_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& log) {
  ExperimentGrid grid;
  grid.population_size = opt.population_size;
  for (const auto& d : opt.dgps) grid.dgps.push_back(parse_dgp(d));
  grid.rates = opt.rates;
  for (const auto& t : opt.tests) grid.tests.push_back(FamilySpec::parse(t));
  grid.replications = opt.replications;
  grid.bootstrap = opt.replicates;
  grid.alpha = opt.alpha;
  grid.seed = opt.seed;
  grid.threads = opt.threads;
  grid.regenerate_population = opt.regenerate_population;

  const auto table = run_grid(grid, [&](const RejectionCell& c) {
    if (opt.quiet) return;
    log << FamilySpec{c.dgp_family}.name() << ':' << c.dgp_param << " rate " << c.rate << " test "
        << FamilySpec{c.test_family}.name() << ": " << fmt("%.1f", c.reject_pct()) << "% rejected\n";
  });
  table.write_csv(out);
}

void cmd_compare(const CompareOptions& opt, std::ostream& out, std::ostream& log) {
  const auto load = [](const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) throw parse_error("cannot open " + p.string(), 0);
    return RejectionTable::read_csv(in);
  };
  const auto report = compare_scaling(load(opt.small), load(opt.large));
  out << "dgp_family,dgp_param,rate,test_family,small_pct,large_pct,flagged\n";
  for (const auto& p : report.pairs) {
    out << FamilySpec{p.small.dgp_family}.name() << ',' << fmt("%.6g", p.small.dgp_param) << ','
        << fmt("%.6g", p.small.rate) << ',' << FamilySpec{p.small.test_family}.name() << ','
        << fmt("%.2f", p.small.reject_pct()) << ',' << fmt("%.2f", p.large.reject_pct()) << ','
        << (p.flagged ? "true" : "false") << '\n';
  }
  log << report.flagged().size() << " of " << report.pairs.size() << " cells lose power at the larger size\n";
}

int exit_code_for(std::exception_ptr error, std::ostream& log) {
  try {
    std::rethrow_exception(error);
  } catch (const parse_error& e) {
    log << "error: " << e.what() << '\n';
    return exit_data;
  } catch (const invalid_argument& e) {
    log << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const estimation_failure& e) {
    log << "numerical failure: " << e.what() << '\n';
    return exit_numerical;
  } catch (const test_failure& e) {
    log << "numerical failure: " << e.what() << '\n';
    return exit_numerical;
  } catch (const construction_failure& e) {
    log << "numerical failure: " << e.what() << '\n';
    return exit_numerical;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return exit_data;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& log) {
  CLI::App app{"Goodness-of-fit tests for degree distributions observed through induced subgraphs"};
  app.set_config("--config", "", "key = value file; command-line flags take precedence");
  app.require_subcommand(1);
  const unsigned default_threads = default_thread_count();

  GenerateOptions gen;
  auto* generate = app.add_subcommand("generate", "Write a configuration-model graph with a family degree distribution");
  generate->add_option("--family", gen.family, "poisson, scale-free or exponential")->capture_default_str();
  generate->add_option("--theta", gen.theta, "Family parameter")->required();
  generate->add_option("--population-N,-N", gen.population_size, "Number of vertices")->capture_default_str();
  generate->add_option("--seed", gen.seed)->capture_default_str();
  generate->add_option("--policy", gen.policy, "ignore or retry")->capture_default_str();
  generate->add_option("--out,-o", gen.out, "Edge-list path (default stdout)");

  SampleOptions smp;
  auto* sample = app.add_subcommand("sample", "Draw an induced subgraph from an edge list");
  sample->add_option("--edge-list,--in", smp.in)->required();
  auto* smp_size = sample->add_option("--sample-size,-n", smp.sample_size, "Simple random sample of n vertices");
  sample->add_option("--rate,-p", smp.rate, "Bernoulli inclusion probability")->excludes(smp_size);
  sample->add_option("--edge-retention,-r", smp.edge_retention)->capture_default_str();
  sample->add_option("--seed", smp.seed)->capture_default_str();
  sample->add_option("--out,-o", smp.out);

  TestOptions tst;
  tst.threads = default_threads;
  auto* test = app.add_subcommand("test", "Test a sampled graph's degree distribution against a family");
  test->add_option("--edge-list,--in", tst.edge_list)->required();
  test->add_option("--family", tst.family)->capture_default_str();
  test->add_option("--population-N,-N", tst.population_size, "Population size")->required();
  auto* tst_size = test->add_option("--sample-size,-n", tst.sample_size, "SRS sample size (pads isolates)");
  test->add_option("--rate,-p", tst.rate, "Bernoulli inclusion probability")->excludes(tst_size);
  test->add_option("--edge-retention,-r", tst.edge_retention, "1 - false negative rate")->capture_default_str();
  test->add_flag("--zero-truncated", tst.zero_truncated, "Ignore isolates in sample and bootstrap");
  test->add_option("--B,-B", tst.replicates, "Bootstrap replicates")->capture_default_str();
  test->add_option("--alpha", tst.alpha)->capture_default_str();
  test->add_option("--seed", tst.seed)->capture_default_str();
  test->add_option("--threads", tst.threads)->capture_default_str();
  test->add_option("--weighting", tst.weighting, "observed, model or model-literal")->capture_default_str();
  test->add_option("--policy", tst.policy, "Null graph simplification: ignore or retry")->capture_default_str();
  test->add_flag("--bootstrap-statistics", tst.include_bootstrap_statistics, "Include every D* in the JSON");

  PinOptions pin;
  pin.threads = default_threads;
  auto* pin_cmd = app.add_subcommand("pin", "Protein interaction network pipeline over edge-list datasets");
  pin_cmd->add_option("--edge-list,--in", pin.datasets, "name=path or path; repeatable")->required();
  pin_cmd->add_option("--population-N,-N", pin.population_size)->capture_default_str();
  pin_cmd->add_option("--fn-rates", pin.fn_rates, "False negative rates")->delimiter(',')->capture_default_str();
  pin_cmd->add_option("--families", pin.families)->delimiter(',')->capture_default_str();
  pin_cmd->add_option("--B,-B", pin.replicates)->capture_default_str();
  pin_cmd->add_option("--alpha", pin.alpha)->capture_default_str();
  pin_cmd->add_option("--seed", pin.seed)->capture_default_str();
  pin_cmd->add_option("--threads", pin.threads)->capture_default_str();
  pin_cmd->add_option("--format", pin.format, "csv or json")->capture_default_str();

  SimulateOptions sim;
  sim.threads = default_threads;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo rejection rates over a grid");
  simulate->add_option("--population-N,-N", sim.population_size)->capture_default_str();
  simulate->add_option("--dgp", sim.dgps, "family:theta; repeatable")->required()->delimiter(',');
  simulate->add_option("--rate", sim.rates, "Sampling rates")->delimiter(',')->capture_default_str();
  simulate->add_option("--test", sim.tests, "Test families")->delimiter(',')->capture_default_str();
  simulate->add_option("--reps", sim.replications, "Monte Carlo replications")->capture_default_str();
  simulate->add_option("--B,-B", sim.replicates, "Bootstrap replicates")->capture_default_str();
  simulate->add_option("--alpha", sim.alpha)->capture_default_str();
  simulate->add_option("--seed", sim.seed)->capture_default_str();
  simulate->add_option("--threads", sim.threads)->capture_default_str();
  simulate->add_flag("--regenerate-population", sim.regenerate_population, "New population graph per replication");
  simulate->add_flag("--quiet", sim.quiet);

  CompareOptions cmp;
  auto* compare = app.add_subcommand("compare", "Compare rejection tables from a small and a large population");
  compare->add_option("small", cmp.small)->required();
  compare->add_option("large", cmp.large)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    log << "usage error: " << e.what() << '\n';
    return exit_usage;
  }

  try {
    if (*generate) cmd_generate(gen, out, log);
    if (*sample) cmd_sample(smp, out, log);
    if (*test) cmd_test(tst, out, log);
    if (*pin_cmd) cmd_pin(pin, out, log);
    if (*simulate) cmd_simulate(sim, out, log);
    if (*compare) cmd_compare(cmp, out, log);
  } catch (...) {
    return exit_code_for(std::current_exception(), log);
  }
  return exit_ok;
}

}  // namespace sgof::cli
