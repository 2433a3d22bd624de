#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "cli/commands.hpp"
#include "sgof/design.hpp"
#include "sgof/edge_list.hpp"

namespace fs = std::filesystem;
using namespace sgof;

namespace {

struct Run {
  int code;
  std::string out;
  std::string log;
};

Run sgof_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "sgof");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, log;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, log);
  return {code, out.str(), log.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("sgof_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, HelpAndUsage) {
  EXPECT_EQ(sgof_cli({"--help"}).code, 0);
  EXPECT_EQ(sgof_cli({}).code, cli::exit_usage);
  EXPECT_EQ(sgof_cli({"frobnicate"}).code, cli::exit_usage);
  EXPECT_EQ(sgof_cli({"test", "--family", "poisson"}).code, cli::exit_usage);  // missing required flags
}

TEST_F(CliTest, GenerateEdgeCountAndDeterminism) {
  const auto a = sgof_cli({"generate", "--family", "poisson", "--theta", "3", "-N", "10000", "--seed", "5", "-o", path("a.txt")});
  ASSERT_EQ(a.code, 0) << a.log;
  const auto b = sgof_cli({"generate", "--family", "poisson", "--theta", "3", "-N", "10000", "--seed", "5", "-o", path("b.txt")});
  ASSERT_EQ(b.code, 0);
  EXPECT_EQ(slurp(path("a.txt")), slurp(path("b.txt")));
  const auto g = read_edge_list(fs::path(path("a.txt")));
  EXPECT_NEAR(static_cast<double>(g.graph.num_edges()), 15000.0, 3 * std::sqrt(15000.0));

  const auto stdout_run = sgof_cli({"generate", "--theta", "2", "-N", "50", "--seed", "1"});
  EXPECT_EQ(stdout_run.code, 0);
  EXPECT_FALSE(stdout_run.out.empty());
}

TEST_F(CliTest, GenerateRejectsThetaOutsideDomain) {
  const auto r = sgof_cli({"generate", "--family", "scale-free", "--theta", "0.8", "-N", "100"});
  EXPECT_EQ(r.code, cli::exit_usage);
  EXPECT_NE(r.log.find("(1, inf)"), std::string::npos) << r.log;
}

TEST_F(CliTest, GenerateRoundTripRecoversTheta) {
  // θ̂ from the full generated graph under an identity design, over 20 seeds,
  // lies within two standard errors sqrt(λ / N) of λ.
  const std::size_t N = 2000;
  const double lambda = 3.0;
  double sum = 0;
  for (int s = 0; s < 20; ++s) {
    const auto file = path("g" + std::to_string(s) + ".txt");
    ASSERT_EQ(sgof_cli({"generate", "--theta", "3", "-N", std::to_string(N), "--seed", std::to_string(s), "-o", file}).code, 0);
    auto g = read_edge_list(fs::path(file)).graph;
    g = with_isolates(g, N - g.num_vertices());
    const auto x = design_for(SamplingDesign::srs(N), N, family_k_max_over_search(FamilySpec::poisson(), N - 1) + 1);
    sum += estimate_theta(make_problem(g, x, FamilySpec::poisson(), false)).theta_hat;
  }
  EXPECT_NEAR(sum / 20, lambda, 2 * std::sqrt(lambda / N));
}

TEST_F(CliTest, SampleKeepsLabels) {
  {
    std::ofstream f(path("pop.txt"));
    f << "a b\nb c\nc d\nd a\n";
  }
  const auto r = sgof_cli({"sample", "--in", path("pop.txt"), "-n", "4", "--seed", "3"});
  ASSERT_EQ(r.code, 0) << r.log;
  std::istringstream text(r.out);
  const auto back = read_edge_list(text);
  EXPECT_EQ(back.graph.num_edges(), 4u);
  EXPECT_NE(r.out.find('a'), std::string::npos);
  EXPECT_EQ(sgof_cli({"sample", "--in", path("pop.txt"), "-n", "2", "-p", "0.5"}).code, cli::exit_usage);
}

TEST_F(CliTest, TestCommandJsonAndDeterminism) {
  ASSERT_EQ(sgof_cli({"generate", "--theta", "3", "-N", "3000", "--seed", "2", "-o", path("pop.txt")}).code, 0);
  ASSERT_EQ(sgof_cli({"sample", "--in", path("pop.txt"), "-n", "300", "--seed", "4", "-o", path("s.txt")}).code, 0);
  const std::vector<std::string> args{"test", "--in", path("s.txt"), "--family", "poisson", "-N", "3000", "-n",
                                      "300", "-B", "49", "--seed", "9"};
  const auto a = sgof_cli(args);
  ASSERT_EQ(a.code, 0) << a.log;
  const auto b = sgof_cli(args);
  EXPECT_EQ(a.out, b.out);
  const auto j = nlohmann::json::parse(a.out);
  EXPECT_EQ(j["family"], "poisson");
  EXPECT_EQ(j["B"], 49);
  EXPECT_EQ(j["sample_size"], 300);  // isolates padded back to n
  EXPECT_TRUE(a.log.find("H0") != std::string::npos);

  auto with_threads = args;
  with_threads.insert(with_threads.end(), {"--threads", "3"});
  EXPECT_EQ(sgof_cli(with_threads).out, a.out);
}

TEST_F(CliTest, TestCommandErrors) {
  {
    std::ofstream f(path("empty.txt"));
    f << "# no edges at all\n";
  }
  const auto empty = sgof_cli({"test", "--in", path("empty.txt"), "-N", "100", "-n", "10"});
  EXPECT_EQ(empty.code, cli::exit_data);
  EXPECT_NE(empty.log.find("no edges"), std::string::npos);

  {
    std::ofstream f(path("bad.txt"));
    f << "a b\nb\n";
  }
  const auto bad = sgof_cli({"test", "--in", path("bad.txt"), "-N", "100", "-n", "10"});
  EXPECT_EQ(bad.code, cli::exit_data);
  EXPECT_NE(bad.log.find("line 2"), std::string::npos) << bad.log;

  {
    std::ofstream f(path("ok.txt"));
    f << "a b\nb c\nc d\n";
  }
  EXPECT_EQ(sgof_cli({"test", "--in", path("ok.txt"), "-N", "100", "-n", "10", "--rate", "0.1"}).code, cli::exit_usage);
  EXPECT_EQ(sgof_cli({"test", "--in", path("ok.txt"), "-N", "3"}).code, cli::exit_usage);
  EXPECT_EQ(sgof_cli({"test", "--in", path("missing.txt"), "-N", "100"}).code, cli::exit_data);
  EXPECT_EQ(sgof_cli({"test", "--in", path("ok.txt"), "-N", "100", "--weighting", "odd"}).code, cli::exit_usage);
  // A four-vertex path tested for scale-free at N = 5000 leaves almost every
  // pseudo sample edgeless.
  EXPECT_EQ(sgof_cli({"test", "--in", path("ok.txt"), "-N", "5000", "-n", "4", "--family", "scale-free", "-B", "20"}).code,
            cli::exit_numerical);
}

TEST_F(CliTest, ConfigFileWithFlagPrecedence) {
  ASSERT_EQ(sgof_cli({"generate", "--theta", "2", "-N", "1000", "--seed", "1", "-o", path("pop.txt")}).code, 0);
  {
    std::ofstream f(path("run.ini"));
    f << "[test]\nfamily = exponential\nB = 19\nseed = 3\npopulation-N = 1000\n";
  }
  const auto r = sgof_cli({"--config", path("run.ini"), "test", "--in", path("pop.txt"), "-B", "29"});
  ASSERT_EQ(r.code, 0) << r.log;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["family"], "exponential");
  EXPECT_EQ(j["B"], 29);
  EXPECT_EQ(j["seed"], 3);
}

TEST_F(CliTest, PinTable) {
  ASSERT_EQ(sgof_cli({"generate", "--family", "scale-free", "--theta", "1.8", "-N", "6000", "--seed", "3", "-o",
                      path("pop.txt")})
                .code,
            0);
  ASSERT_EQ(sgof_cli({"sample", "--in", path("pop.txt"), "-p", "0.13", "-r", "0.3", "--seed", "5", "-o", path("core.txt")}).code,
            0);
  const std::vector<std::string> args{"pin", "--in", "core=" + path("core.txt"), "--fn-rates", "0.7",
                                      "--families", "poisson,scale-free", "-B", "19", "--seed", "2"};
  const auto r = sgof_cli(args);
  ASSERT_EQ(r.code, 0) << r.log;
  std::istringstream lines(r.out);
  std::string header;
  std::getline(lines, header);
  EXPECT_EQ(header, "dataset,family,fn_rate,r,n,theta_hat,D,p_value,reject");
  int rows = 0;
  for (std::string line; std::getline(lines, line);) {
    ++rows;
    EXPECT_EQ(line.rfind("core,", 0), 0u);
  }
  EXPECT_EQ(rows, 2);
  EXPECT_EQ(sgof_cli(args).out, r.out);

  auto json_args = args;
  json_args.insert(json_args.end(), {"--format", "json"});
  const auto j = nlohmann::json::parse(sgof_cli(json_args).out);
  ASSERT_EQ(j.size(), 2u);
  EXPECT_EQ(j[0]["dataset"], "core");
  EXPECT_NEAR(j[0]["r"].get<double>(), 0.3, 1e-12);

  EXPECT_EQ(sgof_cli({"pin", "--in", path("core.txt"), "--fn-rates", "1.2"}).code, cli::exit_usage);
  EXPECT_EQ(sgof_cli({"pin", "--in", path("core.txt"), "-N", "10"}).code, cli::exit_usage);
}

TEST_F(CliTest, SimulateAndCompare) {
  const std::vector<std::string> base{"simulate", "--dgp", "poisson:3", "--rate", "0.1", "--test", "scale-free",
                                      "--reps", "4", "-B", "19", "-N", "2000", "--seed", "7", "--quiet"};
  const auto a = sgof_cli(base);
  ASSERT_EQ(a.code, 0) << a.log;
  EXPECT_EQ(sgof_cli(base).out, a.out);
  EXPECT_EQ(a.out.rfind("dgp_family,dgp_param,rate,test_family,reject_pct,mc_se,reps,B,seed\n", 0), 0u);
  {
    std::ofstream f(path("small.csv"));
    f << a.out;
  }
  const auto cmp = sgof_cli({"compare", path("small.csv"), path("small.csv")});
  ASSERT_EQ(cmp.code, 0) << cmp.log;
  EXPECT_NE(cmp.log.find("0 of 1"), std::string::npos);

  auto zero = base;
  zero[8] = "0";
  EXPECT_EQ(sgof_cli(zero).code, cli::exit_usage);
  EXPECT_EQ(sgof_cli({"simulate", "--dgp", "poisson"}).code, cli::exit_usage);
}
