#include <gtest/gtest.h>

#include <cmath>

#include "sgof/bootstrap.hpp"
#include "sgof/design.hpp"
#include "sgof/errors.hpp"
#include "sgof/estimate.hpp"
#include "sgof/sampling.hpp"

using namespace sgof;

namespace {

std::size_t width(const FamilySpec& f, std::size_t N) { return family_k_max_over_search(f, N - 1) + 1; }

// Observed PMF equal to X P0(θ) exactly.
GmmProblem exact_problem(const FamilySpec& f, double theta, std::shared_ptr<const DesignMatrix> x, double n) {
  GmmProblem p;
  p.design = x;
  p.family = f;
  p.sample_size = n;
  p.observed_pmf = apply_design(*x, family_pmf(f, theta, x->cols() - 1).values);
  double total = 0;
  for (const auto v : p.observed_pmf) total += v;
  for (auto& v : p.observed_pmf) v /= total;
  return p;
}

// Direct evaluation of the quadratic form over every design row.
double objective_oracle(const GmmProblem& p, double theta) {
  auto model = apply_design(*p.design, family_pmf(p.family, theta, p.design->cols() - 1).values);
  auto obs = p.observed_pmf;
  obs.resize(model.size(), 0.0);
  if (p.zero_truncated) {
    const double ko = 1 - obs[0];
    const double km = 1 - model[0];
    obs[0] = model[0] = 0;
    for (auto& v : obs) v /= ko;
    for (auto& v : model) v /= km;
  }
  double sum = 0;
  for (std::size_t i = 0; i < model.size(); ++i) {
    const double r = obs[i] - model[i];
    switch (p.weighting) {
      case Weighting::observed_diag:
        if (obs[i] > 0) sum += r * r / obs[i];
        break;
      case Weighting::model_diag:
        if (model[i] > 0) sum += r * r / model[i];
        break;
      case Weighting::model_diag_literal:
        sum += r * r * model[i];
        break;
    }
  }
  return p.sample_size * sum;
}

Graph poisson_sample(std::size_t N, std::size_t n, double lambda, std::uint64_t seed) {
  const auto g = build_null_graph(FamilySpec::poisson(), lambda, N, seed, {});
  return draw_sample(g, SamplingDesign::srs(n), seed + 1);
}

}  // namespace

TEST(GmmObjective, ZeroAtExactFit) {
  const auto f = FamilySpec::poisson();
  const auto x = design_for(SamplingDesign::srs(1000), 10000, width(f, 10000));
  const auto p = exact_problem(f, 3.0, x, 1000);
  EXPECT_NEAR(gmm_objective(p, 3.0), 0.0, 1e-18);
  EXPECT_GT(gmm_objective(p, 3.1), 0.0);
}

TEST(GmmObjective, MatchesQuadraticFormOracle) {
  const auto sample = poisson_sample(3000, 400, 4.0, 17);
  for (const auto& f : {FamilySpec::poisson(), FamilySpec::scale_free(), FamilySpec::exponential()}) {
    const auto x = design_for(SamplingDesign::srs(400), 3000, width(f, 3000));
    for (const auto w : {Weighting::observed_diag, Weighting::model_diag, Weighting::model_diag_literal}) {
      for (const bool zt : {false, true}) {
        const auto p = make_problem(sample, x, f, zt, w);
        const auto d = f.search_domain();
        for (const double theta : {d.lower * 3, (d.lower + d.upper) / 7, d.upper * 0.9, 2.2}) {
          const double got = gmm_objective(p, theta);
          const double want = objective_oracle(p, theta);
          ASSERT_GE(got, 0.0);
          ASSERT_NEAR(got, want, 1e-9 * std::max(1.0, want)) << f.name() << " w" << static_cast<int>(w) << " zt" << zt
                                                              << " theta " << theta;
        }
      }
    }
  }
}

TEST(GmmObjective, ObservedWeightingIgnoresEmptyBins) {
  // Two observed PMFs that differ only in where the zero bins are cannot be
  // compared directly, so check the weighting through the oracle: the
  // objective equals the sum over positive observed bins alone.
  GmmProblem p;
  p.design = std::make_shared<const DesignMatrix>(design_binomial(1.0, 8, 8));
  p.family = FamilySpec::poisson();
  p.sample_size = 50;
  p.observed_pmf = {0.2, 0.0, 0.5, 0.0, 0.3};
  const double theta = 1.7;
  const auto model = family_pmf(p.family, theta, 7).values;
  double want = 0;
  for (const std::size_t i : {0u, 2u, 4u}) want += std::pow(p.observed_pmf[i] - model[i], 2) / p.observed_pmf[i];
  EXPECT_NEAR(gmm_objective(p, theta), 50 * want, 1e-12);
}

TEST(GmmObjective, DomainViolation) {
  const auto f = FamilySpec::scale_free();
  const auto x = design_for(SamplingDesign::srs(100), 1000, width(f, 1000));
  const auto p = exact_problem(f, 2.0, x, 100);
  EXPECT_THROW(gmm_objective(p, 0.9), invalid_argument);
}

TEST(EstimateTheta, RecoversPoissonFromExactMoments) {
  const auto f = FamilySpec::poisson();
  const auto x = design_for(SamplingDesign::srs(1000), 10000, width(f, 10000));
  const auto est = estimate_theta(exact_problem(f, 3.0, x, 1000));
  EXPECT_NEAR(est.theta_hat, 3.0, 1e-4);
  EXPECT_TRUE(est.converged);
  EXPECT_GE(est.objective_value, 0.0);
  EXPECT_GT(est.iterations, 8u);
}

TEST(EstimateTheta, RecoversEveryFamilyOnExactMoments) {
  struct Case {
    FamilySpec family;
    std::vector<double> thetas;
  };
  const std::vector<Case> cases{{FamilySpec::poisson(), {1, 2, 3, 4, 5, 19.39, 84.77}},
                                {FamilySpec::scale_free(), {1.75, 2.0, 2.25, 2.5, 2.75}},
                                {FamilySpec::exponential(), {0.02, 0.05, 0.1, 0.5}}};
  for (const auto& c : cases) {
    const auto x = design_for(SamplingDesign::srs(400), 2000, width(c.family, 2000));
    for (const double theta : c.thetas) {
      const auto est = estimate_theta(exact_problem(c.family, theta, x, 400));
      EXPECT_NEAR(est.theta_hat, theta, 1e-4 * std::max(1.0, theta)) << c.family.name() << " " << theta;
    }
  }
}

TEST(EstimateTheta, ZeroTruncatedExactMomentsUnderFalseNegatives) {
  const auto design = SamplingDesign::bernoulli(813.0 / 6000, 0.3);
  for (const auto& [f, theta] : {std::pair{FamilySpec::scale_free(), 1.74}, std::pair{FamilySpec::poisson(), 19.39},
                                 std::pair{FamilySpec::exponential(), 0.08}}) {
    const auto x = design_for(design, 6000, width(f, 6000));
    auto p = exact_problem(f, theta, x, 500);
    p.zero_truncated = true;
    const auto est = estimate_theta(p);
    EXPECT_NEAR(est.theta_hat, theta, 1e-4 * std::max(1.0, theta)) << f.name();
  }
}

TEST(EstimateTheta, AgreesWithGridSearch) {
  const auto sample = poisson_sample(5000, 600, 3.0, 99);
  for (const auto& f : {FamilySpec::poisson(), FamilySpec::scale_free(), FamilySpec::exponential()}) {
    const auto x = design_for(SamplingDesign::srs(600), 5000, width(f, 5000));
    const auto p = make_problem(sample, x, f, false);
    GmmObjective obj(p);
    const auto est = estimate_theta(obj);
    const auto d = f.search_domain();
    const int points = 10000;
    const double step = (d.upper - d.lower) / (points - 1);
    double best = d.lower, best_val = INFINITY;
    for (int t = 0; t < points; ++t) {
      const double theta = d.lower + step * t;
      const double v = obj(theta);
      if (v < best_val) {
        best_val = v;
        best = theta;
      }
    }
    EXPECT_LE(std::abs(est.theta_hat - best), step) << f.name();
    EXPECT_LE(est.objective_value, best_val * (1 + 1e-12)) << f.name();
  }
}

TEST(EstimateTheta, ScaleConsistency) {
  const auto sample = poisson_sample(4000, 500, 2.5, 5);
  const auto f = FamilySpec::poisson();
  const auto x = design_for(SamplingDesign::srs(500), 4000, width(f, 4000));
  auto p = make_problem(sample, x, f, false);
  auto q = p;
  q.sample_size *= 2;
  for (const double theta : {0.5, 2.5, 7.0}) EXPECT_NEAR(gmm_objective(q, theta), 2 * gmm_objective(p, theta), 1e-9);
  const auto a = estimate_theta(p);
  const auto b = estimate_theta(q);
  EXPECT_NEAR(a.theta_hat, b.theta_hat, 1e-7);
  EXPECT_NEAR(b.objective_value, 2 * a.objective_value, 1e-9 * std::max(1.0, a.objective_value));
}

TEST(EstimateTheta, DegenerateSampleFails) {
  const auto f = FamilySpec::scale_free();
  GmmProblem p;
  p.design = design_for(SamplingDesign::srs(100), 1000, width(f, 1000));
  p.family = f;
  p.sample_size = 100;
  p.observed_pmf = {0.4, 0.6};  // nothing above degree 1
  EXPECT_THROW(estimate_theta(p), estimation_failure);
  p.family = FamilySpec::poisson();
  p.observed_pmf = {1.0};
  EXPECT_THROW(estimate_theta(p), estimation_failure);
}

TEST(EstimateTheta, WaldEqualsObjectiveAtEstimate) {
  const auto sample = poisson_sample(3000, 300, 3.0, 8);
  const auto f = FamilySpec::exponential();
  const auto x = design_for(SamplingDesign::srs(300), 3000, width(f, 3000));
  const auto p = make_problem(sample, x, f, false);
  const auto est = estimate_theta(p);
  EXPECT_DOUBLE_EQ(wald_statistic(p, est.theta_hat), est.objective_value);
  EXPECT_GE(est.objective_value, 0.0);
}

TEST(KsStatistic, HandComputedTwoPoint) {
  // Identity design, exponential with a huge rate is a point mass at 0 in
  // double precision.
  const auto x = std::make_shared<const DesignMatrix>(design_binomial(1.0, 2, 2));
  const std::vector<double> obs{0.5, 0.5};
  EXPECT_NEAR(ks_statistic(obs, x, FamilySpec::exponential(), 700.0, 100), 5.0, 1e-12);
}

TEST(KsStatistic, ZeroAtExactFitAndPaddingInvariant) {
  const auto f = FamilySpec::poisson();
  const auto x = design_for(SamplingDesign::srs(200), 2000, width(f, 2000));
  const auto p = exact_problem(f, 2.0, x, 200);
  EXPECT_NEAR(ks_statistic(p.observed_pmf, x, f, 2.0, 200), 0.0, 1e-10);

  const auto sample = poisson_sample(2000, 200, 2.0, 3);
  auto obs = degree_distribution(sample).pmf;
  const double d1 = ks_statistic(obs, x, f, 2.4, 200);
  obs.resize(obs.size() + 25, 0.0);
  const double d2 = ks_statistic(obs, x, f, 2.4, 200);
  EXPECT_DOUBLE_EQ(d1, d2);
  EXPECT_GT(d1, 0.0);
}

TEST(KsStatistic, MatchesCdfOracle) {
  const auto sample = poisson_sample(2000, 300, 3.0, 12);
  const auto f = FamilySpec::scale_free();
  const auto x = design_for(SamplingDesign::srs(300), 2000, width(f, 2000));
  const auto obs = degree_distribution(sample).pmf;
  const double theta = 2.1;
  const auto model = apply_design(*x, family_pmf(f, theta, x->cols() - 1).values);
  double fo = 0, fm = 0, sup = 0;
  for (std::size_t i = 0; i < model.size(); ++i) {
    fo += i < obs.size() ? obs[i] : 0.0;
    fm += model[i];
    sup = std::max(sup, std::abs(fo - fm));
  }
  EXPECT_NEAR(ks_statistic(obs, x, f, theta, 300), std::sqrt(300.0) * sup, 1e-12);
}

TEST(EstimateTheta, GridBracketThatIsNotUnimodal) {
  // Full population under an identity design. Bins above the largest
  // observed degree carry no weight, so the objective dips again at large λ
  // inside the grid bracket around the true minimum.
  const auto g = build_null_graph(FamilySpec::poisson(), 1.5, 600, 1000, {});
  const auto f = FamilySpec::poisson();
  const auto x = design_for(SamplingDesign::srs(600), 600, width(f, 600));
  const auto p = make_problem(g, x, f, false);
  const auto est = estimate_theta(p);
  // Oracle: a fine log grid over [0.5, 5].
  double best = INFINITY;
  for (int t = 0; t <= 4000; ++t) best = std::min(best, gmm_objective(p, 0.5 * std::pow(10.0, t / 4000.0)));
  EXPECT_LE(est.objective_value, best * (1 + 1e-9));
  EXPECT_NEAR(est.theta_hat, 1.5, 0.15);
}
