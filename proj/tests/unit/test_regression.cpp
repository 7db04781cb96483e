#include <gtest/gtest.h>

#include <cmath>

#include "copoun/differentiation.hpp"
#include "copoun/error.hpp"
#include "copoun/estimation.hpp"
#include "copoun/pcd.hpp"
#include "copoun/regression.hpp"
#include "copoun/special.hpp"
#include "regression_data.hpp"

using namespace copoun;

TEST(RegressionLikelihood, SingleObservation) {
  const auto data = make_regression_data({0}, {}, {});
  const std::vector<double> beta{std::log(2.5)};
  EXPECT_NEAR(pcd_regression_loglik(data, beta, 1.0), std::log(0.28125), 1e-12);
}

TEST(RegressionLikelihood, ExpandedMatchesComposed) {
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    const double lp = -3.0 + 7.0 * rng.uniform();
    const double phi = std::exp(-4.0 + 8.0 * rng.uniform());
    const auto y = static_cast<std::int64_t>(rng.poisson(std::exp(lp) * 2.0 * rng.uniform()));
    EXPECT_NEAR(pcd_regression_term_expanded(lp, y, phi), pcd_regression_term(lp, y, phi), 1e-8)
        << lp << " " << phi << " " << y;
  }
  const auto data = testdata::simulate({0.5, -0.3, 0.8}, 1.0, 100, rng);
  const std::vector<double> beta{0.4, -0.2, 0.9};
  EXPECT_NEAR(pcd_regression_loglik_expanded(data, beta, 1.3), pcd_regression_loglik(data, beta, 1.3), 1e-8 * 100);
}

TEST(RegressionLikelihood, InterceptOnlyEqualsStandalone) {
  Rng rng(2);
  const auto sample = pcd_sample(PcdParams(1.0, 1.0), rng, 300);
  const auto data = make_regression_data(sample, {}, {});
  const double mu = 2.7;
  const double phi = 0.8;
  const std::vector<double> beta{std::log(mu)};
  const double standalone = pcd_log_likelihood(FrequencyTable::from_sample(sample), to_natural(MeanParams(mu, phi)));
  EXPECT_NEAR(pcd_regression_loglik(data, beta, phi), standalone, 1e-9);
}

TEST(RegressionLikelihood, OverflowNamesRow) {
  auto data = make_regression_data({1, 2, 3}, {{0.0, 1.0, 1000.0}}, {"x"});
  const std::vector<double> beta{0.0, 1.0};
  try {
    pcd_regression_loglik(data, beta, 1.0);
    FAIL();
  } catch (const EvaluationError& e) {
    EXPECT_NE(std::string(e.what()).find("row 2"), std::string::npos);
  }
}

TEST(RegressionData, Validation) {
  EXPECT_THROW(make_regression_data({1, 2}, {{1.0}}, {"x"}), DomainError);
  auto collinear = make_regression_data({1, 2, 3, 4}, {{1.0, 2.0, 3.0, 4.0}, {2.0, 4.0, 6.0, 8.0}}, {"a", "b"});
  EXPECT_THROW(collinear.validate(), DomainError);
  EXPECT_THROW(pcd_regression_fit(collinear), DomainError);
  auto negative = make_regression_data({1, -2, 3}, {}, {});
  EXPECT_THROW(negative.validate(), DomainError);
}

TEST(PoissonRegression, InterceptOnlyClosedForm) {
  const auto data = make_regression_data({0, 1, 2, 3}, {}, {});
  const auto fit = poisson_regression_fit(data);
  EXPECT_NEAR(fit.coefficients[0], std::log(1.5), 1e-14);
  EXPECT_TRUE(fit.converged);
  EXPECT_TRUE(fit.dispersion_name.empty());
}

TEST(PoissonRegression, ScoreAndRecovery) {
  Rng rng(3);
  const auto data = testdata::simulate({0.5, -0.3, 0.8}, 0.0, 3000, rng, testdata::Response::poisson);
  const auto fit = poisson_regression_fit(data);
  const auto g = numeric_gradient([&](std::span<const double> b) { return poisson_regression_loglik(data, b); },
                                  fit.coefficients);
  for (double v : g) EXPECT_LT(std::abs(v), 1e-4);
  const double truth[] = {0.5, -0.3, 0.8};
  for (int j = 0; j < 3; ++j) EXPECT_NEAR(fit.coefficients[j], truth[j], 3 * fit.standard_errors[j]);
}

TEST(PcdRegression, SyntheticRecovery) {
  Rng rng(4);
  const auto data = testdata::simulate({0.5, -0.3, 0.8}, 1.0, 2000, rng);
  const auto fit = pcd_regression_fit(data);
  ASSERT_TRUE(fit.converged);
  const double truth[] = {0.5, -0.3, 0.8};
  for (int j = 0; j < 3; ++j) {
    EXPECT_NEAR(fit.coefficients[j], truth[j], 3 * fit.standard_errors[j]);
    EXPECT_NEAR(fit.z_values[j], fit.coefficients[j] / fit.standard_errors[j], 1e-12);
    EXPECT_NEAR(fit.p_values[j], 2.0 * (1.0 - normal_cdf(std::abs(fit.z_values[j]))), 1e-12);
  }
  EXPECT_NEAR(fit.dispersion, 1.0, 3 * fit.dispersion_se);
  EXPECT_EQ(fit.dispersion_name, "phi");
  EXPECT_EQ(fit.parameter_count, 4);
  EXPECT_NEAR(fit.aic, 2 * 4 - 2 * fit.log_likelihood, 1e-9);
  for (std::size_t i = 0; i < data.rows(); ++i) {
    const double lp = data.linear_predictor(i, fit.coefficients);
    ASSERT_GT(fit.fitted_means[i], 0.0);
    ASSERT_EQ(fit.fitted_means[i], std::exp(lp));
    ASSERT_NEAR(pcd_mean(to_natural(MeanParams(fit.fitted_means[i], fit.dispersion))) / fit.fitted_means[i], 1.0,
                1e-10);
  }
  // Observed information at the optimum is positive definite.
  std::vector<double> theta = fit.coefficients;
  theta.push_back(fit.dispersion);
  const Matrix h = numeric_hessian(
      [&](std::span<const double> v) { return -pcd_regression_loglik(data, v.first(3), v[3]); }, theta);
  EXPECT_NO_THROW(cholesky(h));
}

TEST(PcdRegression, NullModelIntercept) {
  Rng rng(5);
  const auto data = make_regression_data(pcd_sample(PcdParams(1.0, 1.0), rng, 2000), {}, {});
  const auto fit = pcd_regression_fit(data);
  const double mu = std::exp(fit.coefficients[0]);
  // Delta method: se(exp(b0)) = exp(b0) se(b0).
  EXPECT_NEAR(mu, 2.5, 3 * mu * fit.standard_errors[0]);
}

TEST(PcdRegression, PoissonDataSmoke) {
  Rng rng(6);
  const auto data = testdata::simulate({1.0, 0.4}, 0.0, 500, rng, testdata::Response::poisson);
  const auto pcd = pcd_regression_fit(data);
  const auto poisson = poisson_regression_fit(data);
  EXPECT_TRUE(std::isfinite(pcd.aic));
  EXPECT_TRUE(std::isfinite(poisson.aic));
}

TEST(NbRegression, RecoveryAndPoissonLimit) {
  Rng rng(7);
  const auto data = testdata::simulate({0.5, -0.3, 0.8}, 2.0, 3000, rng, testdata::Response::nb);
  const auto fit = nb_regression_fit(data);
  const double truth[] = {0.5, -0.3, 0.8};
  for (int j = 0; j < 3; ++j) EXPECT_NEAR(fit.coefficients[j], truth[j], 3 * fit.standard_errors[j]);
  EXPECT_NEAR(fit.dispersion, 2.0, 3 * fit.dispersion_se);
  EXPECT_EQ(fit.dispersion_name, "size");

  const auto pdata = testdata::simulate({1.0, 0.3}, 0.0, 3000, rng, testdata::Response::poisson);
  const auto pfit = nb_regression_fit(pdata);
  EXPECT_GT(pfit.dispersion, 20.0);

  const auto null_data = make_regression_data({0, 1, 2, 3, 5, 0, 1}, {}, {});
  EXPECT_NEAR(std::exp(nb_regression_fit(null_data).coefficients[0]), 12.0 / 7.0, 1e-5);
}

TEST(Profile, PeaksAtEstimate) {
  Rng rng(8);
  const auto data = testdata::simulate({0.5, 0.6}, 1.0, 400, rng);
  const auto fit = pcd_regression_fit(data);
  const auto prof = profile_log_likelihood(RegressionModel::pcd, data, fit, 11);
  ASSERT_EQ(prof.size(), 3u * 11u);
  for (const auto& p : prof) EXPECT_LE(p.profile_log_likelihood, fit.log_likelihood + 1e-6) << p.parameter;
  // The midpoint of each coefficient grid is the estimate itself.
  for (int k = 0; k < 2; ++k) EXPECT_NEAR(prof[k * 11 + 5].profile_log_likelihood, fit.log_likelihood, 1e-6);
}

TEST(FittedCdf, MatchesDistributions) {
  Rng rng(9);
  const auto data = testdata::simulate({0.5, 0.6}, 1.0, 300, rng);
  const auto pcd = pcd_regression_fit(data);
  const PcdParams p = to_natural(MeanParams(pcd.fitted_means[4], pcd.dispersion));
  EXPECT_NEAR(fitted_cdf(RegressionModel::pcd, pcd, 4, 3), pcd_cdf(p, 3), 1e-15);
  EXPECT_EQ(fitted_cdf(RegressionModel::pcd, pcd, 4, -1), 0.0);
  const auto poi = poisson_regression_fit(data);
  const double mu = poi.fitted_means[2];
  double want = 0.0;
  for (int k = 0; k <= 4; ++k) want += std::exp(-mu + k * std::log(mu) - std::lgamma(k + 1.0));
  EXPECT_NEAR(fitted_cdf(RegressionModel::poisson, poi, 2, 4), want, 1e-13);
}
