#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "copoun/linalg.hpp"
#include "copoun/optimize.hpp"

namespace copoun {

/// Count response with a design matrix whose first column is the intercept.
struct RegressionData {
  std::vector<std::int64_t> response;
  Matrix design;
  std::vector<std::string> column_names;

  /// Throws DomainError on shape mismatch, negative responses, or a design
  /// without full column rank.
  void validate() const;
  std::size_t rows() const { return response.size(); }
  std::size_t columns() const { return design.cols(); }
  double linear_predictor(std::size_t row, std::span<const double> beta) const;
};

/// Builds intercept + covariate columns. Throws DomainError when the
/// covariate rows do not match the response length.
RegressionData make_regression_data(std::vector<std::int64_t> response,
                                    const std::vector<std::vector<double>>& covariates,
                                    std::vector<std::string> covariate_names);

enum class RegressionModel { pcd, poisson, negative_binomial };

struct RegressionFit {
  std::string model_name;
  std::vector<std::string> coefficient_names;
  std::vector<double> coefficients;
  std::vector<double> standard_errors;
  std::vector<double> z_values;
  std::vector<double> p_values;
  /// "phi" for PCD, "size" for NB, empty for Poisson.
  std::string dispersion_name;
  double dispersion = 0.0;
  double dispersion_se = 0.0;
  double log_likelihood = 0.0;
  double aic = 0.0;
  double bic = 0.0;
  long long n = 0;
  int parameter_count = 0;
  std::vector<double> fitted_means;
  bool converged = false;
  int iterations = 0;
  std::vector<std::string> notes;
};

/// ln p(y | mu, phi) through eta_from_mean and pcd_log_pmf.
double pcd_regression_term(double linear_predictor, std::int64_t y, double phi);

/// The same term written out in terms of mu = exp(x'beta) and
/// R = sqrt((phi mu - 1)^2 + 16 phi mu), N = 1 - phi mu + R:
///   2 ln N + (y+3) ln 2 + y x'beta - ln 24 - (y+4) ln(2 mu + N)
///   - ln(1 + phi mu + R) + ln[3 (2 mu + N)^3 + phi mu N^2 (y+1)(y+2)(y+3)].
double pcd_regression_term_expanded(double linear_predictor, std::int64_t y, double phi);

/// Sum of composed terms. Throws EvaluationError naming the row whose mean
/// overflows.
double pcd_regression_loglik(const RegressionData& data, std::span<const double> beta, double phi);
double pcd_regression_loglik_expanded(const RegressionData& data, std::span<const double> beta,
                                      double phi);

double poisson_regression_loglik(const RegressionData& data, std::span<const double> beta);
double nb_regression_loglik(const RegressionData& data, std::span<const double> beta, double size);

/// Joint MLE over (beta, ln phi) warm-started from the Poisson fit with phi = 1.
RegressionFit pcd_regression_fit(const RegressionData& data, const OptimizerConfig& config = {});
/// Newton-Raphson on the concave Poisson log-likelihood from beta0 = ln(mean y).
RegressionFit poisson_regression_fit(const RegressionData& data, const OptimizerConfig& config = {});
RegressionFit nb_regression_fit(const RegressionData& data, const OptimizerConfig& config = {});
RegressionFit regression_fit(RegressionModel model, const RegressionData& data,
                             const OptimizerConfig& config = {});

struct ProfilePoint {
  std::string parameter;
  double value = 0.0;
  double profile_log_likelihood = 0.0;
};

/// Profile log-likelihood of every parameter on `points` values spanning
/// estimate +/- 3 SE (the dispersion is profiled on its natural scale).
std::vector<ProfilePoint> profile_log_likelihood(RegressionModel model, const RegressionData& data,
                                                 const RegressionFit& fit, int points = 21,
                                                 const OptimizerConfig& config = {});

/// Per-observation cdf of the fitted model: F(y) at row i.
double fitted_cdf(RegressionModel model, const RegressionFit& fit, std::size_t row, std::int64_t y);

}  // namespace copoun
