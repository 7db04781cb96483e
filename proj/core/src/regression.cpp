#include "copoun/regression.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "copoun/error.hpp"
#include "copoun/mle.hpp"
#include "copoun/pcd.hpp"
#include "copoun/special.hpp"

namespace copoun {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
// Linear predictors beyond this magnitude are rejected during optimization.
constexpr double kPredictorGuard = 30.0;
constexpr double kLn2 = std::numbers::ln2;
const double kLn24 = std::log(24.0);

double nb_log_pmf(double mu, double size, double y) {
  const double log_total = std::log(mu + size);
  return log_gamma(y + size) - log_gamma(size) - log_factorial(y) +
         size * (std::log(size) - log_total) + (y == 0.0 ? 0.0 : y * (std::log(mu) - log_total));
}

double poisson_log_pmf(double mu, double y) {
  return -mu + (y == 0.0 ? 0.0 : y * std::log(mu)) - log_factorial(y);
}

std::string model_label(RegressionModel m) {
  switch (m) {
    case RegressionModel::pcd:
      return "pcd";
    case RegressionModel::poisson:
      return "poisson";
    case RegressionModel::negative_binomial:
      return "nb";
  }
  return "unknown";
}

// Negative log-likelihood over natural parameters (beta..., dispersion) with
// the predictor guard applied. Returns +inf outside the feasible region.
MleProblem regression_problem(RegressionModel model, const RegressionData& data) {
  MleProblem p;
  p.model_name = model_label(model);
  p.n = static_cast<long long>(data.rows());
  for (const auto& name : data.column_names) p.parameters.push_back({name, Transform::identity});
  const std::size_t k = data.columns();
  if (model == RegressionModel::pcd) p.parameters.push_back({"phi", Transform::log});
  if (model == RegressionModel::negative_binomial) p.parameters.push_back({"size", Transform::log});

  p.negative_log_likelihood = [model, &data, k](std::span<const double> v) {
    const auto beta = v.first(k);
    const double disp = model == RegressionModel::poisson ? 0.0 : v[k];
    if (model != RegressionModel::poisson && !(disp > 0.0 && std::isfinite(disp))) return kInf;
    double total = 0.0;
    for (std::size_t i = 0; i < data.rows(); ++i) {
      const double lp = data.linear_predictor(i, beta);
      if (!(std::abs(lp) <= kPredictorGuard)) return kInf;
      const auto y = data.response[i];
      switch (model) {
        case RegressionModel::pcd:
          total -= pcd_regression_term(lp, y, disp);
          break;
        case RegressionModel::poisson:
          total -= poisson_log_pmf(std::exp(lp), static_cast<double>(y));
          break;
        case RegressionModel::negative_binomial:
          total -= nb_log_pmf(std::exp(lp), disp, static_cast<double>(y));
          break;
      }
    }
    return total;
  };
  return p;
}

RegressionFit to_regression_fit(RegressionModel model, const RegressionData& data,
                                const MleSolution& sol) {
  const FitReport& r = sol.report;
  const std::size_t k = data.columns();
  RegressionFit fit;
  fit.model_name = r.model_name;
  fit.coefficient_names = data.column_names;
  fit.coefficients.assign(r.estimates.begin(), r.estimates.begin() + static_cast<long>(k));
  fit.standard_errors.assign(r.standard_errors.begin(), r.standard_errors.begin() + static_cast<long>(k));
  for (std::size_t j = 0; j < k; ++j) {
    const double z = fit.coefficients[j] / fit.standard_errors[j];
    fit.z_values.push_back(z);
    fit.p_values.push_back(2.0 * normal_cdf(-std::abs(z)));
  }
  if (model != RegressionModel::poisson) {
    fit.dispersion_name = r.parameter_names[k];
    fit.dispersion = r.estimates[k];
    fit.dispersion_se = r.standard_errors[k];
  } else {
    fit.dispersion = kNaN;
    fit.dispersion_se = kNaN;
  }
  fit.log_likelihood = r.log_likelihood;
  fit.aic = r.aic;
  fit.bic = r.bic;
  fit.n = r.n;
  fit.parameter_count = r.parameter_count();
  fit.converged = r.converged;
  fit.iterations = r.iterations;
  fit.notes = r.notes;
  fit.fitted_means.resize(data.rows());
  for (std::size_t i = 0; i < data.rows(); ++i)
    fit.fitted_means[i] = std::exp(data.linear_predictor(i, fit.coefficients));
  return fit;
}

struct NewtonResult {
  std::vector<double> beta;
  bool converged = false;
  int iterations = 0;
};

NewtonResult poisson_newton(const RegressionData& data, int max_iterations) {
  const std::size_t k = data.columns();
  const std::size_t n = data.rows();
  double mean = 0.0;
  for (auto y : data.response) mean += static_cast<double>(y);
  mean /= static_cast<double>(n);
  if (!(mean > 0.0)) throw EstimationError("poisson regression: all responses are zero");

  NewtonResult out;
  out.beta.assign(k, 0.0);
  out.beta[0] = std::log(mean);
  auto loglik = [&](std::span<const double> b) {
    double ll = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double lp = data.linear_predictor(i, b);
      if (!(std::abs(lp) <= kPredictorGuard)) return -kInf;
      ll += static_cast<double>(data.response[i]) * lp - std::exp(lp);
    }
    return ll;
  };

  double current = loglik(out.beta);
  for (; out.iterations < max_iterations; ++out.iterations) {
    std::vector<double> grad(k, 0.0);
    Matrix info(k, k);
    for (std::size_t i = 0; i < n; ++i) {
      const double mu = std::exp(data.linear_predictor(i, out.beta));
      const auto row = data.design.row(i);
      const double resid = static_cast<double>(data.response[i]) - mu;
      for (std::size_t a = 0; a < k; ++a) {
        grad[a] += row[a] * resid;
        for (std::size_t b = 0; b <= a; ++b) info(a, b) += mu * row[a] * row[b];
      }
    }
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < a; ++b) info(b, a) = info(a, b);

    const std::vector<double> step = solve_spd(info, grad);
    double t = 1.0;
    std::vector<double> trial(k);
    double next = -kInf;
    for (int halving = 0; halving < 40; ++halving, t *= 0.5) {
      for (std::size_t a = 0; a < k; ++a) trial[a] = out.beta[a] + t * step[a];
      next = loglik(trial);
      if (next >= current) break;
    }
    if (!(next >= current)) break;
    double largest = 0.0;
    for (std::size_t a = 0; a < k; ++a)
      largest = std::max(largest, std::abs(trial[a] - out.beta[a]) / (1.0 + std::abs(out.beta[a])));
    out.beta = trial;
    current = next;
    if (largest < 1e-13) {
      out.converged = true;
      ++out.iterations;
      break;
    }
  }
  return out;
}

}  // namespace

void RegressionData::validate() const {
  if (response.empty()) throw DomainError("regression data: no observations");
  if (design.rows() != response.size()) {
    throw DomainError("regression data: response length does not match design rows");
  }
  if (column_names.size() != design.cols()) {
    throw DomainError("regression data: column names do not match design columns");
  }
  for (auto y : response)
    if (y < 0) throw DomainError("regression data: responses must be nonnegative");
  for (std::size_t i = 0; i < design.rows(); ++i)
    for (double v : design.row(i))
      if (!std::isfinite(v)) throw DomainError("regression data: non-finite covariate value");
  const Matrix gram = design.transposed() * design;
  try {
    static_cast<void>(cholesky(gram));
  } catch (const NotPositiveDefiniteError&) {
    throw DomainError("regression data: design matrix is rank deficient");
  }
  // Cholesky can succeed on a numerically singular Gram matrix; check the
  // pivots relative to the diagonal.
  const Matrix l = cholesky(gram);
  for (std::size_t j = 0; j < gram.rows(); ++j) {
    if (l(j, j) * l(j, j) < 1e-12 * gram(j, j)) {
      throw DomainError("regression data: design matrix is rank deficient");
    }
  }
}

double RegressionData::linear_predictor(std::size_t row, std::span<const double> beta) const {
  const auto x = design.row(row);
  double s = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) s += x[j] * beta[j];
  return s;
}

RegressionData make_regression_data(std::vector<std::int64_t> response,
                                    const std::vector<std::vector<double>>& covariates,
                                    std::vector<std::string> covariate_names) {
  if (covariates.size() != covariate_names.size()) {
    throw DomainError("make_regression_data: one name per covariate column is required");
  }
  RegressionData data;
  data.design = Matrix(response.size(), covariates.size() + 1);
  for (std::size_t j = 0; j < covariates.size(); ++j) {
    if (covariates[j].size() != response.size()) {
      throw DomainError("make_regression_data: covariate '" + covariate_names[j] +
                        "' length does not match the response");
    }
  }
  for (std::size_t i = 0; i < response.size(); ++i) {
    data.design(i, 0) = 1.0;
    for (std::size_t j = 0; j < covariates.size(); ++j) data.design(i, j + 1) = covariates[j][i];
  }
  data.column_names.push_back("intercept");
  for (auto& name : covariate_names) data.column_names.push_back(std::move(name));
  data.response = std::move(response);
  return data;
}

double pcd_regression_term(double linear_predictor, std::int64_t y, double phi) {
  const double eta = eta_from_mean(MeanParams(std::exp(linear_predictor), phi));
  return pcd_log_pmf(PcdParams(eta, phi), y);
}

double pcd_regression_term_expanded(double linear_predictor, std::int64_t y, double phi) {
  if (y < 0) throw DomainError("pcd_regression_term_expanded: y must be nonnegative");
  const double mu = std::exp(linear_predictor);
  const double pm = phi * mu;
  const double root = std::sqrt((pm - 1.0) * (pm - 1.0) + 16.0 * pm);
  const double numer = 1.0 - pm + root;
  const double yd = static_cast<double>(y);
  const double cubic = (yd + 1.0) * (yd + 2.0) * (yd + 3.0);
  const double shifted = 2.0 * mu + numer;
  return 2.0 * std::log(numer) + (yd + 3.0) * kLn2 + yd * linear_predictor - kLn24 -
         (yd + 4.0) * std::log(shifted) - std::log(1.0 + pm + root) +
         std::log(3.0 * shifted * shifted * shifted + pm * numer * numer * cubic);
}

double pcd_regression_loglik(const RegressionData& data, std::span<const double> beta, double phi) {
  if (!(phi > 0.0)) throw DomainError("pcd_regression_loglik: phi must be positive");
  if (beta.size() != data.columns()) throw DomainError("pcd_regression_loglik: beta has wrong length");
  double total = 0.0;
  for (std::size_t i = 0; i < data.rows(); ++i) {
    const double lp = data.linear_predictor(i, beta);
    if (!std::isfinite(std::exp(lp))) {
      throw EvaluationError("pcd_regression_loglik: mean overflows at row " + std::to_string(i),
                            {beta.begin(), beta.end()});
    }
    total += pcd_regression_term(lp, data.response[i], phi);
  }
  return total;
}

double pcd_regression_loglik_expanded(const RegressionData& data, std::span<const double> beta,
                                      double phi) {
  if (beta.size() != data.columns()) throw DomainError("beta has wrong length");
  double total = 0.0;
  for (std::size_t i = 0; i < data.rows(); ++i)
    total += pcd_regression_term_expanded(data.linear_predictor(i, beta), data.response[i], phi);
  return total;
}

double poisson_regression_loglik(const RegressionData& data, std::span<const double> beta) {
  double total = 0.0;
  for (std::size_t i = 0; i < data.rows(); ++i)
    total += poisson_log_pmf(std::exp(data.linear_predictor(i, beta)),
                             static_cast<double>(data.response[i]));
  return total;
}

double nb_regression_loglik(const RegressionData& data, std::span<const double> beta, double size) {
  double total = 0.0;
  for (std::size_t i = 0; i < data.rows(); ++i)
    total += nb_log_pmf(std::exp(data.linear_predictor(i, beta)), size,
                        static_cast<double>(data.response[i]));
  return total;
}

RegressionFit poisson_regression_fit(const RegressionData& data, const OptimizerConfig& config) {
  data.validate();
  const NewtonResult newton = poisson_newton(data, std::min(config.max_iterations, 200));
  const MleProblem problem = regression_problem(RegressionModel::poisson, data);
  RegressionFit fit = to_regression_fit(
      RegressionModel::poisson, data,
      evaluate_at(problem, newton.beta, newton.converged, newton.iterations));
  return fit;
}

RegressionFit pcd_regression_fit(const RegressionData& data, const OptimizerConfig& config) {
  data.validate();
  if (data.rows() <= data.columns() + 1) {
    throw EstimationError("pcd regression: needs more observations than parameters + 1");
  }
  const NewtonResult warm = poisson_newton(data, 200);
  MleProblem problem = regression_problem(RegressionModel::pcd, data);
  std::vector<double> start = warm.beta;
  start.push_back(1.0);
  problem.starts.push_back(std::move(start));
  return to_regression_fit(RegressionModel::pcd, data, fit_mle(problem, config));
}

RegressionFit nb_regression_fit(const RegressionData& data, const OptimizerConfig& config) {
  data.validate();
  if (data.rows() <= data.columns() + 1) {
    throw EstimationError("nb regression: needs more observations than parameters + 1");
  }
  const NewtonResult warm = poisson_newton(data, 200);
  // Moment estimate of 1/size from Pearson-type residuals.
  double excess = 0.0;
  for (std::size_t i = 0; i < data.rows(); ++i) {
    const double mu = std::exp(data.linear_predictor(i, warm.beta));
    const double r = static_cast<double>(data.response[i]) - mu;
    excess += (r * r - mu) / (mu * mu);
  }
  excess /= static_cast<double>(data.rows());
  const double size0 = excess > 1e-3 ? 1.0 / excess : 100.0;

  MleProblem problem = regression_problem(RegressionModel::negative_binomial, data);
  std::vector<double> start = warm.beta;
  start.push_back(size0);
  problem.starts.push_back(std::move(start));
  RegressionFit fit = to_regression_fit(RegressionModel::negative_binomial, data, fit_mle(problem, config));
  return fit;
}

RegressionFit regression_fit(RegressionModel model, const RegressionData& data,
                             const OptimizerConfig& config) {
  switch (model) {
    case RegressionModel::pcd:
      return pcd_regression_fit(data, config);
    case RegressionModel::poisson:
      return poisson_regression_fit(data, config);
    case RegressionModel::negative_binomial:
      return nb_regression_fit(data, config);
  }
  throw DomainError("regression_fit: unknown model");
}

std::vector<ProfilePoint> profile_log_likelihood(RegressionModel model, const RegressionData& data,
                                                 const RegressionFit& fit, int points,
                                                 const OptimizerConfig& config) {
  if (points < 2) throw DomainError("profile_log_likelihood: points must be >= 2");
  const MleProblem problem = regression_problem(model, data);
  const std::size_t dim = problem.parameters.size();

  std::vector<double> estimate = fit.coefficients;
  std::vector<double> se = fit.standard_errors;
  if (model != RegressionModel::poisson) {
    estimate.push_back(fit.dispersion);
    se.push_back(fit.dispersion_se);
  }

  std::vector<double> u_hat(dim);
  for (std::size_t j = 0; j < dim; ++j) u_hat[j] = to_unconstrained(problem.parameters[j].transform, estimate[j]);

  OptimizerConfig local = config;
  local.simplex_scale = std::min(config.simplex_scale, 0.02);

  std::vector<ProfilePoint> out;
  for (std::size_t j = 0; j < dim; ++j) {
    if (!std::isfinite(se[j])) continue;
    const auto transform = problem.parameters[j].transform;
    double lo = estimate[j] - 3.0 * se[j];
    const double hi = estimate[j] + 3.0 * se[j];
    if (transform == Transform::log) lo = std::max(lo, 0.05 * estimate[j]);

    std::vector<double> others;
    for (std::size_t i = 0; i < dim; ++i)
      if (i != j) others.push_back(u_hat[i]);

    for (int g = 0; g < points; ++g) {
      const double value = lo + (hi - lo) * g / (points - 1);
      const double fixed = to_unconstrained(transform, value);
      auto objective = [&](std::span<const double> sub) {
        std::vector<double> natural(dim);
        for (std::size_t i = 0, s = 0; i < dim; ++i) {
          const double u = i == j ? fixed : sub[s++];
          natural[i] = to_natural(problem.parameters[i].transform, u);
        }
        return problem.negative_log_likelihood(natural);
      };
      double profile;
      if (others.empty()) {
        profile = -objective(std::span<const double>{});
      } else {
        // Neighbouring grid points share most of their optimum; start from the last one.
        const OptimResult r = minimize(objective, others, local);
        if (std::isfinite(r.min_value)) others = r.argmin;
        profile = -r.min_value;
      }
      out.push_back({problem.parameters[j].name, value, profile});
    }
  }
  return out;
}

double fitted_cdf(RegressionModel model, const RegressionFit& fit, std::size_t row, std::int64_t y) {
  if (y < 0) return 0.0;
  const double mu = fit.fitted_means.at(row);
  switch (model) {
    case RegressionModel::pcd:
      return pcd_cdf(to_natural(MeanParams(mu, fit.dispersion)), y);
    case RegressionModel::poisson:
      return gamma_q(static_cast<double>(y) + 1.0, mu);
    case RegressionModel::negative_binomial: {
      double sum = 0.0;
      for (std::int64_t k = 0; k <= y; ++k)
        sum += std::exp(nb_log_pmf(mu, fit.dispersion, static_cast<double>(k)));
      return std::min(sum, 1.0);
    }
  }
  return kNaN;
}

}  // namespace copoun
