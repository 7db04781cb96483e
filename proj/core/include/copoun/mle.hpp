#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "copoun/fit_report.hpp"
#include "copoun/linalg.hpp"
#include "copoun/optimize.hpp"

namespace copoun {

/// Map from an unconstrained optimizer coordinate to a natural parameter.
enum class Transform { identity, log, logit };

struct ParameterSpec {
  std::string name;
  Transform transform = Transform::identity;
};

/// A likelihood problem stated in natural coordinates. The fitter works in
/// the unconstrained coordinates implied by each parameter's transform.
struct MleProblem {
  std::string model_name;
  std::vector<ParameterSpec> parameters;
  /// Negative log-likelihood at natural parameter values; may return a
  /// non-finite value outside the support, which the optimizer rejects.
  std::function<double(std::span<const double>)> negative_log_likelihood;
  long long n = 0;
  /// Natural-coordinate starting points; the best optimum over all is kept.
  std::vector<std::vector<double>> starts;
  double ci_level = 0.95;
};

struct MleSolution {
  FitReport report;
  std::vector<double> unconstrained;  ///< optimizer coordinates at the optimum
  std::vector<bool> at_boundary;
  /// Covariance of the natural parameters (NaN rows/cols where unavailable).
  Matrix covariance;
};

/// Largest probability a logit parameter may take; guards the alpha -> 1 edge.
inline constexpr double kLogitCap = 1.0 - 1e-8;

double to_natural(Transform t, double u);
double to_unconstrained(Transform t, double v);

/// Nelder-Mead from every start, Newton polish on the best optimum with a
/// numeric Hessian, then Wald standard errors and intervals. Parameters whose
/// unconstrained coordinate runs past +/-12 are reported at the boundary,
/// held fixed for the Hessian, and given no standard error.
MleSolution fit_mle(const MleProblem& problem, const OptimizerConfig& config);

/// Report for given natural estimates without optimizing (closed-form fits).
MleSolution evaluate_at(const MleProblem& problem, std::span<const double> natural,
                        bool converged = true, int iterations = 0);

/// Two-sided standard normal critical value for a confidence level.
double wald_critical_value(double ci_level);

}  // namespace copoun
