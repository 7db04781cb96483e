#include "copoun/mle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "copoun/differentiation.hpp"
#include "copoun/error.hpp"
#include "copoun/special.hpp"

namespace copoun {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kBoundaryCoordinate = 12.0;
constexpr int kPolishIterations = 10;

double logistic(double u) {
  return u >= 0.0 ? 1.0 / (1.0 + std::exp(-u)) : std::exp(u) / (1.0 + std::exp(u));
}

// d natural / d unconstrained, evaluated at the unconstrained value u.
double jacobian(Transform t, double u) {
  switch (t) {
    case Transform::identity:
      return 1.0;
    case Transform::log:
      return std::exp(u);
    case Transform::logit: {
      const double a = logistic(u);
      return a >= kLogitCap ? 0.0 : a * (1.0 - a);
    }
  }
  return 1.0;
}

bool is_boundary(Transform t, double u) {
  switch (t) {
    case Transform::identity:
      return false;
    case Transform::log:
      return u < -kBoundaryCoordinate;
    case Transform::logit:
      return std::abs(u) > kBoundaryCoordinate || logistic(u) >= kLogitCap;
  }
  return false;
}

std::vector<double> naturalize(const MleProblem& p, std::span<const double> u) {
  std::vector<double> v(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) v[i] = to_natural(p.parameters[i].transform, u[i]);
  return v;
}

// Objective restricted to the coordinates listed in `free`, others held at `base`.
Objective restrict(const Objective& f, std::vector<double> base, std::vector<std::size_t> free) {
  return [f, base = std::move(base), free = std::move(free)](std::span<const double> sub) mutable {
    for (std::size_t k = 0; k < free.size(); ++k) base[free[k]] = sub[k];
    return f(base);
  };
}

std::vector<double> gather(std::span<const double> x, const std::vector<std::size_t>& idx) {
  std::vector<double> out(idx.size());
  for (std::size_t k = 0; k < idx.size(); ++k) out[k] = x[idx[k]];
  return out;
}

// Damped Newton steps on the free coordinates; only accepts improvements.
double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

void newton_polish(const Objective& f, std::vector<double>& u, const std::vector<std::size_t>& free) {
  if (free.empty()) return;
  for (int iter = 0; iter < kPolishIterations; ++iter) {
    const Objective g = restrict(f, u, free);
    const std::vector<double> x = gather(u, free);
    std::vector<double> step;
    std::vector<double> grad;
    try {
      grad = numeric_gradient(g, x);
      step = solve_spd(numeric_hessian(g, x), grad);
    } catch (const std::exception&) {
      return;
    }
    const double f0 = g(x);
    // Near the optimum f changes by less than its rounding; fall back on the gradient.
    const double noise = 64.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(f0));
    double t = 1.0;
    bool accepted = false;
    std::vector<double> trial(x.size());
    for (int halving = 0; halving < 30; ++halving, t *= 0.5) {
      for (std::size_t k = 0; k < x.size(); ++k) trial[k] = x[k] - t * step[k];
      const double ft = g(trial);
      if (!std::isfinite(ft)) continue;
      if (ft <= f0) {
        accepted = true;
        break;
      }
      if (ft <= f0 + noise) {
        try {
          if (norm2(numeric_gradient(g, trial)) < norm2(grad)) {
            accepted = true;
            break;
          }
        } catch (const std::exception&) {
        }
      }
    }
    if (!accepted) return;
    double largest = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      largest = std::max(largest, std::abs(trial[k] - x[k]) / (1.0 + std::abs(x[k])));
      u[free[k]] = trial[k];
    }
    if (largest < 1e-12) return;
  }
}

MleSolution build_solution(const MleProblem& p, std::vector<double> u, double nll, bool converged,
                           int iterations) {
  const std::size_t dim = p.parameters.size();
  const Objective objective = [&p](std::span<const double> uu) {
    return p.negative_log_likelihood(naturalize(p, uu));
  };

  MleSolution sol;
  sol.at_boundary.resize(dim);
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < dim; ++i) {
    sol.at_boundary[i] = is_boundary(p.parameters[i].transform, u[i]);
    if (!sol.at_boundary[i]) free.push_back(i);
  }

  FitReport& r = sol.report;
  r.model_name = p.model_name;
  for (const auto& spec : p.parameters) r.parameter_names.push_back(spec.name);
  r.estimates = naturalize(p, u);
  r.standard_errors.assign(dim, kNaN);
  r.ci_level = p.ci_level;
  r.log_likelihood = -nll;
  r.n = p.n;
  r.converged = converged;
  r.iterations = iterations;
  const auto ic = information_criteria(r.log_likelihood, static_cast<int>(dim), static_cast<double>(p.n));
  r.aic = ic.aic;
  r.bic = ic.bic;

  for (std::size_t i = 0; i < dim; ++i) {
    if (sol.at_boundary[i]) {
      r.notes.push_back(p.parameters[i].name +
                        " estimate at the parameter-space boundary; standard error not reported");
    }
  }

  sol.covariance = Matrix(dim, dim, kNaN);
  if (!free.empty()) {
    try {
      const Objective sub = restrict(objective, u, free);
      const Matrix cov = inverse_spd(numeric_hessian(sub, gather(u, free)));
      for (std::size_t a = 0; a < free.size(); ++a)
        for (std::size_t b = 0; b < free.size(); ++b) {
          const std::size_t i = free[a];
          const std::size_t j = free[b];
          sol.covariance(i, j) = jacobian(p.parameters[i].transform, u[i]) * cov(a, b) *
                                 jacobian(p.parameters[j].transform, u[j]);
        }
      for (std::size_t i : free) r.standard_errors[i] = std::sqrt(sol.covariance(i, i));
    } catch (const NotPositiveDefiniteError&) {
      r.notes.emplace_back("information matrix not positive definite; standard errors unavailable");
    } catch (const EvaluationError&) {
      r.notes.emplace_back("likelihood not finite near the optimum; standard errors unavailable");
    }
  }

  const double z = wald_critical_value(p.ci_level);
  r.ci_lower.resize(dim);
  r.ci_upper.resize(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    r.ci_lower[i] = r.estimates[i] - z * r.standard_errors[i];
    r.ci_upper[i] = r.estimates[i] + z * r.standard_errors[i];
  }
  sol.unconstrained = std::move(u);
  return sol;
}

}  // namespace

double to_natural(Transform t, double u) {
  switch (t) {
    case Transform::identity:
      return u;
    case Transform::log:
      return std::exp(u);
    case Transform::logit:
      return std::min(logistic(u), kLogitCap);
  }
  return u;
}

double to_unconstrained(Transform t, double v) {
  switch (t) {
    case Transform::identity:
      return v;
    case Transform::log:
      if (!(v > 0.0)) throw DomainError("log-transformed parameter must be positive");
      return std::log(v);
    case Transform::logit:
      if (!(v > 0.0 && v < 1.0)) throw DomainError("logit-transformed parameter must lie in (0, 1)");
      return std::log(v) - std::log1p(-v);
  }
  return v;
}

double wald_critical_value(double ci_level) {
  if (!(ci_level > 0.0 && ci_level < 1.0)) throw DomainError("ci_level must lie in (0, 1)");
  return normal_quantile(0.5 + 0.5 * ci_level);
}

MleSolution fit_mle(const MleProblem& p, const OptimizerConfig& config) {
  if (p.starts.empty()) throw DomainError("fit_mle: at least one start is required");
  const Objective objective = [&p](std::span<const double> u) {
    return p.negative_log_likelihood(naturalize(p, u));
  };

  bool have = false;
  OptimResult best;
  int iterations = 0;
  for (const auto& start : p.starts) {
    if (start.size() != p.parameters.size()) throw DomainError("fit_mle: start has wrong dimension");
    std::vector<double> u0(start.size());
    for (std::size_t i = 0; i < start.size(); ++i)
      u0[i] = to_unconstrained(p.parameters[i].transform, start[i]);
    if (!std::isfinite(objective(u0))) continue;
    OptimResult r = minimize(objective, u0, config);
    iterations += r.iterations;
    if (!have || r.min_value < best.min_value) {
      best = std::move(r);
      have = true;
    }
  }
  if (!have) throw EstimationError(p.model_name + ": likelihood not finite at any starting point");

  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < p.parameters.size(); ++i)
    if (!is_boundary(p.parameters[i].transform, best.argmin[i])) free.push_back(i);
  newton_polish(objective, best.argmin, free);

  const double nll = objective(best.argmin);
  return build_solution(p, std::move(best.argmin), nll, best.converged, iterations);
}

MleSolution evaluate_at(const MleProblem& p, std::span<const double> natural, bool converged,
                        int iterations) {
  if (natural.size() != p.parameters.size()) throw DomainError("evaluate_at: wrong dimension");
  std::vector<double> u(natural.size());
  for (std::size_t i = 0; i < natural.size(); ++i)
    u[i] = to_unconstrained(p.parameters[i].transform, natural[i]);
  const double nll = p.negative_log_likelihood(natural);
  return build_solution(p, std::move(u), nll, converged, iterations);
}

}  // namespace copoun
