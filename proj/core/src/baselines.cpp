#include "copoun/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "copoun/error.hpp"
#include "copoun/mle.hpp"
#include "copoun/special.hpp"

namespace copoun {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double poisson_log_pmf(double lambda, double y) {
  return -lambda + (y == 0.0 ? 0.0 : y * std::log(lambda)) - log_factorial(y);
}

std::size_t arity(BaselineFamily family) {
  switch (family) {
    case BaselineFamily::poisson:
    case BaselineFamily::geometric:
      return 1;
    case BaselineFamily::negative_binomial:
    case BaselineFamily::zip:
      return 2;
  }
  return 0;
}

bool valid(const BaselineSpec& s) {
  if (s.parameters.size() != arity(s.family)) return false;
  for (double v : s.parameters)
    if (!std::isfinite(v)) return false;
  const auto& q = s.parameters;
  switch (s.family) {
    case BaselineFamily::poisson:
      return q[0] > 0.0;
    case BaselineFamily::geometric:
      return q[0] > 0.0 && q[0] < 1.0;
    case BaselineFamily::negative_binomial:
      return q[0] > 0.0 && q[1] > 0.0;
    case BaselineFamily::zip:
      return q[0] > 0.0 && q[1] >= 0.0 && q[1] < 1.0;
  }
  return false;
}

double log_pmf_unchecked(const BaselineSpec& s, double y) {
  const auto& q = s.parameters;
  switch (s.family) {
    case BaselineFamily::poisson:
      return poisson_log_pmf(q[0], y);
    case BaselineFamily::geometric:
      return std::log(q[0]) + y * std::log1p(-q[0]);
    case BaselineFamily::negative_binomial: {
      const double mu = q[0];
      const double size = q[1];
      const double log_total = std::log(mu + size);
      return log_gamma(y + size) - log_gamma(size) - log_factorial(y) +
             size * (std::log(size) - log_total) + (y == 0.0 ? 0.0 : y * (std::log(mu) - log_total));
    }
    case BaselineFamily::zip: {
      const double base = poisson_log_pmf(q[0], y);
      if (y == 0.0) return std::log(q[1] + (1.0 - q[1]) * std::exp(base));
      return std::log1p(-q[1]) + base;
    }
  }
  return -kInf;
}

MleProblem problem_for(BaselineFamily family, const FrequencyTable& table, double ci_level) {
  MleProblem p;
  p.model_name = std::string(family_name(family));
  p.n = table.n();
  p.ci_level = ci_level;
  switch (family) {
    case BaselineFamily::poisson:
      p.parameters = {{"lambda", Transform::log}};
      break;
    case BaselineFamily::geometric:
      p.parameters = {{"p", Transform::logit}};
      break;
    case BaselineFamily::negative_binomial:
      p.parameters = {{"mu", Transform::log}, {"size", Transform::log}};
      break;
    case BaselineFamily::zip:
      p.parameters = {{"lambda", Transform::log}, {"alpha", Transform::logit}};
      break;
  }
  p.negative_log_likelihood = [family, &table](std::span<const double> v) {
    BaselineSpec spec{family, {v.begin(), v.end()}};
    if (!valid(spec)) return kInf;
    return -table.weighted_sum(
        [&](std::int64_t y) { return log_pmf_unchecked(spec, static_cast<double>(y)); });
  };
  return p;
}

}  // namespace

std::string_view family_name(BaselineFamily family) {
  switch (family) {
    case BaselineFamily::poisson:
      return "poisson";
    case BaselineFamily::geometric:
      return "geometric";
    case BaselineFamily::negative_binomial:
      return "nb";
    case BaselineFamily::zip:
      return "zip";
  }
  return "unknown";
}

void BaselineSpec::validate() const {
  if (!valid(*this)) {
    throw DomainError("invalid parameters for baseline family " + std::string(family_name(family)));
  }
}

double baseline_log_pmf(const BaselineSpec& spec, std::int64_t y) {
  if (y < 0) throw DomainError("baseline_log_pmf: y must be a nonnegative integer");
  spec.validate();
  return log_pmf_unchecked(spec, static_cast<double>(y));
}

double baseline_log_likelihood(const BaselineSpec& spec, const FrequencyTable& table) {
  spec.validate();
  return table.weighted_sum(
      [&](std::int64_t y) { return log_pmf_unchecked(spec, static_cast<double>(y)); });
}

FitReport baseline_mle(BaselineFamily family, const FrequencyTable& table,
                       const OptimizerConfig& config, double ci_level) {
  if (table.n() < 2) throw EstimationError("baseline_mle: needs at least 2 observations");
  const double mean = table.mean();
  if (!(mean > 0.0)) throw EstimationError("baseline_mle: all observations are zero");
  MleProblem problem = problem_for(family, table, ci_level);

  switch (family) {
    case BaselineFamily::poisson: {
      const double lambda = mean;
      return evaluate_at(problem, std::vector<double>{lambda}).report;
    }
    case BaselineFamily::geometric: {
      const double p = 1.0 / (1.0 + mean);
      return evaluate_at(problem, std::vector<double>{p}).report;
    }
    case BaselineFamily::negative_binomial: {
      const double var = table.variance();
      const double size = var > mean ? mean * mean / (var - mean) : 100.0;
      problem.starts = {{mean, size}, {mean, 1.0}};
      FitReport r = fit_mle(problem, config).report;
      const double mu = r.estimates[0];
      const double sz = r.estimates[1];
      r.derived = {{"r", sz}, {"prob", sz / (sz + mu)}, {"dispersion", 1.0 / sz}};
      return r;
    }
    case BaselineFamily::zip: {
      // Zero excess gives a starting alpha; the near-Poisson start keeps the
      // nested Poisson optimum reachable.
      const double p0 = std::exp(-mean);
      const double observed0 =
          static_cast<double>(table.count_of(0)) / static_cast<double>(table.n());
      const double alpha0 = std::clamp((observed0 - p0) / (1.0 - p0), 0.01, 0.9);
      problem.starts = {{mean / (1.0 - alpha0), alpha0}, {mean, 1e-6}};
      return fit_mle(problem, config).report;
    }
  }
  throw DomainError("baseline_mle: unknown family");
}

BaselineSpec spec_from_report(BaselineFamily family, const FitReport& report) {
  BaselineSpec spec{family, report.estimates};
  spec.validate();
  return spec;
}

}  // namespace copoun
