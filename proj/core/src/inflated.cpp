#include "copoun/inflated.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "copoun/error.hpp"
#include "copoun/estimation.hpp"
#include "copoun/mle.hpp"
#include "copoun/special.hpp"

namespace copoun {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_value(std::int64_t y) {
  if (y < 0) throw DomainError("count value must be a nonnegative integer");
}

void check_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in [0, 1)");
}

double poisson_log_pmf(double lambda, std::int64_t y) {
  const double yd = static_cast<double>(y);
  return -lambda + (y == 0 ? 0.0 : yd * std::log(lambda)) - log_factorial(yd);
}

// Initial alpha from the excess of observed 3s over the base model's P(3).
double excess_alpha(const FrequencyTable& table, double base_p3) {
  const double observed = static_cast<double>(table.count_of(kInflatedValue)) /
                          static_cast<double>(table.n());
  const double a = (observed - base_p3) / (1.0 - base_p3);
  return std::clamp(a, 0.01, 0.9);
}

}  // namespace

InflatedParams::InflatedParams(double eta_, double phi_, double alpha_)
    : eta(eta_), phi(phi_), alpha(alpha_) {
  static_cast<void>(PcdParams(eta, phi));
  check_alpha(alpha);
}

double thipcd_log_pmf(const InflatedParams& p, std::int64_t y) {
  check_value(y);
  const double base = pcd_log_pmf(p.base(), y);
  if (y == kInflatedValue) return std::log(p.alpha + (1.0 - p.alpha) * std::exp(base));
  return std::log1p(-p.alpha) + base;
}

double thipcd_pmf(const InflatedParams& p, std::int64_t y) { return std::exp(thipcd_log_pmf(p, y)); }

double thipcd_cdf(const InflatedParams& p, std::int64_t y) {
  if (y < 0) return 0.0;
  const double base = (1.0 - p.alpha) * pcd_cdf(p.base(), y);
  return std::min(1.0, y >= kInflatedValue ? base + p.alpha : base);
}

double thipcd_inflation_gap(const InflatedParams& p) {
  return p.alpha * (1.0 - pcd_pmf(p.base(), kInflatedValue));
}

InflatedMoments thipcd_moments(const InflatedParams& p) {
  const PcdMoments m = pcd_moments(p.base());
  const double a = p.alpha;
  InflatedMoments out;
  out.mean = 3.0 * a + (1.0 - a) * m.mean;
  out.raw2 = 9.0 * a + (1.0 - a) * m.raw2;
  out.raw3 = 27.0 * a + (1.0 - a) * m.raw3;
  out.raw4 = 81.0 * a + (1.0 - a) * m.raw4;
  out.variance = out.raw2 - out.mean * out.mean;
  return out;
}

double thipcd_pgf(const InflatedParams& p, double s) {
  return p.alpha * s * s * s + (1.0 - p.alpha) * pcd_pgf(p.base(), s);
}

double thipcd_mgf(const InflatedParams& p, double t) {
  return p.alpha * std::exp(3.0 * t) + (1.0 - p.alpha) * pcd_mgf(p.base(), t);
}

std::complex<double> thipcd_cf(const InflatedParams& p, double t) {
  return p.alpha * std::polar(1.0, 3.0 * t) + (1.0 - p.alpha) * pcd_cf(p.base(), t);
}

std::vector<std::int64_t> thipcd_sample(const InflatedParams& p, Rng& rng, std::size_t n) {
  if (n == 0) throw DomainError("thipcd_sample: n must be >= 1");
  const PcdParams base = p.base();
  std::vector<std::int64_t> out(n);
  for (auto& y : out) {
    // No Bernoulli draw at alpha = 0, so the stream matches pcd_sample exactly.
    y = (p.alpha > 0.0 && rng.bernoulli(p.alpha)) ? kInflatedValue : pcd_draw(base, rng);
  }
  return out;
}

double thipcd_log_likelihood(const FrequencyTable& table, const InflatedParams& p) {
  return table.weighted_sum([&](std::int64_t y) { return thipcd_log_pmf(p, y); });
}

double thipcd_log_likelihood_split(const FrequencyTable& table, const InflatedParams& p) {
  const double n = static_cast<double>(table.n());
  const double n0 = static_cast<double>(table.count_of(kInflatedValue));
  const double e = p.eta;
  const double f = p.phi;
  const double p3_base =
      e * e / ((f + e) * std::pow(1.0 + e, 7.0)) * (std::pow(1.0 + e, 3.0) + 20.0 * f * e * e);
  double rest = 0.0;
  for (const auto& entry : table.entries()) {
    if (entry.value == kInflatedValue || entry.count == 0) continue;
    const double y = static_cast<double>(entry.value);
    const double bracket =
        std::pow(1.0 + e, 3.0) + f * e * e / 6.0 * (y + 1.0) * (y + 2.0) * (y + 3.0);
    rest += static_cast<double>(entry.count) * (std::log(bracket) - (y + 4.0) * std::log1p(e));
  }
  double total = (n - n0) * std::log1p(-p.alpha) + 2.0 * (n - n0) * std::log(e) -
                 (n - n0) * std::log(f + e) + rest;
  if (n0 > 0.0) total += n0 * std::log(p.alpha + (1.0 - p.alpha) * p3_base);
  return total;
}

FitReport thipcd_mle(const FrequencyTable& table, const OptimizerConfig& config, double ci_level) {
  if (table.n() < 3) throw EstimationError("thipcd_mle: needs at least 3 observations");
  const bool all_threes = table.count_of(kInflatedValue) == table.n();

  MleProblem problem;
  problem.model_name = "thipcd";
  problem.parameters = {{"eta", Transform::log}, {"phi", Transform::log}, {"alpha", Transform::logit}};
  problem.n = table.n();
  problem.ci_level = ci_level;
  problem.negative_log_likelihood = [&table](std::span<const double> v) {
    if (!(v[0] > 0.0) || !(v[1] >= 0.0) || !(v[2] >= 0.0 && v[2] < 1.0)) return kInf;
    return -thipcd_log_likelihood(table, InflatedParams(v[0], v[1], v[2]));
  };

  if (all_threes) {
    problem.starts.push_back({1.0, 1.0, 0.99});
  } else {
    const FitReport base = mle_fit(table, config, ci_level);
    const double eta = base.estimate("eta");
    const double phi = std::max(base.estimate("phi"), 1e-3);
    const double p3 = pcd_pmf(PcdParams(eta, phi), kInflatedValue);
    problem.starts.push_back({eta, phi, excess_alpha(table, p3)});
    problem.starts.push_back({eta, phi, 0.01});
    problem.starts.push_back({1.0 / std::max(table.mean(), 0.1), 1.0, 0.1});
  }

  FitReport report = fit_mle(problem, config).report;
  if (all_threes) {
    report.notes.emplace_back("all observations equal 3; alpha capped at 1 - 1e-8");
  }
  return report;
}

double thipd_log_pmf(double lambda, double alpha, std::int64_t y) {
  check_value(y);
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("lambda must be positive");
  check_alpha(alpha);
  const double base = poisson_log_pmf(lambda, y);
  if (y == kInflatedValue) return std::log(alpha + (1.0 - alpha) * std::exp(base));
  return std::log1p(-alpha) + base;
}

double thipd_log_likelihood(const FrequencyTable& table, double lambda, double alpha) {
  return table.weighted_sum([&](std::int64_t y) { return thipd_log_pmf(lambda, alpha, y); });
}

FitReport thipd_mle(const FrequencyTable& table, const OptimizerConfig& config, double ci_level) {
  if (table.n() < 2) throw EstimationError("thipd_mle: needs at least 2 observations");
  const double mean = table.mean();
  if (!(mean > 0.0)) throw EstimationError("thipd_mle: all observations are zero");

  MleProblem problem;
  problem.model_name = "thipd";
  problem.parameters = {{"lambda", Transform::log}, {"alpha", Transform::logit}};
  problem.n = table.n();
  problem.ci_level = ci_level;
  problem.negative_log_likelihood = [&table](std::span<const double> v) {
    if (!(v[0] > 0.0) || !(v[1] >= 0.0 && v[1] < 1.0)) return kInf;
    return -thipd_log_likelihood(table, v[0], v[1]);
  };
  const double p3 = std::exp(poisson_log_pmf(mean, kInflatedValue));
  problem.starts.push_back({mean, excess_alpha(table, p3)});
  problem.starts.push_back({mean, 0.01});
  return fit_mle(problem, config).report;
}

}  // namespace copoun
