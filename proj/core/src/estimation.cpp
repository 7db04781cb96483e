#include "copoun/estimation.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "copoun/error.hpp"
#include "copoun/mle.hpp"

namespace copoun {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_sample_size(const FrequencyTable& table, long long minimum, const char* who) {
  if (table.n() < minimum) {
    throw EstimationError(std::string(who) + ": needs at least " + std::to_string(minimum) +
                          " observations");
  }
}

}  // namespace

SampleMoments sample_moments(const FrequencyTable& table) {
  return {table.raw_moment(1), table.raw_moment(2), table.raw_moment(3)};
}

PcdParams mom_solve(const SampleMoments& m) {
  const double spread = m.m2 - m.m1;
  if (!(spread > 0.0)) throw EstimationError("moment system infeasible");
  // Every PCD has variance above its mean.
  if (!(m.m2 - m.m1 * m.m1 > m.m1)) {
    throw EstimationError("moment system infeasible: sample is not over-dispersed");
  }
  double disc = 9.0 * m.m1 * m.m1 + 4.0 * (m.m1 - m.m2);
  const double scale = 9.0 * m.m1 * m.m1 + 4.0 * (m.m1 + m.m2);
  if (disc < 0.0) {
    // Rounding can push an exact double root slightly negative.
    if (disc < -1e-13 * scale) throw EstimationError("moment system infeasible");
    disc = 0.0;
  }
  const double root = std::sqrt(disc);

  struct Candidate {
    double eta;
    double phi;
  };
  std::vector<Candidate> admissible;
  for (double sign : {1.0, -1.0}) {
    const double eta = (3.0 * m.m1 + sign * root) / spread;
    const double denom = 4.0 - m.m1 * eta;
    if (!(eta > 0.0) || !(denom > 0.0)) continue;
    double phi = (m.m1 * eta * eta - eta) / denom;
    // An exact zero comes back as a tiny negative number after cancellation.
    if (phi < 0.0 && phi > -1e-12 * (1.0 + eta)) phi = 0.0;
    if (!(phi >= 0.0) || !std::isfinite(phi)) continue;
    admissible.push_back({eta, phi});
    if (root == 0.0) break;
  }
  if (admissible.empty()) throw EstimationError("moment estimate outside parameter space");

  Candidate chosen = admissible.front();
  if (admissible.size() == 2 && m.m3) {
    auto miss = [&](const Candidate& c) {
      return std::abs(pcd_moments(PcdParams(c.eta, c.phi)).raw3 - *m.m3);
    };
    if (miss(admissible[1]) < miss(admissible[0])) chosen = admissible[1];
  }
  return PcdParams(chosen.eta, chosen.phi);
}

PcdParams mom_fit(const FrequencyTable& table) {
  require_sample_size(table, 2, "mom_fit");
  if (!(table.variance() > 0.0)) throw EstimationError("moment system infeasible: sample variance is zero");
  return mom_solve(sample_moments(table));
}

PcdParams mom_fit(std::span<const std::int64_t> sample) {
  return mom_fit(FrequencyTable::from_sample(sample));
}

double mom_fit_fixed_phi(const FrequencyTable& table, double phi) {
  const double mean = table.mean();
  if (!(mean > 0.0)) throw EstimationError("mom_fit_fixed_phi: sample mean must be positive");
  return eta_from_mean(MeanParams(mean, phi));
}

double mom_asymptotic_variance(const PcdParams& p) {
  const double e = p.eta;
  const double f = p.phi;
  const double slope = -e * e * (e + f) * (e + f) / (e * e + 8.0 * f * e + 4.0 * f * f);
  return slope * slope * pcd_moments(p).variance;
}

double pcd_log_likelihood(const FrequencyTable& table, const PcdParams& params) {
  return table.weighted_sum([&](std::int64_t y) { return pcd_log_pmf(params, y); });
}

FitReport mle_fit(const FrequencyTable& table, const OptimizerConfig& config, double ci_level) {
  require_sample_size(table, 2, "mle_fit");
  const double mean = table.mean();
  if (!(mean > 0.0)) throw EstimationError("mle_fit: all observations are zero");

  MleProblem problem;
  problem.model_name = "pcd";
  problem.parameters = {{"eta", Transform::log}, {"phi", Transform::log}};
  problem.n = table.n();
  problem.ci_level = ci_level;
  problem.negative_log_likelihood = [&table](std::span<const double> v) {
    if (!(v[0] > 0.0) || !(v[1] >= 0.0)) return std::numeric_limits<double>::infinity();
    return -pcd_log_likelihood(table, PcdParams(v[0], v[1]));
  };
  try {
    const PcdParams m = mom_fit(table);
    problem.starts.push_back({m.eta, std::max(m.phi, 1e-3)});
  } catch (const EstimationError&) {
  }
  problem.starts.push_back({1.0 / mean, 1.0});
  // Near-geometric samples can have a second mode close to phi = 0.
  problem.starts.push_back({1.0 / mean, 1e-3});
  return fit_mle(problem, config).report;
}

FitReport mle_fit(std::span<const std::int64_t> sample, const OptimizerConfig& config,
                  double ci_level) {
  return mle_fit(FrequencyTable::from_sample(sample), config, ci_level);
}

FitReport mom_report(const FrequencyTable& table, double ci_level) {
  const PcdParams m = mom_fit(table);
  FitReport r;
  r.model_name = "pcd";
  r.parameter_names = {"eta", "phi"};
  r.estimates = {m.eta, m.phi};
  r.standard_errors = {kNaN, kNaN};
  r.ci_lower = {kNaN, kNaN};
  r.ci_upper = {kNaN, kNaN};
  r.ci_level = ci_level;
  r.log_likelihood = pcd_log_likelihood(table, m);
  r.n = table.n();
  r.converged = true;
  const auto ic = information_criteria(r.log_likelihood, 2, static_cast<double>(r.n));
  r.aic = ic.aic;
  r.bic = ic.bic;
  r.notes.emplace_back("method of moments; standard errors not computed");
  return r;
}

MomExperimentResult mom_bias_experiment(const PcdParams& params, std::size_t n, int reps,
                                        const Rng& rng, MomVariant variant) {
  if (reps < 100) throw DomainError("mom_bias_experiment: reps must be >= 100");
  if (n < 2) throw DomainError("mom_bias_experiment: n must be >= 2");

  std::vector<double> estimates;
  estimates.reserve(static_cast<std::size_t>(reps));
  int infeasible = 0;
  for (int i = 0; i < reps; ++i) {
    Rng stream = rng.split(static_cast<std::uint64_t>(i));
    const auto table = FrequencyTable::from_sample(pcd_sample(params, stream, n));
    try {
      estimates.push_back(variant == MomVariant::fixed_phi ? mom_fit_fixed_phi(table, params.phi)
                                                           : mom_fit(table).eta);
    } catch (const EstimationError&) {
      ++infeasible;
    } catch (const DomainError&) {
      ++infeasible;
    }
  }
  if (2 * infeasible > reps) {
    throw EstimationError("mom_bias_experiment: more than half of the replications are infeasible");
  }

  MomExperimentResult out;
  out.used_replications = static_cast<int>(estimates.size());
  out.infeasible_replications = infeasible;
  double sum = 0.0;
  for (double e : estimates) sum += e;
  out.mean_eta_hat = sum / static_cast<double>(estimates.size());
  out.bias = out.mean_eta_hat - params.eta;
  double ss = 0.0;
  for (double e : estimates) ss += (e - out.mean_eta_hat) * (e - out.mean_eta_hat);
  out.scaled_variance = static_cast<double>(n) * ss / static_cast<double>(estimates.size() - 1);
  return out;
}

}  // namespace copoun
