#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "copoun/fit_report.hpp"
#include "copoun/frequency_table.hpp"
#include "copoun/optimize.hpp"
#include "copoun/pcd.hpp"
#include "copoun/random.hpp"

namespace copoun {

/// First three raw sample moments.
struct SampleMoments {
  double m1 = 0.0;
  double m2 = 0.0;
  std::optional<double> m3;
};

SampleMoments sample_moments(const FrequencyTable& table);

/// Solves the two moment equations in closed form. The quadratic
/// (m2 - m1) eta^2 - 6 m1 eta + 4 = 0 has roots
/// (3 m1 +/- sqrt(9 m1^2 + 4 (m1 - m2))) / (m2 - m1); each root gives
/// phi = (m1 eta^2 - eta) / (4 - m1 eta). Roots outside the parameter space
/// are discarded. When both survive, the one whose third raw moment is
/// closer to m3 wins (the "+" root when m3 is absent).
///
/// Throws EstimationError("moment system infeasible") when m2 <= m1 or the
/// discriminant is negative, and EstimationError("moment estimate outside
/// parameter space") when no root is admissible.
PcdParams mom_solve(const SampleMoments& moments);

/// Two-moment estimator on data. Requires n >= 2 and positive variance.
PcdParams mom_fit(const FrequencyTable& table);
PcdParams mom_fit(std::span<const std::int64_t> sample);

/// Known-phi estimator eta_hat = h(xbar), the inverse of the mean function.
double mom_fit_fixed_phi(const FrequencyTable& table, double phi);

/// Delta-method variance of sqrt(n) (eta_hat - eta) for the known-phi
/// estimator: h'(mu)^2 Var(X) with h'(mu) = -eta^2 (eta+phi)^2 / (eta^2 + 8 phi eta + 4 phi^2).
double mom_asymptotic_variance(const PcdParams& params);

/// Maximum likelihood over (ln eta, ln phi). Starts from the MoM solution
/// when it exists and from (1 / m1, 1) in any case.
FitReport mle_fit(const FrequencyTable& table, const OptimizerConfig& config = {},
                  double ci_level = 0.95);
FitReport mle_fit(std::span<const std::int64_t> sample, const OptimizerConfig& config = {},
                  double ci_level = 0.95);

/// Report at the MoM point (no standard errors).
FitReport mom_report(const FrequencyTable& table, double ci_level = 0.95);

/// PCD log-likelihood of a frequency table.
double pcd_log_likelihood(const FrequencyTable& table, const PcdParams& params);

enum class MomVariant { fixed_phi, two_moment };

struct MomExperimentResult {
  double mean_eta_hat = 0.0;
  double bias = 0.0;
  /// n * (sample variance of eta_hat); estimates the asymptotic variance.
  double scaled_variance = 0.0;
  int used_replications = 0;
  int infeasible_replications = 0;
};

/// Monte-Carlo study of the MoM estimator of eta. Replication i draws from
/// `rng.split(i)`. Throws DomainError for reps < 100 and EstimationError if
/// more than half the replications are infeasible.
MomExperimentResult mom_bias_experiment(const PcdParams& params, std::size_t n, int reps,
                                        const Rng& rng,
                                        MomVariant variant = MomVariant::fixed_phi);

}  // namespace copoun
