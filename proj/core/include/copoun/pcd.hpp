#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "copoun/copoun.hpp"

namespace copoun {

/// Mean parametrization (mu, phi) used by the regression model.
struct MeanParams {
  double mu = 1.0;
  double phi = 1.0;

  MeanParams() = default;
  MeanParams(double mu, double phi);
};

struct PmfEvaluation {
  std::int64_t value = 0;
  double probability = 0.0;
  double log_probability = 0.0;
};

struct PcdMoments {
  double mean = 0.0;
  double raw2 = 0.0;
  double raw3 = 0.0;
  double raw4 = 0.0;
  double variance = 0.0;
  double dispersion_index = 0.0;
};

/// ln p(x; eta, phi). The bracket (1+eta)^3 + phi eta^2 (x+1)(x+2)(x+3)/6 is
/// combined with log-sum-exp so large x never overflows. Throws DomainError
/// for x < 0.
double pcd_log_pmf(const PcdParams& params, std::int64_t x);
double pcd_pmf(const PcdParams& params, std::int64_t x);
PmfEvaluation pcd_evaluate(const PcdParams& params, std::int64_t x);

/// Cumulative pmf sum; 0 for x < 0.
double pcd_cdf(const PcdParams& params, std::int64_t x);

/// Smallest x with cdf(x) >= p. Throws DomainError unless 0 <= p < 1.
std::int64_t pcd_quantile(const PcdParams& params, double p);

/// Upper bound on sum_{y > x} pmf(y) from the ratio bound
/// pmf(y+1)/pmf(y) <= (1 + 3/(y+1)) / (1 + eta). Infinity when the bound
/// is not yet contracting at x.
double pcd_tail_bound(const PcdParams& params, std::int64_t x);

/// Smallest x whose tail bound is below `tolerance`.
std::int64_t pcd_truncation_point(const PcdParams& params, double tolerance = 1e-14);

std::int64_t pcd_draw(const PcdParams& params, Rng& rng);
std::vector<std::int64_t> pcd_sample(const PcdParams& params, Rng& rng, std::size_t n);

/// E[X (X-1) ... (X-r+1)] = r! / (eta^r (phi+eta)) [eta + phi (r+1)(r+2)(r+3)/6].
double pcd_factorial_moment(const PcdParams& params, int r);
PcdMoments pcd_moments(const PcdParams& params);
double pcd_mean(const PcdParams& params);

/// Probability generating function; defined for |s| < 1 + eta.
double pcd_pgf(const PcdParams& params, double s);
/// M(t) = P(e^t); requires e^t < 1 + eta.
double pcd_mgf(const PcdParams& params, double t);
std::complex<double> pcd_cf(const PcdParams& params, double t);

/// Positive root eta solving mean(eta, phi) = mu.
double eta_from_mean(const MeanParams& mp);
PcdParams to_natural(const MeanParams& mp);

}  // namespace copoun
