#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "copoun/fit_report.hpp"
#include "copoun/frequency_table.hpp"
#include "copoun/optimize.hpp"
#include "copoun/pcd.hpp"

namespace copoun {

/// The value that receives the extra point mass.
inline constexpr std::int64_t kInflatedValue = 3;

/// PCD parameters plus the weight alpha of the point mass at 3.
struct InflatedParams {
  double eta = 1.0;
  double phi = 1.0;
  double alpha = 0.0;

  InflatedParams() = default;
  /// Throws DomainError unless eta > 0, phi >= 0 and 0 <= alpha < 1.
  InflatedParams(double eta, double phi, double alpha);

  PcdParams base() const { return PcdParams(eta, phi); }
};

struct InflatedMoments {
  double mean = 0.0;
  double raw2 = 0.0;
  double raw3 = 0.0;
  double raw4 = 0.0;
  double variance = 0.0;
};

double thipcd_log_pmf(const InflatedParams& params, std::int64_t y);
double thipcd_pmf(const InflatedParams& params, std::int64_t y);
double thipcd_cdf(const InflatedParams& params, std::int64_t y);

/// P_ThIPCD(3) - P_PCD(3) = alpha (1 - pcd_pmf(3)).
double thipcd_inflation_gap(const InflatedParams& params);

/// Raw moments 3^r alpha + (1 - alpha) E_PCD[X^r]; variance = raw2 - mean^2.
InflatedMoments thipcd_moments(const InflatedParams& params);

double thipcd_pgf(const InflatedParams& params, double s);
double thipcd_mgf(const InflatedParams& params, double t);
std::complex<double> thipcd_cf(const InflatedParams& params, double t);

std::vector<std::int64_t> thipcd_sample(const InflatedParams& params, Rng& rng, std::size_t n);

double thipcd_log_likelihood(const FrequencyTable& table, const InflatedParams& params);

/// Log-likelihood in the factorized form: n0 log P(3) + (n - n0) log(1 - alpha)
/// + sum over y != 3 of the PCD terms, with n0 the number of 3s.
double thipcd_log_likelihood_split(const FrequencyTable& table, const InflatedParams& params);

/// MLE over (ln eta, ln phi, logit alpha). Requires n >= 3.
FitReport thipcd_mle(const FrequencyTable& table, const OptimizerConfig& config = {},
                     double ci_level = 0.95);

/// Three-inflated Poisson log-pmf.
double thipd_log_pmf(double lambda, double alpha, std::int64_t y);
double thipd_log_likelihood(const FrequencyTable& table, double lambda, double alpha);

/// MLE over (ln lambda, logit alpha). Requires n >= 2.
FitReport thipd_mle(const FrequencyTable& table, const OptimizerConfig& config = {},
                    double ci_level = 0.95);

}  // namespace copoun
