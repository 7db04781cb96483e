#pragma once

#include <cstddef>
#include <vector>

#include "copoun/random.hpp"

namespace copoun {

/// Natural parameters (eta, phi) shared by the Copoun law and the
/// Poisson-Copoun count distribution. phi = 0 is the exponential/geometric
/// boundary.
struct PcdParams {
  double eta = 1.0;
  double phi = 1.0;

  PcdParams() = default;
  /// Throws DomainError unless eta > 0 and phi >= 0 (both finite).
  PcdParams(double eta, double phi);

  /// Weight of the Exponential(eta) component, eta / (phi + eta).
  double mixing_weight() const noexcept { return eta / (phi + eta); }
};

double cd_pdf(const PcdParams& params, double x);
double cd_cdf(const PcdParams& params, double x);

/// Mean of the mixing law: pi / eta + (1 - pi) * 4 / eta.
double cd_mean(const PcdParams& params);

/// One draw: Exponential(eta) with probability eta / (phi + eta),
/// otherwise Gamma(shape 4, rate eta).
double cd_draw(const PcdParams& params, Rng& rng);
std::vector<double> cd_sample(const PcdParams& params, Rng& rng, std::size_t n);

}  // namespace copoun
