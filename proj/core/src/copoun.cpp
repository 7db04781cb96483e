#include "copoun/copoun.hpp"

#include <algorithm>
#include <cmath>

#include "copoun/error.hpp"

namespace copoun {

PcdParams::PcdParams(double eta_, double phi_) : eta(eta_), phi(phi_) {
  if (!(eta > 0.0) || !std::isfinite(eta)) throw DomainError("eta must be positive and finite");
  if (!(phi >= 0.0) || !std::isfinite(phi)) throw DomainError("phi must be nonnegative and finite");
}

double cd_pdf(const PcdParams& p, double x) {
  if (x < 0.0) return 0.0;
  const double e = p.eta;
  return e * e / (p.phi + e) * (1.0 + p.phi * e * e * x * x * x / 6.0) * std::exp(-e * x);
}

double cd_cdf(const PcdParams& p, double x) {
  if (x <= 0.0) return 0.0;
  const double ex = p.eta * x;
  const double poly = p.phi * (ex * ex * ex + 3.0 * ex * ex + 6.0 * ex) / (6.0 * (p.phi + p.eta));
  return std::clamp(1.0 - (1.0 + poly) * std::exp(-ex), 0.0, 1.0);
}

double cd_mean(const PcdParams& p) {
  const double w = p.mixing_weight();
  return w / p.eta + (1.0 - w) * 4.0 / p.eta;
}

double cd_draw(const PcdParams& p, Rng& rng) {
  if (p.phi == 0.0 || rng.bernoulli(p.mixing_weight())) return rng.exponential(p.eta);
  return rng.gamma(4.0, p.eta);
}

std::vector<double> cd_sample(const PcdParams& p, Rng& rng, std::size_t n) {
  if (n == 0) throw DomainError("cd_sample: n must be >= 1");
  std::vector<double> out(n);
  for (auto& x : out) x = cd_draw(p, rng);
  return out;
}

}  // namespace copoun
