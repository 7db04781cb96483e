#include "copoun/pcd.hpp"

#include <cmath>
#include <limits>

#include "copoun/error.hpp"

namespace copoun {

namespace {

constexpr double kLog6 = 1.791759469228055;

double log_sum_exp(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(-std::abs(a - b)));
}

template <typename Scalar>
Scalar pgf_closed_form(const PcdParams& p, Scalar s) {
  const double e = p.eta;
  const Scalar d = e - s + 1.0;
  const Scalar d3 = d * d * d;
  return e * e / (p.phi + e) * ((d3 + p.phi * e * e) / (d3 * d));
}

}  // namespace

MeanParams::MeanParams(double mu_, double phi_) : mu(mu_), phi(phi_) {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw DomainError("mu must be positive and finite");
  if (!(phi >= 0.0) || !std::isfinite(phi)) throw DomainError("phi must be nonnegative and finite");
}

double pcd_log_pmf(const PcdParams& p, std::int64_t x) {
  if (x < 0) throw DomainError("pcd_log_pmf: x must be a nonnegative integer");
  const double e = p.eta;
  const double xd = static_cast<double>(x);
  const double log1pe = std::log1p(e);
  const double log_a = 3.0 * log1pe;
  double log_bracket = log_a;
  if (p.phi > 0.0) {
    const double log_b = std::log(p.phi) + 2.0 * std::log(e) - kLog6 + std::log(xd + 1.0) +
                         std::log(xd + 2.0) + std::log(xd + 3.0);
    log_bracket = log_sum_exp(log_a, log_b);
  }
  return 2.0 * std::log(e) - std::log(p.phi + e) - (xd + 4.0) * log1pe + log_bracket;
}

double pcd_pmf(const PcdParams& p, std::int64_t x) { return std::exp(pcd_log_pmf(p, x)); }

PmfEvaluation pcd_evaluate(const PcdParams& p, std::int64_t x) {
  const double lp = pcd_log_pmf(p, x);
  return {x, std::exp(lp), lp};
}

double pcd_cdf(const PcdParams& p, std::int64_t x) {
  if (x < 0) return 0.0;
  double sum = 0.0;
  for (std::int64_t k = 0; k <= x; ++k) {
    const double term = pcd_pmf(p, k);
    sum += term;
    if (k > 16 && term < 1e-17 * sum && pcd_tail_bound(p, k) < 1e-17) break;
  }
  return std::min(sum, 1.0);
}

std::int64_t pcd_quantile(const PcdParams& p, double prob) {
  if (!(prob >= 0.0 && prob < 1.0)) throw DomainError("pcd_quantile: p must lie in [0, 1)");
  if (pcd_cdf(p, 0) >= prob) return 0;
  std::int64_t lo = 0;  // cdf(lo) < prob
  std::int64_t hi = 1;
  while (pcd_cdf(p, hi) < prob) {
    lo = hi;
    hi *= 2;
    if (hi > (std::int64_t{1} << 52)) throw DomainError("pcd_quantile: bracketing failed");
  }
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (pcd_cdf(p, mid) >= prob) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double pcd_tail_bound(const PcdParams& p, std::int64_t x) {
  if (x < 0) return 1.0;
  const double ratio = (1.0 + 3.0 / (static_cast<double>(x) + 1.0)) / (1.0 + p.eta);
  if (ratio >= 1.0) return std::numeric_limits<double>::infinity();
  return pcd_pmf(p, x) * ratio / (1.0 - ratio);
}

std::int64_t pcd_truncation_point(const PcdParams& p, double tolerance) {
  std::int64_t x = 0;
  while (pcd_tail_bound(p, x) >= tolerance) {
    ++x;
    if (x > 100'000'000) throw DomainError("pcd_truncation_point: tail does not contract");
  }
  return x;
}

std::int64_t pcd_draw(const PcdParams& p, Rng& rng) {
  return static_cast<std::int64_t>(rng.poisson(cd_draw(p, rng)));
}

std::vector<std::int64_t> pcd_sample(const PcdParams& p, Rng& rng, std::size_t n) {
  if (n == 0) throw DomainError("pcd_sample: n must be >= 1");
  std::vector<std::int64_t> out(n);
  for (auto& x : out) x = pcd_draw(p, rng);
  return out;
}

double pcd_factorial_moment(const PcdParams& p, int r) {
  if (r < 1) throw DomainError("pcd_factorial_moment: r must be >= 1");
  double factorial = 1.0;
  for (int i = 2; i <= r; ++i) factorial *= i;
  const double rr = r;
  return factorial / (std::pow(p.eta, rr) * (p.phi + p.eta)) *
         (p.eta + p.phi / 6.0 * (rr + 1.0) * (rr + 2.0) * (rr + 3.0));
}

double pcd_mean(const PcdParams& p) { return (p.eta + 4.0 * p.phi) / (p.eta * (p.phi + p.eta)); }

PcdMoments pcd_moments(const PcdParams& p) {
  const double e = p.eta;
  const double f = p.phi;
  const double e2 = e * e;
  const double e3 = e2 * e;
  const double e4 = e3 * e;
  PcdMoments m;
  m.mean = pcd_mean(p);
  m.raw2 = (e2 + 2.0 * (2.0 * f + 1.0) * e + 20.0 * f) / (e2 * (f + e));
  m.raw3 = (e3 + 2.0 * (2.0 * f + 3.0) * e2 + 6.0 * (10.0 * f + 1.0) * e + 120.0 * f) /
           (e3 * (f + e));
  m.raw4 = (e4 + 2.0 * (2.0 * f + 7.0) * e3 + 4.0 * (35.0 * f + 9.0) * e2 +
            24.0 * (30.0 * f + 1.0) * e + 840.0 * f) /
           (e4 * (f + e));
  m.variance = (e3 + (5.0 * f + 1.0) * e2 + 2.0 * f * (2.0 * f + 7.0) * e + 4.0 * f * f) /
               (e2 * (f + e) * (f + e));
  m.dispersion_index =
      1.0 + (e2 + 14.0 * f * e + 4.0 * f * f) / (e * (f + e) * (e + 4.0 * f));
  return m;
}

double pcd_pgf(const PcdParams& p, double s) {
  if (!(std::abs(s) < 1.0 + p.eta)) {
    throw DomainError("pcd_pgf: s outside the radius of convergence |s| < 1 + eta");
  }
  return pgf_closed_form(p, s);
}

double pcd_mgf(const PcdParams& p, double t) {
  const double s = std::exp(t);
  if (!(s < 1.0 + p.eta)) throw DomainError("pcd_mgf: requires exp(t) < 1 + eta");
  return pgf_closed_form(p, s);
}

std::complex<double> pcd_cf(const PcdParams& p, double t) {
  return pgf_closed_form(p, std::polar(1.0, t));
}

double eta_from_mean(const MeanParams& mp) {
  const double pm = mp.phi * mp.mu;
  const double root = std::sqrt((pm - 1.0) * (pm - 1.0) + 16.0 * pm);
  // Both branches are the same root; the second avoids cancellation when phi*mu > 1.
  const double eta = pm <= 1.0 ? (1.0 - pm + root) / (2.0 * mp.mu) : 8.0 * mp.phi / (root + pm - 1.0);
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw DomainError("eta_from_mean: non-finite or non-positive result");
  }
  return eta;
}

PcdParams to_natural(const MeanParams& mp) { return PcdParams(eta_from_mean(mp), mp.phi); }

}  // namespace copoun
