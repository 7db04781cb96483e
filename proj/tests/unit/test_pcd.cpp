#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "copoun/error.hpp"
#include "copoun/pcd.hpp"
#include "copoun/random.hpp"
#include "oracles.hpp"

using namespace copoun;

namespace {
const double kEtas[] = {0.25, 1.0, 4.0};
const double kPhis[] = {0.0, 0.5, 1.0, 10.0};

// Direct linear-space evaluation of the pmf formula.
double pmf_direct(double eta, double phi, int x) {
  const double c = (x + 1.0) * (x + 2.0) * (x + 3.0);
  return eta * eta / ((phi + eta) * std::pow(1.0 + eta, x + 4)) *
         (std::pow(1.0 + eta, 3) + phi * eta * eta * c / 6.0);
}
}  // namespace

TEST(PcdPmf, Examples) {
  const PcdParams p(1.0, 1.0);
  EXPECT_NEAR(pcd_log_pmf(p, 0), std::log(9.0 / 32.0), 1e-14);
  EXPECT_NEAR(pcd_pmf(p, 3), 28.0 / 256.0, 1e-15);
  for (int x = 0; x < 40; ++x) EXPECT_NEAR(pcd_log_pmf(PcdParams(1.0, 0.0), x), -(x + 1.0) * std::log(2.0), 1e-12);
  EXPECT_THROW(pcd_log_pmf(p, -1), DomainError);
  const auto ev = pcd_evaluate(p, 5);
  EXPECT_EQ(ev.value, 5);
  EXPECT_NEAR(ev.probability / std::exp(ev.log_probability), 1.0, 1e-12);
}

TEST(PcdPmf, MatchesDirectFormulaAndLargeX) {
  for (double eta : kEtas)
    for (double phi : kPhis)
      for (int x = 0; x <= 60; ++x)
        EXPECT_NEAR(pcd_pmf(PcdParams(eta, phi), x) / pmf_direct(eta, phi, x), 1.0, 1e-12);
  // Far in the tail the log pmf stays finite where the linear pmf underflows.
  const double lp = pcd_log_pmf(PcdParams(4.0, 1.0), 5000);
  EXPECT_TRUE(std::isfinite(lp));
  EXPECT_LT(lp, -7000.0);
}

TEST(PcdPmf, MixedPoissonQuadrature) {
  for (double eta : kEtas)
    for (double phi : kPhis)
      for (int x = 0; x <= 30; ++x) {
        const double want = oracle::mixed_poisson_pmf(eta, phi, x);
        EXPECT_NEAR(pcd_pmf(PcdParams(eta, phi), x), want, 1e-8) << eta << " " << phi << " " << x;
      }
}

TEST(PcdPmf, Normalization) {
  for (double eta : kEtas)
    for (double phi : kPhis) {
      const PcdParams p(eta, phi);
      const auto last = pcd_truncation_point(p, 1e-14);
      double total = 0.0;
      for (std::int64_t x = 0; x <= last; ++x) total += pcd_pmf(p, x);
      EXPECT_LT(std::abs(1.0 - total), 1e-12) << eta << " " << phi;
    }
}

TEST(PcdPmf, TailBoundDominates) {
  for (double eta : kEtas)
    for (double phi : kPhis) {
      const PcdParams p(eta, phi);
      const auto last = pcd_truncation_point(p, 1e-18) + 50;
      std::vector<double> tail(static_cast<std::size_t>(last) + 2, 0.0);
      for (auto x = last; x >= 0; --x) tail[x] = tail[x + 1] + pcd_pmf(p, x + 1);
      for (std::int64_t x = 0; x < last; ++x) EXPECT_LE(tail[x], pcd_tail_bound(p, x) * (1 + 1e-12)) << x;
    }
}

TEST(PcdPmf, GeometricReduction) {
  for (double eta : kEtas) {
    const double q = eta / (1.0 + eta);
    for (int x = 0; x < 50; ++x)
      EXPECT_NEAR(pcd_pmf(PcdParams(eta, 0.0), x) / (q * std::pow(1.0 - q, x)), 1.0, 1e-13);
  }
}

TEST(PcdCdf, Examples) {
  const PcdParams p(1.0, 1.0);
  EXPECT_EQ(pcd_cdf(p, -1), 0.0);
  EXPECT_NEAR(pcd_cdf(p, 0), 0.28125, 1e-15);
  EXPECT_NEAR(pcd_cdf(p, 200), 1.0, 1e-12);
  double last = 0.0;
  for (int x = 0; x < 100; ++x) {
    const double c = pcd_cdf(p, x);
    EXPECT_GE(c, last);
    last = c;
  }
}

TEST(PcdQuantile, DefiningProperty) {
  const PcdParams p(1.0, 1.0);
  EXPECT_EQ(pcd_quantile(p, 0.0), 0);
  EXPECT_EQ(pcd_quantile(p, 0.28), 0);
  EXPECT_EQ(pcd_quantile(p, 0.282), 1);
  EXPECT_THROW(pcd_quantile(p, 1.0), DomainError);
  Rng rng(3);
  for (int i = 0; i < 500; ++i) {
    const double u = rng.uniform();
    const PcdParams q(0.1 + 3.0 * rng.uniform(), 5.0 * rng.uniform());
    const auto x = pcd_quantile(q, u);
    EXPECT_GE(pcd_cdf(q, x), u);
    EXPECT_LT(pcd_cdf(q, x - 1), u);
  }
}

TEST(PcdSample, MeanAndZeroFrequency) {
  Rng rng(17);
  const auto xs = pcd_sample(PcdParams(1.0, 1.0), rng, 1000000);
  const auto s = oracle::summarize(xs);
  EXPECT_NEAR(s.mean, 2.5, 3 * s.se);
  double zeros = 0;
  for (auto x : xs) zeros += (x == 0);
  const double p0 = zeros / xs.size();
  EXPECT_NEAR(p0, 0.28125, 3 * std::sqrt(0.28125 * (1 - 0.28125) / xs.size()));
}

TEST(PcdSample, GeometricBoundary) {
  Rng rng(18);
  const int n = 300000;
  const auto xs = pcd_sample(PcdParams(1.0, 0.0), rng, n);
  std::vector<int> counts(8, 0);
  for (auto x : xs)
    if (x < 8) ++counts[x];
  for (int k = 0; k < 8; ++k) {
    const double p = std::pow(0.5, k + 1);
    EXPECT_NEAR(counts[k] / double(n), p, 4 * std::sqrt(p * (1 - p) / n));
  }
}

TEST(PcdMoments, FactorialExamples) {
  const PcdParams p(1.0, 1.0);
  EXPECT_NEAR(pcd_factorial_moment(p, 1), 2.5, 1e-14);
  EXPECT_NEAR(pcd_factorial_moment(p, 2), 11.0, 1e-13);
  EXPECT_THROW(pcd_factorial_moment(p, 0), DomainError);
}

TEST(PcdMoments, BruteForce) {
  for (double eta : kEtas)
    for (double phi : kPhis) {
      const PcdParams p(eta, phi);
      const auto last = pcd_truncation_point(p, 1e-14) + 200;
      double fact[5] = {0, 0, 0, 0, 0};
      double raw[5] = {0, 0, 0, 0, 0};
      for (std::int64_t x = 0; x <= last; ++x) {
        const double w = pcd_pmf(p, x);
        const double xd = static_cast<double>(x);
        double f = 1.0;
        for (int r = 1; r <= 4; ++r) {
          f *= (xd - r + 1);
          fact[r] += f * w;
          raw[r] += std::pow(xd, r) * w;
        }
      }
      for (int r = 1; r <= 4; ++r)
        EXPECT_NEAR(pcd_factorial_moment(p, r) / fact[r], 1.0, 1e-8) << eta << " " << phi << " r=" << r;
      const auto m = pcd_moments(p);
      EXPECT_NEAR(m.mean / raw[1], 1.0, 1e-8);
      EXPECT_NEAR(m.raw2 / raw[2], 1.0, 1e-8);
      EXPECT_NEAR(m.raw3 / raw[3], 1.0, 1e-8);
      EXPECT_NEAR(m.raw4 / raw[4], 1.0, 1e-8);
      EXPECT_NEAR(m.variance / (m.raw2 - m.mean * m.mean), 1.0, 1e-10);
      EXPECT_NEAR(m.dispersion_index * m.mean / m.variance, 1.0, 1e-12);
      // Factorial-to-raw conversion with Stirling numbers of the second kind.
      const double f1 = fact[1], f2 = fact[2], f3 = fact[3], f4 = fact[4];
      EXPECT_NEAR((f2 + f1) / m.raw2, 1.0, 1e-8);
      EXPECT_NEAR((f3 + 3 * f2 + f1) / m.raw3, 1.0, 1e-8);
      EXPECT_NEAR((f4 + 6 * f3 + 7 * f2 + f1) / m.raw4, 1.0, 1e-8);
    }
}

TEST(PcdMoments, Examples) {
  const auto m = pcd_moments(PcdParams(1.0, 1.0));
  EXPECT_NEAR(m.mean, 2.5, 1e-14);
  EXPECT_NEAR(m.raw2, 13.5, 1e-13);
  EXPECT_NEAR(m.variance, 7.25, 1e-13);
  EXPECT_NEAR(m.dispersion_index, 2.9, 1e-13);
  const auto g = pcd_moments(PcdParams(1.0, 0.0));
  EXPECT_NEAR(g.mean, 1.0, 1e-15);
  EXPECT_NEAR(g.variance, 2.0, 1e-14);
  EXPECT_NEAR(g.dispersion_index, 2.0, 1e-14);
}

TEST(PcdMoments, OverDispersedEverywhere) {
  for (double eta = 0.05; eta < 50.0; eta *= 1.3)
    for (double phi : {0.0, 1e-6, 0.01, 0.3, 1.0, 7.0, 100.0, 1e5})
      EXPECT_GT(pcd_moments(PcdParams(eta, phi)).dispersion_index, 1.0) << eta << " " << phi;
}

TEST(PcdPgf, Identities) {
  const PcdParams p(1.0, 1.0);
  EXPECT_NEAR(pcd_pgf(p, 1.0), 1.0, 1e-15);
  EXPECT_NEAR(pcd_pgf(p, 0.5), 2.1875 / 5.0625, 1e-15);
  const double h = 1e-5;
  EXPECT_NEAR((pcd_pgf(p, 1.0) - pcd_pgf(p, 1.0 - h)) / h, 2.5, 1e-4);
  EXPECT_THROW(pcd_pgf(p, 2.0), DomainError);
  for (double eta : kEtas)
    for (double phi : kPhis) {
      const PcdParams q(eta, phi);
      EXPECT_NEAR(pcd_pgf(q, 1.0), 1.0, 1e-14);
      for (double s : {-0.9, -0.4, 0.0, 0.3, 0.9}) {
        double series = 0.0;
        double sp = 1.0;
        for (int x = 0; x < 4000; ++x, sp *= s) series += sp * pcd_pmf(q, x);
        EXPECT_NEAR(pcd_pgf(q, s), series, 1e-10) << eta << " " << phi << " " << s;
      }
    }
}

TEST(PcdPgf, MgfAndCf) {
  const PcdParams p(1.0, 1.0);
  for (double t : {-1.0, -0.2, 0.0, 0.3, 0.6}) EXPECT_NEAR(pcd_mgf(p, t), pcd_pgf(p, std::exp(t)), 1e-14);
  EXPECT_THROW(pcd_mgf(p, std::log(2.0) + 0.01), DomainError);
  const auto phi0 = pcd_cf(p, 0.0);
  EXPECT_NEAR(phi0.real(), 1.0, 1e-15);
  EXPECT_NEAR(phi0.imag(), 0.0, 1e-15);
  // cf(t) = sum e^{itx} p(x)
  std::complex<double> series = 0.0;
  for (int x = 0; x < 400; ++x) series += std::polar(pcd_pmf(p, x), 0.7 * x);
  const auto cf = pcd_cf(p, 0.7);
  EXPECT_NEAR(cf.real(), series.real(), 1e-12);
  EXPECT_NEAR(cf.imag(), series.imag(), 1e-12);
}

TEST(MeanParametrization, Examples) {
  EXPECT_NEAR(eta_from_mean(MeanParams(2.5, 1.0)), 1.0, 1e-15);
  EXPECT_NEAR(eta_from_mean(MeanParams(1.0, 0.0)), 1.0, 1e-15);
  Rng rng(4);
  for (int i = 0; i < 2000; ++i) {
    const double mu = std::exp(-4.0 + 10.0 * rng.uniform());
    const double phi = rng.uniform() < 0.1 ? 0.0 : std::exp(-6.0 + 12.0 * rng.uniform());
    const PcdParams p = to_natural(MeanParams(mu, phi));
    EXPECT_GT(p.eta, 0.0);
    EXPECT_NEAR(pcd_mean(p) / mu, 1.0, 1e-10) << mu << " " << phi;
  }
  EXPECT_THROW(MeanParams(0.0, 1.0), DomainError);
}
