#include <gtest/gtest.h>

#include <cmath>

#include "copoun/copoun.hpp"
#include "copoun/error.hpp"
#include "copoun/random.hpp"
#include "oracles.hpp"

using namespace copoun;

namespace {
const double kEtas[] = {0.25, 1.0, 4.0};
const double kPhis[] = {0.0, 0.5, 1.0, 10.0};
}  // namespace

TEST(CopounParams, Validation) {
  EXPECT_THROW(PcdParams(0.0, 1.0), DomainError);
  EXPECT_THROW(PcdParams(1.0, -0.1), DomainError);
  EXPECT_NO_THROW(PcdParams(1.0, 0.0));
  EXPECT_DOUBLE_EQ(PcdParams(1.0, 3.0).mixing_weight(), 0.25);
}

TEST(CopounPdf, Examples) {
  EXPECT_DOUBLE_EQ(cd_pdf(PcdParams(1.0, 0.0), 0.0), 1.0);
  EXPECT_NEAR(cd_pdf(PcdParams(1.0, 1.0), 1.0), 0.5 * (1.0 + 1.0 / 6.0) * std::exp(-1.0), 1e-15);
  EXPECT_NEAR(cd_pdf(PcdParams(1.0, 1.0), 1.0), 0.2145963, 1e-7);
  EXPECT_EQ(cd_pdf(PcdParams(1.0, 1.0), -1.0), 0.0);
}

TEST(CopounPdf, IntegratesToOne) {
  for (double eta : kEtas)
    for (double phi : kPhis) {
      const PcdParams p(eta, phi);
      const double total = oracle::integrate([&](double x) { return cd_pdf(p, x); }, 0.0, 400.0 / eta);
      EXPECT_NEAR(total, 1.0, 1e-8) << eta << " " << phi;
    }
}

TEST(CopounCdf, MatchesQuadrature) {
  for (double eta : kEtas)
    for (double phi : kPhis) {
      const PcdParams p(eta, phi);
      double last = 0.0;
      for (double x : {0.0, 0.1, 0.5, 1.0, 2.0, 3.7, 8.0, 20.0}) {
        const double want = oracle::integrate([&](double t) { return oracle::copoun_density(eta, phi, t); }, 0.0,
                                              x, 1e-14, 16);
        const double got = cd_cdf(p, x);
        EXPECT_NEAR(got, want, 1e-8) << eta << " " << phi << " " << x;
        EXPECT_GE(got, last);
        last = got;
      }
      EXPECT_NEAR(cd_cdf(p, 1e4), 1.0, 1e-15);
    }
  EXPECT_EQ(cd_cdf(PcdParams(1.0, 1.0), 0.0), 0.0);
}

TEST(CopounSample, MixtureMean) {
  Rng rng(2024);
  const auto xs = cd_sample(PcdParams(1.0, 1.0), rng, 1000000);
  const auto s = oracle::summarize(xs);
  EXPECT_NEAR(s.mean, 2.5, 3 * s.se);
  EXPECT_DOUBLE_EQ(cd_mean(PcdParams(1.0, 1.0)), 2.5);

  Rng r2(7);
  const auto expo = oracle::summarize(cd_sample(PcdParams(2.0, 0.0), r2, 200000));
  EXPECT_NEAR(expo.mean, 0.5, 4 * expo.se);
  Rng r3(8);
  const auto gam = oracle::summarize(cd_sample(PcdParams(1.0, 1e9), r3, 200000));
  EXPECT_NEAR(gam.mean, 4.0, 4 * gam.se);
}

TEST(CopounSample, KolmogorovSmirnovOnGrid) {
  Rng base(99);
  int index = 0;
  for (double eta : kEtas)
    for (double phi : kPhis) {
      Rng rng = base.split(static_cast<std::uint64_t>(index++));
      const PcdParams p(eta, phi);
      const auto ks = oracle::ks_test(cd_sample(p, rng, 100000), [&](double x) { return cd_cdf(p, x); });
      // 1% critical value of D at n = 1e5 is 1.628 / sqrt(n).
      EXPECT_LT(ks.d, 1.628 / std::sqrt(100000.0)) << eta << " " << phi;
    }
}

TEST(CopounSample, Reproducible) {
  Rng a(5);
  Rng b(5);
  EXPECT_EQ(cd_sample(PcdParams(1.0, 2.0), a, 1000), cd_sample(PcdParams(1.0, 2.0), b, 1000));
}
