#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "copoun/diagnostics.hpp"
#include "copoun/error.hpp"
#include "copoun/estimation.hpp"
#include "copoun/fit_report.hpp"
#include "copoun/models.hpp"
#include "copoun/pcd.hpp"
#include "copoun/special.hpp"

using namespace copoun;

namespace {

struct ShapiroCase {
  std::string name;
  double w;
  double p;
  std::vector<double> values;
};

// Reference W and p frozen from an independent implementation.
std::vector<ShapiroCase> load_shapiro_reference() {
  std::ifstream in(std::string(COPOUN_TEST_DATA_DIR) + "/shapiro_reference.csv");
  std::vector<ShapiroCase> out;
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    ShapiroCase c;
    std::string field;
    std::getline(ss, c.name, ',');
    std::getline(ss, field, ',');
    c.w = std::stod(field);
    std::getline(ss, field, ',');
    c.p = std::stod(field);
    std::getline(ss, field);
    std::stringstream vs(field);
    double v;
    while (vs >> v) c.values.push_back(v);
    out.push_back(std::move(c));
  }
  return out;
}

FrequencyTable table_of(std::initializer_list<std::int64_t> counts) {
  std::vector<FrequencyEntry> e;
  std::int64_t v = 0;
  for (auto c : counts) e.push_back({v++, c});
  return FrequencyTable(e);
}

}  // namespace

TEST(ShapiroWilk, MatchesReference) {
  const auto cases = load_shapiro_reference();
  ASSERT_GE(cases.size(), 7u);
  for (const auto& c : cases) {
    const auto r = shapiro_wilk(c.values);
    EXPECT_NEAR(r.w, c.w, 1e-4) << c.name;
    EXPECT_NEAR(r.p, c.p, 1e-4) << c.name;
  }
}

TEST(ShapiroWilk, Calibration) {
  Rng base(1);
  int rejections = 0;
  for (int i = 0; i < 1000; ++i) {
    Rng rng = base.split(static_cast<std::uint64_t>(i));
    std::vector<double> x(100);
    for (auto& v : x) v = rng.normal();
    rejections += shapiro_wilk(x).p < 0.05;
  }
  EXPECT_GE(rejections, 20);
  EXPECT_LE(rejections, 90);
}

TEST(ShapiroWilk, PowerAgainstExponential) {
  Rng base(2);
  int strong = 0;
  for (int i = 0; i < 200; ++i) {
    Rng rng = base.split(static_cast<std::uint64_t>(i));
    std::vector<double> x(100);
    for (auto& v : x) v = rng.exponential(1.0);
    strong += shapiro_wilk(x).p < 0.01;
  }
  EXPECT_GT(strong, 0.95 * 200);
}

TEST(ShapiroWilk, Errors) {
  const std::vector<double> constant(10, 2.0);
  EXPECT_THROW(shapiro_wilk(constant), DomainError);
  const std::vector<double> two{1.0, 2.0};
  EXPECT_THROW(shapiro_wilk(two), DomainError);
  const std::vector<double> big(5001, 0.0);
  EXPECT_THROW(shapiro_wilk(big), DomainError);
}

TEST(QuantileResiduals, BoundsAndReplay) {
  const PcdParams p(1.0, 1.0);
  Rng sim(3);
  const auto ys = pcd_sample(p, sim, 200);
  auto cdf = [&](std::size_t, std::int64_t y) { return pcd_cdf(p, y); };
  Rng rng(11);
  const auto r = randomized_quantile_residuals(cdf, ys, rng);
  ASSERT_EQ(r.residuals.size(), ys.size());
  EXPECT_EQ(r.seed, 11u);
  EXPECT_TRUE(r.tested);
  EXPECT_LE(r.shapiro_w, 1.0);
  for (std::size_t i = 0; i < ys.size(); ++i) {
    const double u = normal_cdf(r.residuals[i]);
    const double a = ys[i] == 0 ? 0.0 : pcd_cdf(p, ys[i] - 1);
    EXPECT_GT(u, a - 1e-12);
    EXPECT_LE(u, pcd_cdf(p, ys[i]) + 1e-12);
  }
  Rng again(11);
  EXPECT_EQ(randomized_quantile_residuals(cdf, ys, again).residuals, r.residuals);
}

TEST(QuantileResiduals, DegenerateAndErrors) {
  const std::vector<std::int64_t> one{2};
  Rng rng(1);
  const auto r = randomized_quantile_residuals([](std::size_t, std::int64_t y) { return y >= 2 ? 1.0 : 0.0; }, one, rng);
  ASSERT_EQ(r.residuals.size(), 1u);
  EXPECT_TRUE(std::isfinite(r.residuals[0]));
  EXPECT_FALSE(r.tested);
  auto decreasing = [](std::size_t, std::int64_t y) { return 1.0 - 0.1 * static_cast<double>(y); };
  EXPECT_THROW(randomized_quantile_residuals(decreasing, one, rng), EvaluationError);
}

TEST(QuantileResiduals, QqPoints) {
  const std::vector<double> r{0.3, -1.0, 2.0};
  const auto qq = qq_points(r);
  ASSERT_EQ(qq.size(), 3u);
  EXPECT_EQ(qq[0].second, -1.0);
  EXPECT_EQ(qq[2].second, 2.0);
  EXPECT_NEAR(qq[1].first, 0.0, 1e-15);
  EXPECT_NEAR(qq[0].first, -qq[2].first, 1e-12);
}

TEST(ChiSquareGof, PerfectFitIsZero) {
  // Observed counts exactly n * pmf for a three-point law.
  const std::vector<double> pmf{0.25, 0.5, 0.25};
  const auto table = table_of({25, 50, 25});
  const auto g = chi_square_gof(table, [&](std::int64_t y) { return y < 3 ? pmf[y] : 0.0; }, 0, 5.0);
  EXPECT_NEAR(g.chi_sq, 0.0, 1e-20);
  EXPECT_EQ(g.df, 2);
  EXPECT_EQ(g.bins.size(), 3u);
  EXPECT_NEAR(g.p_value, 1.0, 1e-15);
}

TEST(ChiSquareGof, MergingInvariants) {
  const auto table = table_of({45, 35, 35, 47, 40, 20, 13, 8, 4, 5, 3, 1, 4, 0, 1});
  const PcdParams p(1.0, 3.0);
  auto pmf = [&](std::int64_t y) { return pcd_pmf(p, y); };
  std::size_t last_cells = 100;
  for (double min_expected : {0.1, 1.0, 5.0, 20.0}) {
    const auto g = chi_square_gof(table, pmf, 2, min_expected);
    std::int64_t observed = 0;
    double expected = 0.0;
    for (const auto& b : g.bins) {
      observed += b.observed;
      expected += b.expected;
      EXPECT_GE(b.expected, min_expected);
    }
    EXPECT_EQ(observed, table.n());
    EXPECT_NEAR(expected, static_cast<double>(table.n()), 0.5);
    EXPECT_EQ(g.df, static_cast<int>(g.bins.size()) - 1 - 2);
    EXPECT_TRUE(g.bins.back().open_ended);
    EXPECT_LE(g.bins.size(), last_cells);
    last_cells = g.bins.size();
    for (std::size_t k = 1; k < g.bins.size(); ++k) EXPECT_EQ(g.bins[k].first, g.bins[k - 1].last + 1);
  }
  const auto fixed = chi_square_gof(table, pmf, 2, 5.0, 5);
  EXPECT_EQ(fixed.df, 5);
  EXPECT_NEAR(fixed.p_value, chisq_sf(fixed.chi_sq, 5), 1e-15);
}

TEST(ChiSquareGof, Errors) {
  const auto tiny = table_of({3, 2, 1});
  auto pmf = [](std::int64_t y) { return std::pow(0.5, y + 1); };
  EXPECT_THROW(chi_square_gof(tiny, pmf, 1), DomainError);
  const auto table = table_of({30, 10, 5});
  try {
    chi_square_gof(table, pmf, 3, 5.0);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("insufficient cells"), std::string::npos);
  }
}

TEST(InformationCriteria, Examples) {
  const auto a = information_criteria(-579.62, 3, 261);
  EXPECT_NEAR(a.aic, 1165.24, 1e-9);
  EXPECT_NEAR(a.bic, 3 * std::log(261.0) + 1159.24, 1e-9);
  EXPECT_NEAR(a.bic, 1175.93, 0.01);
  const auto b = information_criteria(-640.79, 2, 261);
  EXPECT_NEAR(b.aic, 1285.58, 1e-9);
  EXPECT_NEAR(b.bic, 1292.70, 0.01);
  EXPECT_DOUBLE_EQ(information_criteria(0.0, 1, std::exp(1.0)).bic, 1.0);
}

TEST(CompareModels, RanksAndErrors) {
  Rng rng(4);
  const auto table = FrequencyTable::from_sample(pcd_sample(PcdParams(0.5, 2.0), rng, 800));
  std::vector<ModelCandidate> cands;
  for (auto k : {ModelKind::geometric, ModelKind::pcd}) {
    auto r = fit_model(k, table);
    auto pmf = model_pmf(k, r);
    cands.push_back({std::move(r), std::move(pmf)});
  }
  const auto cmp = compare_models(cands, table);
  ASSERT_EQ(cmp.rows.size(), 2u);
  EXPECT_LE(cmp.rows[0].aic, cmp.rows[1].aic);
  EXPECT_TRUE(cmp.rows[0].best);
  EXPECT_FALSE(cmp.rows[1].best);
  EXPECT_EQ(cmp.best_model, cmp.rows[0].model);

  EXPECT_THROW(compare_models({cands[0]}, table), DomainError);
  auto other = cands;
  other[1].report.n += 1;
  EXPECT_THROW(compare_models(other, table), DomainError);
}
