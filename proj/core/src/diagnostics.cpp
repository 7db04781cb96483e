#include "copoun/diagnostics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include "copoun/error.hpp"
#include "copoun/special.hpp"

namespace copoun {

namespace {

constexpr double kUClamp = 1e-12;

// c[0] + c[1] x + ... + c[n-1] x^{n-1}
template <std::size_t N>
double poly(const std::array<double, N>& c, double x) {
  double r = 0.0;
  for (std::size_t k = N; k-- > 0;) r = r * x + c[k];
  return r;
}

// Half-vector of Royston's weights a[1..n/2] (index 0 unused), positive.
std::vector<double> shapiro_weights(std::size_t n) {
  static constexpr std::array<double, 6> c1{0.0, 0.221157, -0.147981, -2.07119, 4.434685, -2.706056};
  static constexpr std::array<double, 6> c2{0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633};
  const std::size_t half = n / 2;
  std::vector<double> a(half + 1, 0.0);
  if (n == 3) {
    a[1] = std::sqrt(0.5);
    return a;
  }
  const double an = static_cast<double>(n);
  const double an25 = an + 0.25;
  double summ2 = 0.0;
  for (std::size_t i = 1; i <= half; ++i) {
    a[i] = normal_quantile((static_cast<double>(i) - 0.375) / an25);
    summ2 += a[i] * a[i];
  }
  summ2 *= 2.0;
  const double ssumm2 = std::sqrt(summ2);
  const double rsn = 1.0 / std::sqrt(an);
  const double a1 = poly(c1, rsn) - a[1] / ssumm2;

  std::size_t first_scaled;
  double fac;
  if (n > 5) {
    first_scaled = 3;
    const double a2 = -a[2] / ssumm2 + poly(c2, rsn);
    fac = std::sqrt((summ2 - 2.0 * a[1] * a[1] - 2.0 * a[2] * a[2]) /
                    (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2));
    a[2] = a2;
  } else {
    first_scaled = 2;
    fac = std::sqrt((summ2 - 2.0 * a[1] * a[1]) / (1.0 - 2.0 * a1 * a1));
  }
  a[1] = a1;
  for (std::size_t i = first_scaled; i <= half; ++i) a[i] /= -fac;
  return a;
}

double shapiro_p_value(double w, std::size_t n) {
  if (n == 3) {
    constexpr double pi6 = 1.90985931710274;   // 6 / pi
    constexpr double stqr = 1.04719755119660;  // pi / 3
    return std::max(0.0, pi6 * (std::asin(std::sqrt(w)) - stqr));
  }
  static constexpr std::array<double, 2> g{-2.273, 0.459};
  static constexpr std::array<double, 4> c3{0.544, -0.39978, 0.025054, -6.714e-4};
  static constexpr std::array<double, 4> c4{1.3822, -0.77857, 0.062767, -0.0020322};
  static constexpr std::array<double, 4> c5{-1.5861, -0.31082, -0.083751, 0.0038915};
  static constexpr std::array<double, 3> c6{-0.4803, -0.082676, 0.0030302};

  const double an = static_cast<double>(n);
  double y = std::log(1.0 - w);
  double m;
  double s;
  if (n <= 11) {
    const double gamma = poly(g, an);
    if (y >= gamma) return 1e-99;
    y = -std::log(gamma - y);
    m = poly(c3, an);
    s = std::exp(poly(c4, an));
  } else {
    const double xx = std::log(an);
    m = poly(c5, xx);
    s = std::exp(poly(c6, xx));
  }
  return normal_cdf(-(y - m) / s);
}

}  // namespace

ShapiroWilkResult shapiro_wilk(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n < 3 || n > 5000) throw DomainError("shapiro_wilk: sample size must lie in [3, 5000]");
  std::vector<double> sorted(x.begin(), x.end());
  for (double v : sorted)
    if (!std::isfinite(v)) throw DomainError("shapiro_wilk: non-finite value");
  std::sort(sorted.begin(), sorted.end());
  const double range = sorted.back() - sorted.front();
  if (!(range > 1e-19 * std::max(1.0, std::abs(sorted.front())))) {
    throw DomainError("shapiro_wilk: constant sample");
  }

  const std::vector<double> a = shapiro_weights(n);
  // Correlation between the antisymmetric weight vector and the scaled sample.
  double sx = 0.0;
  for (double v : sorted) sx += v / range;
  sx /= static_cast<double>(n);
  double ssa = 0.0;
  double ssx = 0.0;
  double sax = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t mirror = n - 1 - i;
    double asa = 0.0;
    if (i != mirror) {
      const double coef = a[1 + std::min(i, mirror)];
      asa = i < mirror ? -coef : coef;
    }
    const double xsx = sorted[i] / range - sx;
    ssa += asa * asa;
    ssx += xsx * xsx;
    sax += asa * xsx;
  }
  const double ssassx = std::sqrt(ssa * ssx);
  const double w1 = (ssassx - sax) * (ssassx + sax) / (ssa * ssx);
  const double w = 1.0 - w1;
  return {w, shapiro_p_value(w, n)};
}

RqrResult randomized_quantile_residuals(const ObservationCdf& cdf,
                                        std::span<const std::int64_t> sample, Rng& rng) {
  RqrResult out;
  out.seed = rng.seed();
  out.residuals.reserve(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const std::int64_t y = sample[i];
    if (y < 0) throw DomainError("randomized_quantile_residuals: negative observation");
    const double lower = y == 0 ? 0.0 : cdf(i, y - 1);
    const double upper = cdf(i, y);
    if (upper < lower) {
      throw EvaluationError("randomized_quantile_residuals: cdf decreases at observation " +
                                std::to_string(i),
                            {static_cast<double>(i), static_cast<double>(y)});
    }
    // A saturated cdf (upper == lower in double) leaves a point mass at upper.
    const double u = upper > lower ? lower + (upper - lower) * rng.uniform() : upper;
    out.residuals.push_back(normal_quantile(std::clamp(u, kUClamp, 1.0 - kUClamp)));
  }
  if (out.residuals.size() >= 3) {
    const auto sw = shapiro_wilk(out.residuals);
    out.tested = true;
    out.shapiro_w = sw.w;
    out.shapiro_p = sw.p;
  } else {
    out.shapiro_w = std::numeric_limits<double>::quiet_NaN();
    out.shapiro_p = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

std::vector<std::pair<double, double>> qq_points(std::span<const double> residuals) {
  std::vector<double> sorted(residuals.begin(), residuals.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  std::vector<std::pair<double, double>> out;
  out.reserve(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double p = (static_cast<double>(i) + 1.0 - 0.375) / (n + 0.25);
    out.emplace_back(normal_quantile(p), sorted[i]);
  }
  return out;
}

GofResult chi_square_gof(const FrequencyTable& observed, const CountPmf& pmf, int fitted_params,
                         double min_expected, std::optional<int> df_override) {
  const std::int64_t n = observed.n();
  if (n < 10) throw DomainError("chi_square_gof: at least 10 observations are required");
  if (fitted_params < 0) throw DomainError("chi_square_gof: fitted_params must be nonnegative");
  if (!(min_expected > 0.0)) throw DomainError("chi_square_gof: min_expected must be positive");
  if (df_override && *df_override < 1) throw DomainError("chi_square_gof: df_override must be >= 1");

  const std::int64_t max_value = observed.max_value();
  const double nd = static_cast<double>(n);
  std::vector<GofBin> cells;
  cells.reserve(static_cast<std::size_t>(max_value) + 1);
  double head_mass = 0.0;
  for (std::int64_t v = 0; v <= max_value; ++v) {
    const double p = pmf(v);
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw EvaluationError("chi_square_gof: pmf not a probability at " + std::to_string(v),
                            {static_cast<double>(v)});
    }
    GofBin bin{v, v, false, observed.count_of(v), nd * p};
    if (v == max_value) {
      bin.open_ended = true;
      bin.expected = nd * std::max(0.0, 1.0 - head_mass);
    }
    head_mass += p;
    cells.push_back(bin);
  }

  // Merge from the right; a short leftmost remainder joins its right neighbour.
  std::vector<GofBin> merged;
  GofBin acc = cells.back();
  for (std::size_t k = cells.size() - 1; k-- > 0;) {
    if (acc.expected >= min_expected) {
      merged.push_back(acc);
      acc = cells[k];
    } else {
      acc.first = cells[k].first;
      acc.observed += cells[k].observed;
      acc.expected += cells[k].expected;
    }
  }
  if (acc.expected >= min_expected || merged.empty()) {
    merged.push_back(acc);
  } else {
    GofBin& neighbour = merged.back();
    neighbour.first = acc.first;
    neighbour.observed += acc.observed;
    neighbour.expected += acc.expected;
  }
  std::reverse(merged.begin(), merged.end());

  const int cell_count = static_cast<int>(merged.size());
  if (cell_count < fitted_params + 2) throw DomainError("chi_square_gof: insufficient cells");

  GofResult out;
  for (const auto& b : merged) {
    const double diff = static_cast<double>(b.observed) - b.expected;
    out.chi_sq += diff * diff / b.expected;
  }
  out.bins = std::move(merged);
  out.df = df_override ? *df_override : cell_count - 1 - fitted_params;
  out.p_value = chisq_sf(out.chi_sq, out.df);
  return out;
}

ComparisonTable compare_models(const std::vector<ModelCandidate>& candidates,
                               const FrequencyTable& data, double min_expected,
                               std::optional<int> df_override) {
  if (candidates.size() < 2) throw DomainError("compare_models: at least two models are required");
  ComparisonTable table;
  for (const auto& c : candidates) {
    if (c.report.n != data.n()) {
      throw DomainError("compare_models: report for '" + c.report.model_name +
                        "' was fitted to a different sample size");
    }
    ComparisonRow row;
    row.model = c.report.model_name;
    row.negative_log_likelihood = -c.report.log_likelihood;
    row.aic = c.report.aic;
    row.bic = c.report.bic;
    row.gof = chi_square_gof(data, c.pmf, c.report.parameter_count(), min_expected, df_override);
    table.rows.push_back(std::move(row));
  }
  std::stable_sort(table.rows.begin(), table.rows.end(),
                   [](const ComparisonRow& a, const ComparisonRow& b) { return a.aic < b.aic; });
  table.rows.front().best = true;
  table.best_model = table.rows.front().model;
  return table;
}

}  // namespace copoun
