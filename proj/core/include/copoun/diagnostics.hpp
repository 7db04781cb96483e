#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "copoun/fit_report.hpp"
#include "copoun/frequency_table.hpp"
#include "copoun/random.hpp"

namespace copoun {

struct ShapiroWilkResult {
  double w = 0.0;
  double p = 0.0;
};

/// Royston's approximation (AS R94). Requires 3 <= n <= 5000 and a
/// non-constant sample; throws DomainError otherwise.
ShapiroWilkResult shapiro_wilk(std::span<const double> x);

struct RqrResult {
  std::vector<double> residuals;
  bool tested = false;  ///< false when n < 3
  double shapiro_w = 0.0;
  double shapiro_p = 0.0;
  std::uint64_t seed = 0;
};

/// F(i, y): cdf of observation i's fitted distribution evaluated at y.
using ObservationCdf = std::function<double(std::size_t, std::int64_t)>;

/// u_i ~ U(F(y_i - 1), F(y_i)], r_i = Phi^{-1}(u_i). Throws EvaluationError
/// when the cdf decreases across an observation.
RqrResult randomized_quantile_residuals(const ObservationCdf& cdf,
                                        std::span<const std::int64_t> sample, Rng& rng);

/// (theoretical normal quantile, sorted residual) pairs using Blom positions.
std::vector<std::pair<double, double>> qq_points(std::span<const double> residuals);

struct GofBin {
  std::int64_t first = 0;
  std::int64_t last = 0;
  bool open_ended = false;  ///< bin also holds the tail beyond `last`
  std::int64_t observed = 0;
  double expected = 0.0;
};

struct GofResult {
  std::vector<GofBin> bins;
  double chi_sq = 0.0;
  int df = 0;
  double p_value = 0.0;
};

using CountPmf = std::function<double(std::int64_t)>;

/// Pearson chi-square against a fitted pmf. One cell per value 0..max, the
/// last absorbing the upper tail; cells are merged from the right until each
/// expected count reaches `min_expected`.
GofResult chi_square_gof(const FrequencyTable& observed, const CountPmf& pmf, int fitted_params,
                         double min_expected = 5.0, std::optional<int> df_override = std::nullopt);

struct ModelCandidate {
  FitReport report;
  CountPmf pmf;
};

struct ComparisonRow {
  std::string model;
  double negative_log_likelihood = 0.0;
  double aic = 0.0;
  double bic = 0.0;
  GofResult gof;
  bool best = false;
};

struct ComparisonTable {
  std::vector<ComparisonRow> rows;  ///< ascending AIC
  std::string best_model;
};

ComparisonTable compare_models(const std::vector<ModelCandidate>& candidates,
                               const FrequencyTable& data, double min_expected = 5.0,
                               std::optional<int> df_override = std::nullopt);

}  // namespace copoun
