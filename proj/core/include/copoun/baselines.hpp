#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "copoun/fit_report.hpp"
#include "copoun/frequency_table.hpp"
#include "copoun/optimize.hpp"

namespace copoun {

enum class BaselineFamily { poisson, geometric, negative_binomial, zip };

std::string_view family_name(BaselineFamily family);

/// Parameters per family, in this order:
///   poisson            {lambda}
///   geometric          {p}            pmf p (1-p)^y
///   negative_binomial  {mu, size}     mean mu, variance mu + mu^2 / size
///   zip                {lambda, alpha}
struct BaselineSpec {
  BaselineFamily family = BaselineFamily::poisson;
  std::vector<double> parameters;

  /// Throws DomainError when a parameter is outside its family's domain.
  void validate() const;
};

double baseline_log_pmf(const BaselineSpec& spec, std::int64_t y);
double baseline_log_likelihood(const BaselineSpec& spec, const FrequencyTable& table);

/// Poisson and geometric estimates are closed form; NB and ZIP are fitted
/// numerically in log/logit coordinates. Requires n >= 2.
FitReport baseline_mle(BaselineFamily family, const FrequencyTable& table,
                       const OptimizerConfig& config = {}, double ci_level = 0.95);

/// Spec carrying the estimates of a baseline FitReport.
BaselineSpec spec_from_report(BaselineFamily family, const FitReport& report);

}  // namespace copoun
