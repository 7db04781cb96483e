#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace copoun {

struct InformationCriteria {
  double aic = 0.0;
  double bic = 0.0;
};

/// aic = 2k - 2 ll, bic = k ln(n) - 2 ll.
InformationCriteria information_criteria(double log_likelihood, int k, double n);

/// Output of every fitter. Standard errors and interval bounds are NaN when
/// unavailable (boundary estimate or non-positive-definite information);
/// `notes` then says why.
struct FitReport {
  std::string model_name;
  std::vector<std::string> parameter_names;
  std::vector<double> estimates;
  std::vector<double> standard_errors;
  double ci_level = 0.95;
  std::vector<double> ci_lower;
  std::vector<double> ci_upper;
  double log_likelihood = 0.0;
  double aic = 0.0;
  double bic = 0.0;
  long long n = 0;
  bool converged = false;
  int iterations = 0;
  /// Alternative parametrizations reported alongside the estimates.
  std::vector<std::pair<std::string, double>> derived;
  std::vector<std::string> notes;

  int parameter_count() const { return static_cast<int>(estimates.size()); }
  /// Throws std::out_of_range for an unknown name.
  double estimate(const std::string& name) const;
  double standard_error(const std::string& name) const;
  bool has_standard_errors() const;
};

}  // namespace copoun
