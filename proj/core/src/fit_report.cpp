#include "copoun/fit_report.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "copoun/error.hpp"

namespace copoun {

InformationCriteria information_criteria(double log_likelihood, int k, double n) {
  if (k < 1) throw DomainError("information_criteria: k must be >= 1");
  if (!(n >= 1.0)) throw DomainError("information_criteria: n must be >= 1");
  return {2.0 * k - 2.0 * log_likelihood, k * std::log(n) - 2.0 * log_likelihood};
}

namespace {

std::size_t index_of(const std::vector<std::string>& names, const std::string& name) {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw std::out_of_range("unknown parameter: " + name);
  return static_cast<std::size_t>(it - names.begin());
}

}  // namespace

double FitReport::estimate(const std::string& name) const {
  return estimates.at(index_of(parameter_names, name));
}

double FitReport::standard_error(const std::string& name) const {
  return standard_errors.at(index_of(parameter_names, name));
}

bool FitReport::has_standard_errors() const {
  return !standard_errors.empty() &&
         std::all_of(standard_errors.begin(), standard_errors.end(),
                     [](double s) { return std::isfinite(s); });
}

}  // namespace copoun
