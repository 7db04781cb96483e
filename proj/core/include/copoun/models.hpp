#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "copoun/diagnostics.hpp"
#include "copoun/fit_report.hpp"
#include "copoun/frequency_table.hpp"
#include "copoun/optimize.hpp"
#include "copoun/random.hpp"

namespace copoun {

/// Every univariate count model the toolkit can fit by name.
enum class ModelKind { pcd, thipcd, thipd, poisson, geometric, nb, zip };

enum class FitMethod { mle, mom };

/// Throws DomainError listing the accepted names.
ModelKind parse_model_kind(std::string_view name);
std::string_view model_kind_name(ModelKind kind);

/// Parameter names in report order, e.g. {"eta", "phi", "alpha"} for thipcd.
std::vector<std::string> model_parameter_names(ModelKind kind);

/// Method-of-moments is only defined for pcd.
FitReport fit_model(ModelKind kind, const FrequencyTable& table, FitMethod method = FitMethod::mle,
                    const OptimizerConfig& config = {}, double ci_level = 0.95);

/// Pmf evaluated at the report's estimates.
CountPmf model_pmf(ModelKind kind, const FitReport& report);

/// Draws n counts; `params` must name exactly the model's parameters.
std::vector<std::int64_t> simulate_counts(ModelKind kind, const std::map<std::string, double>& params,
                                          std::size_t n, Rng& rng);

}  // namespace copoun
