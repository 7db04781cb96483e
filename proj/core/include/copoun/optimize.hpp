#pragma once

#include <span>
#include <vector>

#include "copoun/differentiation.hpp"

namespace copoun {

struct OptimizerConfig {
  int max_iterations = 20000;
  double function_tolerance = 1e-10;
  double parameter_tolerance = 1e-8;
  double simplex_scale = 0.1;

  /// Throws DomainError unless every field is strictly positive.
  void validate() const;
};

struct OptimResult {
  std::vector<double> argmin;
  double min_value = 0.0;
  bool converged = false;
  int iterations = 0;
};

/// Nelder-Mead simplex descent with dimension-adaptive coefficients.
///
/// Non-finite objective values are treated as +infinity so the simplex is
/// pushed back into the region where `f` is defined. After the simplex
/// collapses the search is restarted around the best vertex until a restart
/// no longer improves the value by more than the function tolerance.
/// Throws DomainError when `f(x0)` is not finite.
OptimResult minimize(const Objective& f, std::span<const double> x0,
                     const OptimizerConfig& config = {});

/// Same as above, starting from an explicit simplex of `dim + 1` vertices.
OptimResult minimize_from_simplex(const Objective& f, std::vector<std::vector<double>> simplex,
                                  const OptimizerConfig& config = {});

}  // namespace copoun
