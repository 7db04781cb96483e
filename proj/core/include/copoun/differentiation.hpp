#pragma once

#include <functional>
#include <span>
#include <vector>

#include "copoun/linalg.hpp"

namespace copoun {

using Objective = std::function<double(std::span<const double>)>;

/// Central-difference gradient. With `step` <= 0 each coordinate uses
/// cbrt(eps) * (1 + |x_i|). Throws EvaluationError at a non-finite probe.
std::vector<double> numeric_gradient(const Objective& f, std::span<const double> x,
                                     double step = 0.0);

/// Central second differences with step eps^(1/4) * (1 + |x_i|), returned
/// symmetrized as (H + H^T) / 2.
Matrix numeric_hessian(const Objective& f, std::span<const double> x);

}  // namespace copoun
