#pragma once

namespace copoun {

/// ln Gamma(x) for x > 0. Stirling series above 10, upward recurrence below.
double log_gamma(double x);

/// ln x! for integer-valued x >= 0.
double log_factorial(double x);

/// Standard normal cdf.
double normal_cdf(double z);

/// Inverse of the standard normal cdf for p in (0, 1).
///
/// Acklam's rational approximation followed by one Halley correction
/// against normal_cdf; absolute error is near machine precision.
double normal_quantile(double p);

/// Regularized lower incomplete gamma P(a, x).
double gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double gamma_q(double a, double x);

/// Survival function of the chi-square distribution with `df` degrees of freedom.
double chisq_sf(double x, int df);

}  // namespace copoun
