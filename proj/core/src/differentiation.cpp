#include "copoun/differentiation.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "copoun/error.hpp"

namespace copoun {

namespace {

double probe(const Objective& f, const std::vector<double>& point) {
  const double value = f(point);
  if (!std::isfinite(value)) {
    throw EvaluationError("objective is not finite at a differentiation probe point", point);
  }
  return value;
}

double relative_step(double base, double xi) { return base * (1.0 + std::abs(xi)); }

}  // namespace

std::vector<double> numeric_gradient(const Objective& f, std::span<const double> x,
                                     double step) {
  const double base = std::cbrt(std::numeric_limits<double>::epsilon());
  std::vector<double> point(x.begin(), x.end());
  std::vector<double> grad(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double h = step > 0.0 ? step : relative_step(base, x[i]);
    point[i] = x[i] + h;
    const double up = probe(f, point);
    point[i] = x[i] - h;
    const double down = probe(f, point);
    point[i] = x[i];
    grad[i] = (up - down) / (2.0 * h);
  }
  return grad;
}

Matrix numeric_hessian(const Objective& f, std::span<const double> x) {
  const std::size_t n = x.size();
  const double base = std::pow(std::numeric_limits<double>::epsilon(), 0.25);
  std::vector<double> point(x.begin(), x.end());
  std::vector<double> h(n);
  for (std::size_t i = 0; i < n; ++i) h[i] = relative_step(base, x[i]);

  const double center = probe(f, point);
  Matrix hess(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    point[i] = x[i] + h[i];
    const double up = probe(f, point);
    point[i] = x[i] - h[i];
    const double down = probe(f, point);
    point[i] = x[i];
    hess(i, i) = (up - 2.0 * center + down) / (h[i] * h[i]);

    for (std::size_t j = 0; j < i; ++j) {
      auto at = [&](double si, double sj) {
        point[i] = x[i] + si * h[i];
        point[j] = x[j] + sj * h[j];
        const double v = probe(f, point);
        point[i] = x[i];
        point[j] = x[j];
        return v;
      };
      const double mixed =
          (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4.0 * h[i] * h[j]);
      hess(i, j) = mixed;
      hess(j, i) = mixed;
    }
  }
  return hess;
}

}  // namespace copoun
