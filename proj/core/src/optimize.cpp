#include "copoun/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "copoun/error.hpp"

namespace copoun {

void OptimizerConfig::validate() const {
  if (max_iterations <= 0 || !(function_tolerance > 0.0) || !(parameter_tolerance > 0.0) ||
      !(simplex_scale > 0.0)) {
    throw DomainError("OptimizerConfig: all fields must be strictly positive");
  }
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxRestarts = 5;

double safe_eval(const Objective& f, std::span<const double> x) {
  const double v = f(x);
  return std::isfinite(v) ? v : kInf;
}

struct Vertex {
  std::vector<double> x;
  double f;
};

std::vector<std::vector<double>> axis_simplex(std::span<const double> x0, double scale) {
  std::vector<std::vector<double>> simplex;
  simplex.emplace_back(x0.begin(), x0.end());
  for (std::size_t i = 0; i < x0.size(); ++i) {
    std::vector<double> v(x0.begin(), x0.end());
    v[i] += scale * std::max(1.0, std::abs(x0[i]));
    simplex.push_back(std::move(v));
  }
  return simplex;
}

bool collapsed(const std::vector<Vertex>& s, const OptimizerConfig& cfg) {
  const double fbest = s.front().f;
  const double fworst = s.back().f;
  if (!(std::abs(fworst - fbest) <= cfg.function_tolerance * (1.0 + std::abs(fbest)))) {
    return false;
  }
  for (std::size_t v = 1; v < s.size(); ++v)
    for (std::size_t i = 0; i < s[v].x.size(); ++i) {
      const double scale = 1.0 + std::abs(s.front().x[i]);
      if (std::abs(s[v].x[i] - s.front().x[i]) > cfg.parameter_tolerance * scale) return false;
    }
  return true;
}

// One Nelder-Mead run; `iterations` is shared across restarts.
Vertex run_simplex(const Objective& f, std::vector<std::vector<double>> start,
                   const OptimizerConfig& cfg, int& iterations, bool& converged) {
  const std::size_t n = start.front().size();
  const double dn = static_cast<double>(n);
  // Gao & Han adaptive coefficients; identical to the classic ones for n = 2.
  const double reflect = 1.0;
  const double expand = 1.0 + 2.0 / dn;
  const double contract = 0.75 - 1.0 / (2.0 * dn);
  const double shrink = 1.0 - 1.0 / dn;

  std::vector<Vertex> s;
  s.reserve(n + 1);
  for (auto& x : start) {
    const double fx = safe_eval(f, x);
    s.push_back({std::move(x), fx});
  }
  auto by_value = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };
  std::stable_sort(s.begin(), s.end(), by_value);

  std::vector<double> centroid(n), trial(n), trial2(n);
  auto affine = [&](double t, std::vector<double>& out) {
    for (std::size_t i = 0; i < n; ++i) out[i] = centroid[i] + t * (s.back().x[i] - centroid[i]);
  };

  converged = false;
  while (iterations < cfg.max_iterations) {
    if (collapsed(s, cfg)) {
      converged = true;
      break;
    }
    ++iterations;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t i = 0; i < n; ++i) centroid[i] += s[v].x[i] / dn;

    affine(-reflect, trial);
    const double fr = safe_eval(f, trial);

    if (fr < s.front().f) {
      affine(-reflect * expand, trial2);
      const double fe = safe_eval(f, trial2);
      if (fe < fr) {
        s.back() = {trial2, fe};
      } else {
        s.back() = {trial, fr};
      }
    } else if (fr < s[n - 1].f) {
      s.back() = {trial, fr};
    } else {
      const bool outside = fr < s.back().f;
      affine(outside ? reflect * contract : -contract, trial2);
      const double fc = safe_eval(f, trial2);
      if (fc < (outside ? fr : s.back().f)) {
        s.back() = {trial2, fc};
      } else {
        for (std::size_t v = 1; v <= n; ++v) {
          for (std::size_t i = 0; i < n; ++i)
            s[v].x[i] = s.front().x[i] + shrink * (s[v].x[i] - s.front().x[i]);
          s[v].f = safe_eval(f, s[v].x);
        }
      }
    }
    std::stable_sort(s.begin(), s.end(), by_value);
  }
  return s.front();
}

}  // namespace

OptimResult minimize_from_simplex(const Objective& f, std::vector<std::vector<double>> simplex,
                                  const OptimizerConfig& config) {
  config.validate();
  if (simplex.empty() || simplex.size() != simplex.front().size() + 1) {
    throw DomainError("minimize: simplex must have dim + 1 vertices");
  }
  if (!std::isfinite(f(simplex.front()))) {
    throw DomainError("minimize: objective is not finite at the first vertex");
  }

  int iterations = 0;
  bool converged = false;
  Vertex best = run_simplex(f, std::move(simplex), config, iterations, converged);

  for (int restart = 0; converged && restart < kMaxRestarts; ++restart) {
    bool again = false;
    Vertex next = run_simplex(f, axis_simplex(best.x, config.simplex_scale), config,
                              iterations, again);
    const double gain = best.f - next.f;
    if (next.f < best.f) best = std::move(next);
    converged = again;
    if (gain <= config.function_tolerance * (1.0 + std::abs(best.f))) break;
  }

  return {std::move(best.x), best.f, converged, iterations};
}

OptimResult minimize(const Objective& f, std::span<const double> x0,
                     const OptimizerConfig& config) {
  config.validate();
  if (x0.empty()) throw DomainError("minimize: empty starting point");
  if (!std::isfinite(f(x0))) {
    throw DomainError("minimize: objective is not finite at the starting point");
  }
  return minimize_from_simplex(f, axis_simplex(x0, config.simplex_scale), config);
}

}  // namespace copoun
