#pragma once

#include <cmath>
#include <vector>

#include "copoun/pcd.hpp"
#include "copoun/random.hpp"
#include "copoun/regression.hpp"

namespace testdata {

enum class Response { pcd, poisson, nb };

/// x1 ~ N(0, 1), x2 ~ U(0, 1); y drawn at mean exp(b0 + b1 x1 + b2 x2).
/// `dispersion` is phi for PCD and size for NB.
inline copoun::RegressionData simulate(std::vector<double> beta, double dispersion, std::size_t n,
                                       copoun::Rng& rng, Response kind = Response::pcd) {
  std::vector<std::int64_t> y(n);
  std::vector<std::vector<double>> x(beta.size() - 1, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    double lp = beta[0];
    for (std::size_t j = 0; j + 1 < beta.size(); ++j) {
      x[j][i] = j % 2 == 0 ? rng.normal() : rng.uniform();
      lp += beta[j + 1] * x[j][i];
    }
    const double mu = std::exp(lp);
    switch (kind) {
      case Response::pcd:
        y[i] = copoun::pcd_draw(copoun::to_natural(copoun::MeanParams(mu, dispersion)), rng);
        break;
      case Response::poisson:
        y[i] = static_cast<std::int64_t>(rng.poisson(mu));
        break;
      case Response::nb:
        y[i] = static_cast<std::int64_t>(rng.poisson(rng.gamma(dispersion, dispersion / mu)));
        break;
    }
  }
  std::vector<std::string> names;
  for (std::size_t j = 1; j < beta.size(); ++j) names.push_back("x" + std::to_string(j));
  return copoun::make_regression_data(std::move(y), x, names);
}

}  // namespace testdata
