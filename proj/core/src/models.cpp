#include "copoun/models.hpp"

#include <algorithm>
#include <cmath>

#include "copoun/baselines.hpp"
#include "copoun/error.hpp"
#include "copoun/estimation.hpp"
#include "copoun/inflated.hpp"
#include "copoun/pcd.hpp"

namespace copoun {

namespace {

constexpr ModelKind kAllKinds[] = {ModelKind::pcd,     ModelKind::thipcd,    ModelKind::thipd,
                                   ModelKind::poisson, ModelKind::geometric, ModelKind::nb,
                                   ModelKind::zip};

BaselineFamily family_of(ModelKind kind) {
  switch (kind) {
    case ModelKind::poisson:
      return BaselineFamily::poisson;
    case ModelKind::geometric:
      return BaselineFamily::geometric;
    case ModelKind::nb:
      return BaselineFamily::negative_binomial;
    case ModelKind::zip:
      return BaselineFamily::zip;
    default:
      throw DomainError("not a baseline model: " + std::string(model_kind_name(kind)));
  }
}

std::vector<double> ordered_params(ModelKind kind, const std::map<std::string, double>& params) {
  const auto names = model_parameter_names(kind);
  for (const auto& [key, value] : params) {
    if (std::find(names.begin(), names.end(), key) == names.end()) {
      throw DomainError("unknown parameter '" + key + "' for model " + std::string(model_kind_name(kind)));
    }
  }
  std::vector<double> out;
  for (const auto& name : names) {
    const auto it = params.find(name);
    if (it == params.end()) {
      throw DomainError("missing parameter '" + name + "' for model " + std::string(model_kind_name(kind)));
    }
    out.push_back(it->second);
  }
  return out;
}

}  // namespace

ModelKind parse_model_kind(std::string_view name) {
  for (ModelKind k : kAllKinds)
    if (model_kind_name(k) == name) return k;
  throw DomainError("unknown model '" + std::string(name) +
                    "' (expected pcd, thipcd, thipd, poisson, geometric, nb or zip)");
}

std::string_view model_kind_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::pcd:
      return "pcd";
    case ModelKind::thipcd:
      return "thipcd";
    case ModelKind::thipd:
      return "thipd";
    case ModelKind::poisson:
      return "poisson";
    case ModelKind::geometric:
      return "geometric";
    case ModelKind::nb:
      return "nb";
    case ModelKind::zip:
      return "zip";
  }
  return "unknown";
}

std::vector<std::string> model_parameter_names(ModelKind kind) {
  switch (kind) {
    case ModelKind::pcd:
      return {"eta", "phi"};
    case ModelKind::thipcd:
      return {"eta", "phi", "alpha"};
    case ModelKind::thipd:
      return {"lambda", "alpha"};
    case ModelKind::poisson:
      return {"lambda"};
    case ModelKind::geometric:
      return {"p"};
    case ModelKind::nb:
      return {"mu", "size"};
    case ModelKind::zip:
      return {"lambda", "alpha"};
  }
  return {};
}

FitReport fit_model(ModelKind kind, const FrequencyTable& table, FitMethod method,
                    const OptimizerConfig& config, double ci_level) {
  if (method == FitMethod::mom) {
    if (kind != ModelKind::pcd) throw DomainError("method of moments is only available for pcd");
    return mom_report(table, ci_level);
  }
  switch (kind) {
    case ModelKind::pcd:
      return mle_fit(table, config, ci_level);
    case ModelKind::thipcd:
      return thipcd_mle(table, config, ci_level);
    case ModelKind::thipd:
      return thipd_mle(table, config, ci_level);
    default:
      return baseline_mle(family_of(kind), table, config, ci_level);
  }
}

CountPmf model_pmf(ModelKind kind, const FitReport& report) {
  const std::vector<double> q = report.estimates;
  switch (kind) {
    case ModelKind::pcd: {
      const PcdParams p(q.at(0), q.at(1));
      return [p](std::int64_t y) { return pcd_pmf(p, y); };
    }
    case ModelKind::thipcd: {
      const InflatedParams p(q.at(0), q.at(1), q.at(2));
      return [p](std::int64_t y) { return thipcd_pmf(p, y); };
    }
    case ModelKind::thipd: {
      const double lambda = q.at(0);
      const double alpha = q.at(1);
      return [lambda, alpha](std::int64_t y) { return std::exp(thipd_log_pmf(lambda, alpha, y)); };
    }
    default: {
      const BaselineSpec spec = spec_from_report(family_of(kind), report);
      return [spec](std::int64_t y) { return std::exp(baseline_log_pmf(spec, y)); };
    }
  }
}

std::vector<std::int64_t> simulate_counts(ModelKind kind, const std::map<std::string, double>& params,
                                          std::size_t n, Rng& rng) {
  const std::vector<double> q = ordered_params(kind, params);
  std::vector<std::int64_t> out;
  switch (kind) {
    case ModelKind::pcd:
      return pcd_sample(PcdParams(q[0], q[1]), rng, n);
    case ModelKind::thipcd:
      return thipcd_sample(InflatedParams(q[0], q[1], q[2]), rng, n);
    case ModelKind::thipd: {
      if (!(q[0] > 0.0) || !(q[1] >= 0.0 && q[1] < 1.0)) {
        throw DomainError("thipd requires lambda > 0 and 0 <= alpha < 1");
      }
      out.reserve(n);
      for (std::size_t i = 0; i < n; ++i) {
        if (q[1] > 0.0 && rng.bernoulli(q[1])) {
          out.push_back(3);
        } else {
          out.push_back(static_cast<std::int64_t>(rng.poisson(q[0])));
        }
      }
      return out;
    }
    default:
      break;
  }

  const BaselineSpec spec{family_of(kind), q};
  spec.validate();
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    double rate = 0.0;
    switch (kind) {
      case ModelKind::poisson:
        rate = q[0];
        break;
      case ModelKind::geometric:
        rate = rng.exponential(q[0] / (1.0 - q[0]));
        break;
      case ModelKind::nb:
        rate = rng.gamma(q[1], q[1] / q[0]);
        break;
      case ModelKind::zip:
        if (rng.bernoulli(q[1])) {
          out.push_back(0);
          continue;
        }
        rate = q[0];
        break;
      default:
        break;
    }
    out.push_back(static_cast<std::int64_t>(rng.poisson(rate)));
  }
  return out;
}

}  // namespace copoun
