#include "copoun_cli/app.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "copoun/diagnostics.hpp"
#include "copoun/error.hpp"
#include "copoun/mle.hpp"
#include "copoun/models.hpp"
#include "copoun/pcd.hpp"
#include "copoun/regression.hpp"
#include "copoun/version.hpp"
#include "copoun_cli/io.hpp"
#include "json.hpp"

namespace copoun::cli {

namespace {

using Json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

std::string fixed(double v, int precision) {
  if (!std::isfinite(v)) return "NA";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

std::string pad(const std::string& s, std::size_t width, bool left = false) {
  if (s.size() >= width) return s;
  return left ? s + std::string(width - s.size(), ' ') : std::string(width - s.size(), ' ') + s;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string join_args(const std::vector<std::string>& args) {
  std::string out = "copoun";
  for (const auto& a : args) out += " " + a;
  return out;
}

// Options shared by every subcommand.
struct Common {
  std::string output = "json";
  std::string out_path;
  std::string manifest_path;
  std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--output", c.output, "Result format")->check(CLI::IsMember({"json", "table"}));
  cmd->add_option("--out", c.out_path, "Write the result to this file instead of stdout");
  cmd->add_option("--manifest", c.manifest_path, "Run-manifest path (default <out>.manifest.json)");
  cmd->add_option("--seed", c.seed, "Random seed recorded in the manifest");
}

void emit(const Common& c, const std::string& body, std::ostream& out) {
  if (c.out_path.empty()) {
    out << body;
  } else {
    write_file(c.out_path, body);
  }
}

void emit_manifest(const Common& c, const std::vector<std::string>& args, const std::string& input_bytes,
                   std::ostream& err) {
  RunManifest m;
  m.command = join_args(args);
  if (!input_bytes.empty()) m.input_digest = sha256_hex(input_bytes);
  m.seed = c.seed;
  m.tool_version = kVersion;
  m.timestamp = utc_timestamp();
  const std::string text = manifest_json(m);
  if (!c.manifest_path.empty()) {
    write_file(c.manifest_path, text);
  } else if (!c.out_path.empty()) {
    write_file(c.out_path + ".manifest.json", text);
  } else {
    err << "manifest: " << Json::parse(text).dump() << "\n";
  }
}

Json report_json(const FitReport& r, std::string_view method) {
  Json j;
  j["model"] = r.model_name;
  j["method"] = method;
  j["n"] = r.n;
  j["converged"] = r.converged;
  j["iterations"] = r.iterations;
  j["ci_level"] = r.ci_level;
  Json params = Json::array();
  for (std::size_t i = 0; i < r.estimates.size(); ++i) {
    Json p;
    p["name"] = r.parameter_names[i];
    p["estimate"] = number(r.estimates[i]);
    p["standard_error"] = number(r.standard_errors[i]);
    p["ci_lower"] = number(r.ci_lower.empty() ? NAN : r.ci_lower[i]);
    p["ci_upper"] = number(r.ci_upper.empty() ? NAN : r.ci_upper[i]);
    params.push_back(p);
  }
  j["parameters"] = params;
  j["log_likelihood"] = number(r.log_likelihood);
  j["negative_log_likelihood"] = number(-r.log_likelihood);
  j["aic"] = number(r.aic);
  j["bic"] = number(r.bic);
  Json derived = Json::object();
  for (const auto& [k, v] : r.derived) derived[k] = number(v);
  j["derived"] = derived;
  j["notes"] = r.notes;
  return j;
}

Json gof_json(const GofResult& g) {
  Json j;
  j["chi_sq"] = number(g.chi_sq);
  j["df"] = g.df;
  j["p_value"] = number(g.p_value);
  Json bins = Json::array();
  for (const auto& b : g.bins) {
    Json x;
    x["first"] = b.first;
    x["last"] = b.last;
    x["open_ended"] = b.open_ended;
    x["observed"] = b.observed;
    x["expected"] = number(b.expected);
    bins.push_back(x);
  }
  j["bins"] = bins;
  return j;
}

std::string report_table(const FitReport& r, std::string_view method) {
  std::ostringstream s;
  s << "model: " << r.model_name << " (" << method << ")  n = " << r.n
    << "  converged: " << (r.converged ? "yes" : "no") << "\n";
  s << pad("parameter", 12, true) << pad("estimate", 14) << pad("std.error", 14) << pad("lower", 14)
    << pad("upper", 14) << "\n";
  for (std::size_t i = 0; i < r.estimates.size(); ++i) {
    s << pad(r.parameter_names[i], 12, true) << pad(fixed(r.estimates[i], 6), 14)
      << pad(fixed(r.standard_errors[i], 6), 14)
      << pad(fixed(r.ci_lower.empty() ? NAN : r.ci_lower[i], 6), 14)
      << pad(fixed(r.ci_upper.empty() ? NAN : r.ci_upper[i], 6), 14) << "\n";
  }
  s << "-loglik " << fixed(-r.log_likelihood, 4) << "  AIC " << fixed(r.aic, 4) << "  BIC "
    << fixed(r.bic, 4) << "\n";
  for (const auto& [k, v] : r.derived) s << k << " = " << fixed(v, 6) << "\n";
  for (const auto& note : r.notes) s << "note: " << note << "\n";
  return s.str();
}

// ---- fit -------------------------------------------------------------------

struct FitOptions {
  Common common;
  std::string model;
  std::string input;
  std::string method = "mle";
  std::string format = "auto";
  double ci_level = 0.95;
  double min_expected = 5.0;
  std::optional<int> df_override;
  int max_iterations = OptimizerConfig{}.max_iterations;
};

int cmd_fit(const FitOptions& o, const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  const ModelKind kind = parse_model_kind(o.model);
  const FitMethod method = o.method == "mom" ? FitMethod::mom : FitMethod::mle;
  const std::string bytes = read_file(o.input);
  const FrequencyTable table = parse_counts(bytes, parse_count_format(o.format));
  OptimizerConfig cfg;
  cfg.max_iterations = o.max_iterations;
  const FitReport report = fit_model(kind, table, method, cfg, o.ci_level);
  const CountPmf pmf = model_pmf(kind, report);

  std::optional<GofResult> gof;
  std::string gof_error;
  try {
    gof = chi_square_gof(table, pmf, report.parameter_count(), o.min_expected, o.df_override);
  } catch (const DomainError& e) {
    gof_error = e.what();
  }

  std::string body;
  if (o.common.output == "json") {
    Json j = report_json(report, o.method);
    Json freq = Json::array();
    const double n = static_cast<double>(table.n());
    for (std::int64_t v = 0; v <= table.max_value(); ++v) {
      Json row;
      row["value"] = v;
      row["observed"] = table.count_of(v);
      row["expected"] = number(n * pmf(v));
      freq.push_back(row);
    }
    j["expected_frequencies"] = freq;
    j["goodness_of_fit"] = gof ? gof_json(*gof) : Json(nullptr);
    if (!gof) j["notes"].push_back("goodness of fit unavailable: " + gof_error);
    body = j.dump(2) + "\n";
  } else {
    body = report_table(report, o.method);
    if (gof) {
      body += "chi-square " + fixed(gof->chi_sq, 4) + "  df " + std::to_string(gof->df) + "  p " +
              fixed(gof->p_value, 4) + "\n";
    } else {
      body += "goodness of fit unavailable: " + gof_error + "\n";
    }
  }
  emit(o.common, body, out);
  emit_manifest(o.common, args, bytes, err);
  return report.converged ? kExitSuccess : kExitNonConvergence;
}

// ---- compare ---------------------------------------------------------------

struct CompareOptions {
  Common common;
  std::string models;
  std::string input;
  std::string format = "auto";
  double ci_level = 0.95;
  double min_expected = 5.0;
  std::optional<int> df_override;
};

int cmd_compare(const CompareOptions& o, const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
  const auto names = split_list(o.models);
  if (names.size() < 2) throw UsageError("compare needs at least two comma-separated models");
  std::vector<ModelKind> kinds;
  for (const auto& name : names) kinds.push_back(parse_model_kind(name));

  const std::string bytes = read_file(o.input);
  const FrequencyTable table = parse_counts(bytes, parse_count_format(o.format));

  std::vector<ModelCandidate> candidates;
  bool all_converged = true;
  for (ModelKind k : kinds) {
    FitReport r = fit_model(k, table, FitMethod::mle, {}, o.ci_level);
    all_converged = all_converged && r.converged;
    CountPmf pmf = model_pmf(k, r);
    candidates.push_back({std::move(r), std::move(pmf)});
  }
  const ComparisonTable cmp = compare_models(candidates, table, o.min_expected, o.df_override);

  std::string body;
  if (o.common.output == "json") {
    Json j;
    j["n"] = table.n();
    j["min_expected"] = o.min_expected;
    j["df_override"] = o.df_override ? Json(*o.df_override) : Json(nullptr);
    Json rows = Json::array();
    for (const auto& r : cmp.rows) {
      Json x;
      x["model"] = r.model;
      x["negative_log_likelihood"] = number(r.negative_log_likelihood);
      x["aic"] = number(r.aic);
      x["bic"] = number(r.bic);
      x["chi_sq"] = number(r.gof.chi_sq);
      x["df"] = r.gof.df;
      x["p_value"] = number(r.gof.p_value);
      x["cells"] = r.gof.bins.size();
      x["best"] = r.best;
      rows.push_back(x);
    }
    j["rows"] = rows;
    j["best_model"] = cmp.best_model;
    Json fits = Json::array();
    for (const auto& c : candidates) fits.push_back(report_json(c.report, "mle"));
    j["fits"] = fits;
    body = j.dump(2) + "\n";
  } else {
    std::ostringstream s;
    s << pad("model", 12, true) << pad("-loglik", 12) << pad("AIC", 12) << pad("BIC", 12)
      << pad("chi-sq", 12) << pad("df", 5) << pad("p-value", 12) << "\n";
    for (const auto& r : cmp.rows) {
      s << pad(r.model + (r.best ? " *" : ""), 12, true) << pad(fixed(r.negative_log_likelihood, 4), 12)
        << pad(fixed(r.aic, 4), 12) << pad(fixed(r.bic, 4), 12) << pad(fixed(r.gof.chi_sq, 4), 12)
        << pad(std::to_string(r.gof.df), 5) << pad(fixed(r.gof.p_value, 4), 12) << "\n";
    }
    s << "best by AIC: " << cmp.best_model << "\n";
    body = s.str();
  }
  emit(o.common, body, out);
  emit_manifest(o.common, args, bytes, err);
  return all_converged ? kExitSuccess : kExitNonConvergence;
}

// ---- regress ---------------------------------------------------------------

struct RegressOptions {
  Common common;
  std::string input;
  std::string response;
  std::string covariates;
  std::string model = "pcd";
  bool diagnostics = false;
  std::string diagnostics_prefix;
  int profile_points = 21;
  double ci_level = 0.95;
};

RegressionModel parse_regression_model(const std::string& s) {
  if (s == "pcd") return RegressionModel::pcd;
  if (s == "poisson") return RegressionModel::poisson;
  if (s == "nb") return RegressionModel::negative_binomial;
  throw DomainError("unknown regression model '" + s + "' (expected pcd, poisson or nb)");
}

std::string diagnostics_prefix(const RegressOptions& o) {
  if (!o.diagnostics_prefix.empty()) return o.diagnostics_prefix;
  if (!o.common.out_path.empty()) {
    std::filesystem::path p(o.common.out_path);
    return (p.parent_path() / p.stem()).string();
  }
  return "regress";
}

int cmd_regress(const RegressOptions& o, const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
  const RegressionModel model = parse_regression_model(o.model);
  const std::string bytes = read_file(o.input);
  const CsvTable csv = parse_csv_table(bytes);

  const auto& y_raw = csv.column(o.response);
  std::vector<std::int64_t> y;
  y.reserve(y_raw.size());
  for (std::size_t i = 0; i < y_raw.size(); ++i) {
    const double v = y_raw[i];
    if (!(v >= 0.0) || v != std::floor(v) || v > 9.0e15) {
      throw ParseError("response '" + o.response + "' must be a nonnegative integer", i + 2);
    }
    y.push_back(static_cast<std::int64_t>(v));
  }
  const auto covariate_names = split_list(o.covariates);
  std::vector<std::vector<double>> covariates;
  for (const auto& name : covariate_names) covariates.push_back(csv.column(name));
  const RegressionData data = make_regression_data(std::move(y), covariates, covariate_names);

  const RegressionFit fit = regression_fit(model, data);
  const double z = wald_critical_value(o.ci_level);

  std::optional<RqrResult> rqr;
  std::string prefix;
  if (o.diagnostics) {
    Rng rng(o.common.seed);
    rqr = randomized_quantile_residuals(
        [&](std::size_t i, std::int64_t v) { return fitted_cdf(model, fit, i, v); }, data.response, rng);
    prefix = diagnostics_prefix(o);

    std::string rq = "index,y,fitted_mean,residual\n";
    for (std::size_t i = 0; i < rqr->residuals.size(); ++i) {
      rq += std::to_string(i) + "," + std::to_string(data.response[i]) + "," +
            format_double(fit.fitted_means[i]) + "," + format_double(rqr->residuals[i]) + "\n";
    }
    write_file(prefix + "_rqr.csv", rq);

    std::string qq = "theoretical,sample\n";
    for (const auto& [t, s] : qq_points(rqr->residuals)) qq += format_double(t) + "," + format_double(s) + "\n";
    write_file(prefix + "_qq.csv", qq);

    std::string prof = "parameter,value,profile_log_likelihood\n";
    for (const auto& p : profile_log_likelihood(model, data, fit, o.profile_points)) {
      prof += p.parameter + "," + format_double(p.value) + "," + format_double(p.profile_log_likelihood) + "\n";
    }
    write_file(prefix + "_profile.csv", prof);
  }

  std::string body;
  if (o.common.output == "json") {
    Json j;
    j["model"] = fit.model_name;
    j["n"] = fit.n;
    j["converged"] = fit.converged;
    j["iterations"] = fit.iterations;
    j["ci_level"] = o.ci_level;
    Json coefs = Json::array();
    for (std::size_t k = 0; k < fit.coefficients.size(); ++k) {
      Json c;
      c["name"] = fit.coefficient_names[k];
      c["estimate"] = number(fit.coefficients[k]);
      c["standard_error"] = number(fit.standard_errors[k]);
      c["z_value"] = number(fit.z_values[k]);
      c["p_value"] = number(fit.p_values[k]);
      c["ci_lower"] = number(fit.coefficients[k] - z * fit.standard_errors[k]);
      c["ci_upper"] = number(fit.coefficients[k] + z * fit.standard_errors[k]);
      coefs.push_back(c);
    }
    j["coefficients"] = coefs;
    if (fit.dispersion_name.empty()) {
      j["dispersion"] = nullptr;
    } else {
      Json d;
      d["name"] = fit.dispersion_name;
      d["estimate"] = number(fit.dispersion);
      d["standard_error"] = number(fit.dispersion_se);
      j["dispersion"] = d;
    }
    j["log_likelihood"] = number(fit.log_likelihood);
    j["aic"] = number(fit.aic);
    j["bic"] = number(fit.bic);
    j["parameter_count"] = fit.parameter_count;
    if (rqr) {
      Json d;
      d["seed"] = rqr->seed;
      d["shapiro_w"] = number(rqr->shapiro_w);
      d["shapiro_p"] = number(rqr->shapiro_p);
      d["residuals_csv"] = prefix + "_rqr.csv";
      d["qq_csv"] = prefix + "_qq.csv";
      d["profile_csv"] = prefix + "_profile.csv";
      j["diagnostics"] = d;
    } else {
      j["diagnostics"] = nullptr;
    }
    j["notes"] = fit.notes;
    body = j.dump(2) + "\n";
  } else {
    std::ostringstream s;
    s << "model: " << fit.model_name << "  n = " << fit.n << "  converged: " << (fit.converged ? "yes" : "no")
      << "\n";
    s << pad("term", 14, true) << pad("Est", 12) << pad("SE", 12) << pad("z-value", 12) << pad("p-value", 12)
      << "\n";
    for (std::size_t k = 0; k < fit.coefficients.size(); ++k) {
      s << pad(fit.coefficient_names[k], 14, true) << pad(fixed(fit.coefficients[k], 5), 12)
        << pad(fixed(fit.standard_errors[k], 5), 12) << pad(fixed(fit.z_values[k], 3), 12)
        << pad(fixed(fit.p_values[k], 4), 12) << "\n";
    }
    if (!fit.dispersion_name.empty()) {
      s << pad(fit.dispersion_name, 14, true) << pad(fixed(fit.dispersion, 5), 12)
        << pad(fixed(fit.dispersion_se, 5), 12) << "\n";
    }
    s << "loglik " << fixed(fit.log_likelihood, 4) << "  AIC " << fixed(fit.aic, 4) << "  BIC "
      << fixed(fit.bic, 4) << "\n";
    if (rqr) {
      s << "Shapiro-Wilk on randomized quantile residuals: W = " << fixed(rqr->shapiro_w, 5)
        << "  p = " << fixed(rqr->shapiro_p, 4) << "  (seed " << rqr->seed << ")\n";
    }
    for (const auto& note : fit.notes) s << "note: " << note << "\n";
    body = s.str();
  }
  emit(o.common, body, out);
  emit_manifest(o.common, args, bytes, err);
  return fit.converged ? kExitSuccess : kExitNonConvergence;
}

// ---- simulate --------------------------------------------------------------

struct SimulateOptions {
  Common common;
  std::string model;
  std::map<std::string, double> params;
  std::vector<double> beta;
  std::size_t n = 0;
};

std::string simulate_regression(const SimulateOptions& o) {
  if (o.beta.empty()) throw DomainError("pcd-regression requires --beta");
  const auto it = o.params.find("phi");
  if (it == o.params.end()) throw DomainError("pcd-regression requires --phi");
  for (const auto& [k, v] : o.params)
    if (k != "phi") throw DomainError("unknown parameter '" + k + "' for model pcd-regression");
  const double phi = it->second;
  if (!(phi > 0.0)) throw DomainError("pcd-regression requires phi > 0");

  Rng rng(o.common.seed);
  const std::size_t k = o.beta.size() - 1;
  std::string csv = "y";
  for (std::size_t j = 1; j <= k; ++j) csv += ",x" + std::to_string(j);
  csv += "\n";
  std::vector<double> x(k);
  for (std::size_t i = 0; i < o.n; ++i) {
    // Odd-numbered covariates are standard normal, even-numbered uniform on (0, 1).
    double lp = o.beta[0];
    for (std::size_t j = 0; j < k; ++j) {
      x[j] = j % 2 == 0 ? rng.normal() : rng.uniform();
      lp += o.beta[j + 1] * x[j];
    }
    const std::int64_t y = pcd_draw(to_natural(MeanParams(std::exp(lp), phi)), rng);
    csv += std::to_string(y);
    for (double v : x) csv += "," + format_double(v);
    csv += "\n";
  }
  return csv;
}

int cmd_simulate(const SimulateOptions& o, const std::vector<std::string>& args, std::ostream& out,
                 std::ostream& err) {
  if (o.n == 0) throw DomainError("simulate requires -n >= 1");
  std::string body;
  if (o.model == "pcd-regression") {
    body = simulate_regression(o);
  } else {
    if (!o.beta.empty()) throw DomainError("--beta only applies to pcd-regression");
    Rng rng(o.common.seed);
    body = format_raw_counts(simulate_counts(parse_model_kind(o.model), o.params, o.n, rng));
  }
  emit(o.common, body, out);
  emit_manifest(o.common, args, {}, err);
  return kExitSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Poisson-Copoun count modeling toolkit", "copoun"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  FitOptions fit;
  auto* fit_cmd = app.add_subcommand("fit", "Fit one count model to a data file");
  fit_cmd->add_option("model", fit.model, "pcd, thipcd, thipd, poisson, geometric, nb or zip")->required();
  fit_cmd->add_option("input", fit.input, "Raw counts or value,count CSV")->required();
  fit_cmd->add_option("--method", fit.method, "Estimation method")->check(CLI::IsMember({"mle", "mom"}));
  fit_cmd->add_option("--format", fit.format, "Input format")->check(CLI::IsMember({"auto", "raw", "freq"}));
  fit_cmd->add_option("--ci-level", fit.ci_level, "Wald interval level")->check(CLI::Range(0.5, 0.9999));
  fit_cmd->add_option("--min-expected", fit.min_expected, "Minimum expected count per chi-square cell");
  fit_cmd->add_option("--df-override", fit.df_override, "Chi-square degrees of freedom");
  fit_cmd->add_option("--max-iterations", fit.max_iterations, "Simplex iteration budget per start")
      ->check(CLI::PositiveNumber);
  add_common(fit_cmd, fit.common);

  CompareOptions cmp;
  auto* cmp_cmd = app.add_subcommand("compare", "Fit several models and rank them by AIC");
  cmp_cmd->add_option("models", cmp.models, "Comma-separated model list")->required();
  cmp_cmd->add_option("input", cmp.input, "Raw counts or value,count CSV")->required();
  cmp_cmd->add_option("--format", cmp.format, "Input format")->check(CLI::IsMember({"auto", "raw", "freq"}));
  cmp_cmd->add_option("--ci-level", cmp.ci_level, "Wald interval level")->check(CLI::Range(0.5, 0.9999));
  cmp_cmd->add_option("--min-expected", cmp.min_expected, "Minimum expected count per chi-square cell");
  cmp_cmd->add_option("--df-override", cmp.df_override, "Chi-square degrees of freedom");
  add_common(cmp_cmd, cmp.common);

  RegressOptions reg;
  reg.common.seed = 1;
  auto* reg_cmd = app.add_subcommand("regress", "Log-link count regression from a CSV file");
  reg_cmd->add_option("input", reg.input, "CSV with a header row")->required();
  reg_cmd->add_option("--response", reg.response, "Response column")->required();
  reg_cmd->add_option("--covariates", reg.covariates, "Comma-separated covariate columns");
  reg_cmd->add_option("--model", reg.model, "Regression model")->check(CLI::IsMember({"pcd", "poisson", "nb"}));
  reg_cmd->add_flag("--diagnostics", reg.diagnostics,
                    "Write randomized quantile residuals, Q-Q pairs and profile traces");
  reg_cmd->add_option("--diagnostics-prefix", reg.diagnostics_prefix, "Path prefix for diagnostic CSVs");
  reg_cmd->add_option("--profile-points", reg.profile_points, "Grid size per profiled parameter")
      ->check(CLI::Range(2, 1000));
  reg_cmd->add_option("--ci-level", reg.ci_level, "Wald interval level")->check(CLI::Range(0.5, 0.9999));
  add_common(reg_cmd, reg.common);

  SimulateOptions sim;
  sim.common.seed = 1;
  auto* sim_cmd = app.add_subcommand("simulate", "Draw a reproducible sample");
  sim_cmd->add_option("model", sim.model,
                      "pcd, thipcd, thipd, poisson, geometric, nb, zip or pcd-regression")
      ->required();
  sim_cmd->add_option("-n,--n", sim.n, "Sample size")->required();
  for (const char* name : {"eta", "phi", "alpha", "lambda", "p", "mu", "size"}) {
    const std::string key = name;
    sim_cmd->add_option_function<double>(
        "--" + key, [&sim, key](double v) { sim.params[key] = v; }, "Model parameter " + key);
  }
  sim_cmd->add_option("--beta", sim.beta, "Regression coefficients, intercept first")->delimiter(',');
  add_common(sim_cmd, sim.common);

  std::vector<std::string> argv_storage{"copoun"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitSuccess : kExitInputError;
  }

  try {
    if (*fit_cmd) {
      if (fit.method == "mom" && fit.model != "pcd") throw UsageError("--method mom is only valid for pcd");
      return cmd_fit(fit, args, out, err);
    }
    if (*cmp_cmd) return cmd_compare(cmp, args, out, err);
    if (*reg_cmd) return cmd_regress(reg, args, out, err);
    if (*sim_cmd) return cmd_simulate(sim, args, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace copoun::cli
