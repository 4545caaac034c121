#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "vgp/bootstrap.hpp"
#include "vgp/csv.hpp"
#include "vgp/errors.hpp"
#include "vgp/evalbench.hpp"
#include "vgp/fit.hpp"
#include "vgp/manifest.hpp"
#include "vgp/matern.hpp"
#include "vgp/predict.hpp"
#include "vgp/rng.hpp"
#include "vgp/run_config.hpp"
#include "vgp/simulate.hpp"
#include "vgp/variogram.hpp"
#include "vgp/version.hpp"

namespace {

using namespace vgp;

// keeps the site pattern and the field draw on unrelated streams even
// though both come from the one user-facing seed
constexpr std::uint64_t kResponseSeedSalt = 0x9e3779b97f4a7c15ull;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// config plumbing: every flag records a RunConfig override applied on top
// of the optional --config file

struct ConfigCapture {
  std::string config_path;
  std::vector<std::pair<std::string, std::string>> overrides;
};

void add_key_option(CLI::App* sub, ConfigCapture& cap, const std::string& flag,
                    const std::string& key, const std::string& help) {
  sub->add_option_function<std::string>(
      flag, [&cap, key](const std::string& v) { cap.overrides.emplace_back(key, v); }, help);
}

void add_key_flag(CLI::App* sub, ConfigCapture& cap, const std::string& flag,
                  const std::string& key, const std::string& help) {
  sub->add_flag_function(
      flag,
      [&cap, key](std::int64_t count) {
        if (count > 0) cap.overrides.emplace_back(key, "true");
      },
      help);
}

RunConfig load_config(const ConfigCapture& cap) {
  RunConfig config;
  if (!cap.config_path.empty()) config = RunConfig::parse_file(cap.config_path);
  for (const auto& [key, value] : cap.overrides) config.set(key, value);
  return config;
}

// ---------------------------------------------------------------------------
// shared validation and small parsers

TrendKind mean_kind_from_config(const std::string& name) {
  if (name == "zero") return TrendKind::none;
  if (name == "constant") return TrendKind::constant;
  if (name == "linear") return TrendKind::linear;
  throw InputError("unknown mean_kind '" + name + "'; expected zero, constant, or linear");
}

std::string mean_kind_to_config(TrendKind kind) {
  return kind == TrendKind::none ? "zero" : to_string(kind);
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("alpha must lie in (0, 1)");
}

std::vector<int> checked_m_seq(const RunConfig& config, std::vector<int> fallback) {
  const std::vector<int> m_seq = config.get_int_list("m_seq", std::move(fallback));
  if (m_seq.empty()) throw InputError("m_seq must be nonempty");
  for (std::size_t i = 0; i < m_seq.size(); ++i) {
    if (m_seq[i] < 1) throw InputError("m_seq entries must be at least 1");
    if (i > 0 && m_seq[i] <= m_seq[i - 1])
      throw InputError("m_seq must be strictly increasing");
  }
  return m_seq;
}

double checked_variance(const std::vector<double>& values) {
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= values.size();
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  var /= values.size();
  if (!(var > 0.0)) throw InputError("value column has zero variance");
  return var;
}

// flat key = value files written by `fit`; unknown keys are fine here
std::map<std::string, std::string> read_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open fit report '" + path + "'");
  std::map<std::string, std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t");
      const auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    if (!key.empty()) out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

double report_number(const std::map<std::string, std::string>& report, const std::string& key) {
  const auto it = report.find(key);
  if (it == report.end()) throw InputError("fit report is missing key '" + key + "'");
  try {
    std::size_t used = 0;
    const double v = std::stod(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::exception&) {
    throw InputError("fit report key '" + key + "': cannot parse '" + it->second + "'");
  }
}

bool report_flag(const std::map<std::string, std::string>& report, const std::string& key) {
  const auto it = report.find(key);
  return it != report.end() && it->second == "true";
}

MaternParams params_from_report(const std::map<std::string, std::string>& report) {
  MaternParams p;
  p.sigma2 = report_number(report, "sigma2");
  p.range = report_number(report, "range");
  p.smoothness = report_number(report, "smoothness");
  p.nugget = report_number(report, "nugget");
  return p;
}

// trend recorded by `fit`: either the detrend surface or the profiled
// mean coefficients
TrendFit trend_from_report(const std::map<std::string, std::string>& report) {
  TrendFit trend;
  if (report_flag(report, "detrend")) {
    trend.kind = TrendKind::linear;
    trend.coef = {report_number(report, "trend_0"), report_number(report, "trend_1"),
                  report_number(report, "trend_2")};
    return trend;
  }
  const auto it = report.find("mean_kind");
  const TrendKind kind =
      it == report.end() ? TrendKind::none : mean_kind_from_config(it->second);
  trend.kind = kind;
  const std::size_t ncoef = kind == TrendKind::none ? 0 : (kind == TrendKind::constant ? 1 : 3);
  for (std::size_t j = 0; j < ncoef; ++j)
    trend.coef.push_back(report_number(report, "beta_" + std::to_string(j)));
  return trend;
}

void warn_on_digest_mismatch(const std::map<std::string, std::string>& report,
                             const std::string& dataset_path) {
  const auto it = report.find("dataset_digest");
  if (it == report.end()) return;
  const std::string actual = std::to_string(file_digest(dataset_path));
  if (it->second != actual)
    std::cerr << "warning: '" << dataset_path
              << "' does not match the dataset the fit report was built from (digest "
              << actual << ", report says " << it->second << ")\n";
}

Manifest base_manifest(const std::string& command, const RunConfig& config) {
  Manifest m;
  m.add("tool", std::string("vgp"));
  m.add("version", std::string(kVersion));
  m.add("command", command);
  m.add("config_hash", config.content_hash());
  return m;
}

// ---------------------------------------------------------------------------
// simulate

int run_simulate(const ConfigCapture& cap) {
  const RunConfig config = load_config(cap);

  const int n = config.get_int("n", 1000);
  if (n < 1) throw InputError("n must be at least 1");
  const double split = config.get_double("split", 0.9);
  if (!(split >= 0.0 && split <= 1.0)) throw InputError("split must lie in [0, 1]");
  const std::uint64_t seed = config.get_uint64("seed", 0);

  PatternSpec spec;
  spec.kind = pattern_kind_from_string(config.get_string("pattern", "homogeneous"));
  spec.n = static_cast<std::size_t>(n);
  spec.seed = seed;
  spec.subregion_fraction = config.get_double("subregion_fraction", spec.subregion_fraction);
  spec.stripe_count = config.get_int("stripe_count", spec.stripe_count);
  spec.stripe_width = config.get_double("stripe_width", spec.stripe_width);
  spec.cluster_count = config.get_int("cluster_count", spec.cluster_count);
  spec.cluster_radius = config.get_double("cluster_radius", spec.cluster_radius);
  spec.cluster_fraction = config.get_double("cluster_fraction", spec.cluster_fraction);

  MaternParams params;
  params.sigma2 = config.get_double("sigma2", 1.0);
  params.range = config.get_double("range", 0.1);
  params.smoothness = config.get_double("smoothness", 1.0);
  params.nugget = config.get_double("nugget", 0.0);
  if (!(params.sigma2 > 0.0)) throw InputError("sigma2 must be positive");
  if (!(params.range > 0.0)) throw InputError("range must be positive");
  if (!(params.smoothness > 0.0)) throw InputError("smoothness must be positive");
  if (params.nugget < 0.0) throw InputError("nugget must be nonnegative");

  const PointList points = generate_pattern(spec);
  const std::vector<double> values =
      simulate_gp(points, params, TrendFit{}, seed ^ kResponseSeedSalt);

  // points are exchangeable, so a head/tail split is already uniform
  const std::size_t n_train =
      static_cast<std::size_t>(std::llround(split * static_cast<double>(n)));
  Dataset train, test;
  for (std::size_t i = 0; i < points.size(); ++i) {
    Dataset& dst = i < n_train ? train : test;
    dst.points.push_back(points[i]);
    dst.values.push_back(values[i]);
  }

  const std::string out_train = config.get_string("out_train", "train.csv");
  const std::string out_test = config.get_string("out_test", "test.csv");
  write_dataset_csv(out_train, train);
  write_dataset_csv(out_test, test);

  Manifest manifest = base_manifest("simulate", config);
  manifest.add("seed", seed);
  manifest.add("response_seed", seed ^ kResponseSeedSalt);
  manifest.add("pattern", to_string(spec.kind));
  manifest.add("n", static_cast<std::uint64_t>(n));
  manifest.add("split", split);
  manifest.add("true_sigma2", params.sigma2);
  manifest.add("true_range", params.range);
  manifest.add("true_smoothness", params.smoothness);
  manifest.add("true_nugget", params.nugget);
  manifest.add("train_rows", static_cast<std::uint64_t>(train.size()));
  manifest.add("test_rows", static_cast<std::uint64_t>(test.size()));
  manifest.write_for(out_train);
  manifest.write_for(out_test);

  std::cout << "wrote " << out_train << " (" << train.size() << " rows) and " << out_test
            << " (" << test.size() << " rows)\n";
  return 0;
}

// ---------------------------------------------------------------------------
// fit

int run_fit(const ConfigCapture& cap, const std::string& dataset_path) {
  const RunConfig config = load_config(cap);

  Dataset data = read_dataset_csv(dataset_path);
  checked_variance(data.values);

  const std::string method = config.get_string("method", "vecchia");
  if (method != "exact" && method != "vecchia" && method != "bcl")
    throw InputError("unknown method '" + method + "'; valid methods: exact, vecchia, bcl");

  TrendKind mean_kind = mean_kind_from_config(config.get_string("mean_kind", "zero"));
  const bool detrend = config.get_bool("detrend", false);
  const std::uint64_t seed = config.get_uint64("seed", 0);

  TrendFit detrend_fit;
  if (detrend) {
    // plain least squares on 1, x, y; the model then fits the residuals
    detrend_fit = fit_trend(data.points, data.values, TrendKind::linear);
    const std::vector<double> surface = trend_values(data.points, detrend_fit);
    for (std::size_t i = 0; i < data.size(); ++i) data.values[i] -= surface[i];
    mean_kind = TrendKind::none;
  }

  FitOptions options;
  options.neighbor_stages = checked_m_seq(config, {10, 30, 60});
  options.max_iter = config.get_int("max_iter", options.max_iter);
  options.workers = config.get_int("workers", 0);
  if (options.max_iter < 1) throw InputError("max_iter must be at least 1");

  FitResult fit;
  if (method == "exact") {
    fit = fit_exact(data, mean_kind, options);
  } else if (method == "vecchia") {
    fit = fit_sequential(data, mean_kind, options).fit;
  } else {
    fit = fit_blocks(data, mean_kind, config.get_int("n_blocks", 0), seed, options);
  }

  const std::string out = config.get_string("out", "fit_report.txt");
  {
    std::ofstream report(out);
    if (!report) throw InputError("cannot open '" + out + "' for writing");
    auto put = [&report](const std::string& key, const std::string& value) {
      report << key << " = " << value << '\n';
    };
    auto put_number = [&](const std::string& key, double v) { put(key, format_double(v)); };
    put("version", kVersion);
    put("method", method);
    put("mean_kind", mean_kind_to_config(mean_kind));
    put("detrend", detrend ? "true" : "false");
    put("n", std::to_string(data.size()));
    put("dataset_digest", std::to_string(file_digest(dataset_path)));
    put("seed", std::to_string(seed));
    put_number("sigma2", fit.params.sigma2);
    put_number("range", fit.params.range);
    put_number("smoothness", fit.params.smoothness);
    put_number("nugget", fit.params.nugget);
    put_number("log_lik", fit.log_lik);
    put("converged", fit.converged ? "true" : "false");
    put("iterations", std::to_string(fit.iterations));
    put("smoothness_at_boundary", fit.smoothness_at_boundary ? "true" : "false");
    put("nugget_bumps", std::to_string(fit.nugget_bumps));
    const std::array<const char*, 4> names = {"sigma2", "range", "smoothness", "nugget"};
    const std::array<double, 4> estimates = {fit.params.sigma2, fit.params.range,
                                             fit.params.smoothness, fit.params.nugget};
    for (std::size_t j = 0; j < 4; ++j) {
      put_number(std::string("se_") + names[j], fit.se[j]);
      const WaldSummary wald = wald_test(estimates[j], fit.se[j]);
      put_number(std::string("z_") + names[j], wald.z);
      put_number(std::string("p_") + names[j], wald.p_value);
    }
    for (std::size_t j = 0; j < fit.beta.size(); ++j) {
      const std::string tag = std::to_string(j);
      put_number("beta_" + tag, fit.beta[j]);
      const double se = j < fit.beta_se.size() ? fit.beta_se[j] : 0.0;
      put_number("beta_se_" + tag, se);
      const WaldSummary wald = wald_test(fit.beta[j], se);
      put_number("beta_z_" + tag, wald.z);
      put_number("beta_p_" + tag, wald.p_value);
    }
    if (detrend) {
      for (std::size_t j = 0; j < detrend_fit.coef.size(); ++j)
        put_number("trend_" + std::to_string(j), detrend_fit.coef[j]);
    }
  }

  Manifest manifest = base_manifest("fit", config);
  manifest.add("seed", seed);
  manifest.add("dataset", dataset_path);
  manifest.add("dataset_digest", file_digest(dataset_path));
  manifest.write_for(out);

  std::cout << "sigma2 " << format_double(fit.params.sigma2) << "  range "
            << format_double(fit.params.range) << "  smoothness "
            << format_double(fit.params.smoothness) << "  nugget "
            << format_double(fit.params.nugget) << '\n';
  std::cout << "log_lik " << format_double(fit.log_lik) << "  converged "
            << (fit.converged ? "true" : "false") << "  iterations " << fit.iterations << '\n';
  if (!fit.converged)
    std::cout << "did not converge within max_iter; estimates are the best found\n";
  std::cout << "wrote " << out << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// predict

int run_predict(const ConfigCapture& cap, const std::string& dataset_path,
                const std::string& sites_path) {
  const RunConfig config = load_config(cap);

  const Dataset data = read_dataset_csv(dataset_path);
  const PointList sites = read_points_csv(sites_path);

  const std::string report_path = config.get_string("report", "");
  if (report_path.empty()) throw InputError("predict needs a fit report (--report)");
  const std::map<std::string, std::string> report = read_report(report_path);
  warn_on_digest_mismatch(report, dataset_path);

  PredictOptions options;
  options.m_pred = config.get_int("m_pred", 200);
  options.alpha = config.get_double("alpha", 0.05);
  options.latent = config.get_bool("latent", false);
  options.workers = config.get_int("workers", 0);
  options.trend = trend_from_report(report);
  check_alpha(options.alpha);
  if (options.m_pred < 1) throw InputError("m_pred must be at least 1");

  const PredictionSet pred =
      kriging_predict(data, params_from_report(report), sites, options);

  const std::string out = config.get_string("out", "predictions.csv");
  write_predictions_csv(out, pred);

  Manifest manifest = base_manifest("predict", config);
  manifest.add("dataset", dataset_path);
  manifest.add("dataset_digest", file_digest(dataset_path));
  manifest.add("sites", sites_path);
  manifest.add("sites_digest", file_digest(sites_path));
  manifest.add("report", report_path);
  manifest.add("report_digest", file_digest(report_path));
  manifest.add("m_pred", static_cast<std::uint64_t>(options.m_pred));
  manifest.add("alpha", options.alpha);
  manifest.add("latent", std::string(options.latent ? "true" : "false"));
  manifest.write_for(out);

  std::cout << "wrote " << out << " (" << pred.size() << " rows)\n";
  return 0;
}

// ---------------------------------------------------------------------------
// bootstrap-ci

int run_bootstrap(const ConfigCapture& cap, const std::string& dataset_path) {
  const RunConfig config = load_config(cap);

  Dataset data = read_dataset_csv(dataset_path);

  const std::string report_path = config.get_string("report", "");
  if (report_path.empty()) throw InputError("bootstrap-ci needs a fit report (--report)");
  const std::map<std::string, std::string> report = read_report(report_path);
  warn_on_digest_mismatch(report, dataset_path);
  const MaternParams params = params_from_report(report);

  // the procedure assumes mean-zero data, so strip the recorded trend
  const TrendFit trend = trend_from_report(report);
  if (trend.kind != TrendKind::none) {
    const std::vector<double> surface = trend_values(data.points, trend);
    for (std::size_t i = 0; i < data.size(); ++i) data.values[i] -= surface[i];
  }

  BootstrapOptions options;
  options.n_reps = config.get_int("n_reps", 1000);
  if (options.n_reps < 50) throw InputError("n_reps must be at least 50");
  const int subsample = config.get_int("subsample_size", 10000);
  if (subsample < 2) throw InputError("subsample_size must be at least 2");
  options.subsample_size = static_cast<std::size_t>(subsample);
  options.weight_radius = config.get_double("weight_radius", 0.0);
  options.alpha = config.get_double("alpha", 0.05);
  check_alpha(options.alpha);
  options.seed = config.get_uint64("seed", 0);
  options.workers = config.get_int("workers", 0);
  options.resample_each_replicate = config.get_bool("resample", false);
  options.refit.neighbor_stages = checked_m_seq(config, {10, 30});
  options.refit.max_iter = config.get_int("max_iter", 50);

  const BootstrapResult result = bootstrap_ci(data, params, options);

  const std::string out = config.get_string("out", "bootstrap_ci.csv");
  {
    std::ofstream csv(out);
    if (!csv) throw InputError("cannot open '" + out + "' for writing");
    csv << "parameter,estimate,sn_location,sn_scale,sn_shape,lower,upper,n_failed\n";
    const std::array<const char*, 4> names = {"sigma2", "range", "smoothness", "nugget"};
    const std::array<double, 4> estimates = {params.sigma2, params.range, params.smoothness,
                                             params.nugget};
    for (std::size_t j = 0; j < 4; ++j) {
      const SnInterval& ci = result.intervals[j];
      csv << names[j] << ',' << format_double(estimates[j]) << ','
          << format_double(ci.params.location) << ',' << format_double(ci.params.scale) << ','
          << format_double(ci.params.shape) << ',' << format_double(ci.lower) << ','
          << format_double(ci.upper) << ',' << result.n_failed << '\n';
    }
  }

  Manifest manifest = base_manifest("bootstrap-ci", config);
  manifest.add("seed", options.seed);
  manifest.add("replicate_streams",
               std::string("seed stream r+1 for replicate r, stream 0 for the subsample"));
  manifest.add("dataset", dataset_path);
  manifest.add("dataset_digest", file_digest(dataset_path));
  manifest.add("report", report_path);
  manifest.add("report_digest", file_digest(report_path));
  manifest.add("n_reps", static_cast<std::uint64_t>(options.n_reps));
  manifest.add("subsample_size", static_cast<std::uint64_t>(options.subsample_size));
  manifest.add("n_failed", static_cast<std::uint64_t>(result.n_failed));
  manifest.add("unreliable", std::string(result.unreliable ? "true" : "false"));
  manifest.write_for(out);

  if (result.unreliable)
    std::cerr << "warning: more than 10% of replicates failed; intervals are unreliable\n";
  std::cout << "wrote " << out << " (" << result.n_failed << " of " << options.n_reps
            << " replicates failed)\n";
  return 0;
}

// ---------------------------------------------------------------------------
// crossval

int run_crossval(const ConfigCapture& cap, const std::string& dataset_path) {
  const RunConfig config = load_config(cap);

  const Dataset data = read_dataset_csv(dataset_path);

  std::vector<Method> methods;
  {
    const std::string list = config.get_string("methods", config.get_string("method", "vecchia"));
    std::istringstream in(list);
    std::string name;
    while (std::getline(in, name, ',')) {
      const auto b = name.find_first_not_of(" \t");
      const auto e = name.find_last_not_of(" \t");
      if (b == std::string::npos) continue;
      methods.push_back(method_from_string(name.substr(b, e - b + 1)));
    }
    if (methods.empty()) throw InputError("methods must name at least one method");
  }

  const int folds = config.get_int("folds", 3);
  const std::uint64_t seed = config.get_uint64("seed", 0);
  if (folds < 2 || static_cast<std::size_t>(folds) > data.size())
    throw InputError("folds must lie in [2, n]");

  BenchmarkOptions options;
  options.alpha = config.get_double("alpha", 0.05);
  check_alpha(options.alpha);
  options.trend = mean_kind_from_config(config.get_string("mean_kind", "zero"));
  options.m_seq = checked_m_seq(config, {10, 30});
  options.m_pred = config.get_int("m_pred", 200);
  options.n_blocks = config.get_int("n_blocks", 0);
  options.delta = config.get_double("delta", 0.0);
  options.cap = config.get_int("cap", 500);
  options.workers = config.get_int("workers", 0);
  options.seed = seed;
  options.timing = config.get_bool("timing", false);
  options.base_fit.max_iter = config.get_int("max_iter", options.base_fit.max_iter);

  const CvPlan plan = kfold_split(data.size(), folds, seed);
  const BenchmarkReport report = run_benchmark(data, methods, plan, options);

  const std::string out = config.get_string("out", "crossval.csv");
  {
    std::ofstream csv(out);
    if (!csv) throw InputError("cannot open '" + out + "' for writing");
    csv << benchmark_csv(report);
  }

  Manifest manifest = base_manifest("crossval", config);
  manifest.add("seed", seed);
  manifest.add("dataset", dataset_path);
  manifest.add("dataset_digest", file_digest(dataset_path));
  manifest.add("folds", static_cast<std::uint64_t>(folds));
  manifest.write_for(out);

  std::cout << benchmark_table(report);
  for (const BenchmarkCell& cell : report.cells)
    if (!cell.ok)
      std::cerr << "warning: " << method_to_string(cell.method) << " fold " << cell.fold
                << " failed: " << cell.error << '\n';
  std::cout << "wrote " << out << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// variogram

int run_variogram(const ConfigCapture& cap, const std::string& dataset_path) {
  const RunConfig config = load_config(cap);

  const Dataset data = read_dataset_csv(dataset_path);
  const int n_bins = config.get_int("n_bins", 20);
  const double max_dist = config.get_double("max_dist", 0.0);
  const int max_pairs = config.get_int("max_pairs", 1000000);
  if (max_pairs < 1) throw InputError("max_pairs must be at least 1");
  const std::uint64_t seed = config.get_uint64("seed", 0);

  const VariogramEstimate vg = empirical_variogram(
      data, n_bins, max_dist, static_cast<std::size_t>(max_pairs), seed);

  const std::string out = config.get_string("out", "variogram.csv");
  write_variogram_csv(out, vg);

  Manifest manifest = base_manifest("variogram", config);
  manifest.add("seed", seed);
  manifest.add("dataset", dataset_path);
  manifest.add("dataset_digest", file_digest(dataset_path));
  manifest.add("n_bins", static_cast<std::uint64_t>(n_bins));
  manifest.add("max_dist", vg.max_dist);
  manifest.write_for(out);

  std::cout << "wrote " << out << " (" << vg.bin_centers.size() << " bins)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian-process estimation and prediction for large spatial datasets"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(vgp::kVersion));

  ConfigCapture sim_cap, fit_cap, pred_cap, boot_cap, cv_cap, vg_cap;
  std::string fit_data, pred_data, pred_sites, boot_data, cv_data, vg_data;

  CLI::App* sim = app.add_subcommand("simulate", "Generate a dataset and split it");
  sim->add_option("--config", sim_cap.config_path, "run configuration file");
  add_key_option(sim, sim_cap, "--n", "n", "number of sites");
  add_key_option(sim, sim_cap, "--pattern", "pattern",
                 "homogeneous, dense_subregion, nested_density, striped_gaps, or "
                 "circular_clusters");
  add_key_option(sim, sim_cap, "--sigma2", "sigma2", "partial sill");
  add_key_option(sim, sim_cap, "--range", "range", "correlation range");
  add_key_option(sim, sim_cap, "--smoothness", "smoothness", "Matern smoothness");
  add_key_option(sim, sim_cap, "--nugget", "nugget", "nugget variance");
  add_key_option(sim, sim_cap, "--seed", "seed", "random seed");
  add_key_option(sim, sim_cap, "--split", "split", "training fraction");
  add_key_option(sim, sim_cap, "--out-train", "out_train", "training CSV path");
  add_key_option(sim, sim_cap, "--out-test", "out_test", "test CSV path");
  add_key_option(sim, sim_cap, "--stripe-count", "stripe_count", "striped_gaps stripes");
  add_key_option(sim, sim_cap, "--stripe-width", "stripe_width", "striped_gaps stripe width");
  add_key_option(sim, sim_cap, "--cluster-count", "cluster_count", "circular_clusters count");
  add_key_option(sim, sim_cap, "--cluster-radius", "cluster_radius",
                 "circular_clusters radius");
  add_key_option(sim, sim_cap, "--cluster-fraction", "cluster_fraction",
                 "circular_clusters point share");
  add_key_option(sim, sim_cap, "--subregion-fraction", "subregion_fraction",
                 "dense_subregion point share");

  CLI::App* fit = app.add_subcommand("fit", "Estimate covariance parameters");
  fit->add_option("dataset", fit_data, "dataset CSV (x,y,value)")->required();
  fit->add_option("--config", fit_cap.config_path, "run configuration file");
  add_key_option(fit, fit_cap, "--method", "method", "exact, vecchia, or bcl");
  add_key_option(fit, fit_cap, "--mean", "mean_kind", "zero, constant, or linear");
  add_key_option(fit, fit_cap, "--m-seq", "m_seq", "neighbor schedule, e.g. 10,30,60");
  add_key_option(fit, fit_cap, "--n-blocks", "n_blocks", "composite block count");
  add_key_option(fit, fit_cap, "--max-iter", "max_iter", "iterations per stage");
  add_key_option(fit, fit_cap, "--seed", "seed", "random seed (block partition)");
  add_key_option(fit, fit_cap, "--workers", "workers", "worker threads");
  add_key_option(fit, fit_cap, "--out", "out", "fit report path");
  add_key_flag(fit, fit_cap, "--detrend", "detrend",
               "remove a least-squares plane first, fit residuals");

  CLI::App* pred = app.add_subcommand("predict", "Krige at new sites from a fit report");
  pred->add_option("dataset", pred_data, "dataset CSV (x,y,value)")->required();
  pred->add_option("sites", pred_sites, "prediction sites CSV (x,y)")->required();
  pred->add_option("--config", pred_cap.config_path, "run configuration file");
  add_key_option(pred, pred_cap, "--report", "report", "fit report path");
  add_key_option(pred, pred_cap, "--out", "out", "predictions CSV path");
  add_key_option(pred, pred_cap, "--m-pred", "m_pred", "neighbors per prediction site");
  add_key_option(pred, pred_cap, "--alpha", "alpha", "interval level");
  add_key_option(pred, pred_cap, "--workers", "workers", "worker threads");
  add_key_flag(pred, pred_cap, "--latent", "latent", "predict the noise-free field");

  CLI::App* boot = app.add_subcommand("bootstrap-ci",
                                      "Bootstrap confidence intervals for the parameters");
  boot->add_option("dataset", boot_data, "dataset CSV (x,y,value)")->required();
  boot->add_option("--config", boot_cap.config_path, "run configuration file");
  add_key_option(boot, boot_cap, "--report", "report", "fit report path");
  add_key_option(boot, boot_cap, "--out", "out", "interval CSV path");
  add_key_option(boot, boot_cap, "--n-reps", "n_reps", "bootstrap replicates");
  add_key_option(boot, boot_cap, "--subsample-size", "subsample_size", "sites per replicate");
  add_key_option(boot, boot_cap, "--weight-radius", "weight_radius",
                 "declustering radius (0: 5% of the domain diagonal)");
  add_key_option(boot, boot_cap, "--alpha", "alpha", "interval level");
  add_key_option(boot, boot_cap, "--seed", "seed", "random seed");
  add_key_option(boot, boot_cap, "--workers", "workers", "worker threads");
  add_key_option(boot, boot_cap, "--m-seq", "m_seq", "refit neighbor schedule");
  add_key_option(boot, boot_cap, "--max-iter", "max_iter", "refit iterations per stage");
  add_key_flag(boot, boot_cap, "--resample", "resample", "fresh subsample per replicate");

  CLI::App* cv = app.add_subcommand("crossval", "Cross-validated method comparison");
  cv->add_option("dataset", cv_data, "dataset CSV (x,y,value)")->required();
  cv->add_option("--config", cv_cap.config_path, "run configuration file");
  add_key_option(cv, cv_cap, "--methods", "methods",
                 "comma list of exact, vecchia, bcl, local_krige, local_gaussian");
  add_key_option(cv, cv_cap, "--folds", "folds", "fold count");
  add_key_option(cv, cv_cap, "--mean", "mean_kind", "zero, constant, or linear");
  add_key_option(cv, cv_cap, "--m-seq", "m_seq", "neighbor schedule");
  add_key_option(cv, cv_cap, "--m-pred", "m_pred", "neighbors per prediction site");
  add_key_option(cv, cv_cap, "--n-blocks", "n_blocks", "composite block count");
  add_key_option(cv, cv_cap, "--delta", "delta", "local window half-width");
  add_key_option(cv, cv_cap, "--cap", "cap", "local window member cap");
  add_key_option(cv, cv_cap, "--alpha", "alpha", "interval level");
  add_key_option(cv, cv_cap, "--max-iter", "max_iter", "iterations per stage");
  add_key_option(cv, cv_cap, "--seed", "seed", "random seed");
  add_key_option(cv, cv_cap, "--workers", "workers", "worker threads");
  add_key_option(cv, cv_cap, "--out", "out", "report CSV path");
  add_key_flag(cv, cv_cap, "--timing", "timing",
               "record wall times (makes reruns differ)");

  CLI::App* vg = app.add_subcommand("variogram", "Binned empirical semivariogram");
  vg->add_option("dataset", vg_data, "dataset CSV (x,y,value)")->required();
  vg->add_option("--config", vg_cap.config_path, "run configuration file");
  add_key_option(vg, vg_cap, "--n-bins", "n_bins", "distance bins");
  add_key_option(vg, vg_cap, "--max-dist", "max_dist",
                 "largest binned distance (0: half the domain diagonal)");
  add_key_option(vg, vg_cap, "--max-pairs", "max_pairs", "pair budget before subsampling");
  add_key_option(vg, vg_cap, "--seed", "seed", "pair subsampling seed");
  add_key_option(vg, vg_cap, "--out", "out", "variogram CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*sim) return run_simulate(sim_cap);
    if (*fit) return run_fit(fit_cap, fit_data);
    if (*pred) return run_predict(pred_cap, pred_data, pred_sites);
    if (*boot) return run_bootstrap(boot_cap, boot_data);
    if (*cv) return run_crossval(cv_cap, cv_data);
    if (*vg) return run_variogram(vg_cap, vg_data);
  } catch (const vgp::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
