#include "vgp/evalbench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <utility>

#include "vgp/errors.hpp"
#include "vgp/rng.hpp"

namespace vgp {

namespace {

struct FoldData {
  Dataset train;
  PointList test_points;
  std::vector<double> test_values;
};

FoldData split_fold(const Dataset& data, const CvPlan& plan, int fold) {
  FoldData out;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (plan.fold[i] == fold) {
      out.test_points.push_back(data.points[i]);
      out.test_values.push_back(data.values[i]);
    } else {
      out.train.points.push_back(data.points[i]);
      out.train.values.push_back(data.values[i]);
    }
  }
  return out;
}

TrendFit trend_from_fit(TrendKind kind, const std::vector<double>& beta) {
  TrendFit trend;
  trend.kind = kind;
  trend.coef = beta;
  return trend;
}

Scores run_cell(const Dataset& data, Method method, const CvPlan& plan, int fold,
                const BenchmarkOptions& options) {
  const FoldData fd = split_fold(data, plan, fold);

  FitOptions fit_options = options.base_fit;
  fit_options.workers = options.workers;
  fit_options.neighbor_stages = options.m_seq;

  PredictOptions po;
  po.m_pred = static_cast<std::size_t>(options.m_pred);
  po.alpha = options.alpha;
  po.workers = options.workers;

  PredictionSet pred;
  switch (method) {
    case Method::exact: {
      const FitResult fit = fit_exact(fd.train, options.trend, fit_options);
      po.trend = trend_from_fit(options.trend, fit.beta);
      pred = kriging_predict(fd.train, fit.params, fd.test_points, po);
      break;
    }
    case Method::vecchia: {
      const SequentialFitResult fit = fit_sequential(fd.train, options.trend, fit_options);
      po.trend = trend_from_fit(options.trend, fit.fit.beta);
      pred = kriging_predict(fd.train, fit.fit.params, fd.test_points, po);
      break;
    }
    case Method::bcl: {
      const FitResult fit =
          fit_blocks(fd.train, options.trend, options.n_blocks, options.seed, fit_options);
      po.trend = trend_from_fit(options.trend, fit.beta);
      pred = kriging_predict(fd.train, fit.params, fd.test_points, po);
      break;
    }
    case Method::local_krige: {
      const SequentialFitResult fit = fit_sequential(fd.train, options.trend, fit_options);
      LocalWindowOptions lw;
      lw.half_width = options.delta > 0.0 ? options.delta : 4.0 * fit.fit.params.range;
      lw.cap = static_cast<std::size_t>(options.cap);
      lw.alpha = options.alpha;
      lw.workers = options.workers;
      pred = local_krige_predict(fd.train, fit.fit.params, fd.test_points,
                                 trend_from_fit(options.trend, fit.fit.beta), lw);
      break;
    }
    case Method::local_gaussian: {
      LocalWindowOptions lw;
      lw.half_width = options.delta > 0.0
                          ? options.delta
                          : 0.4 * BoundingBox::of(fd.train.points).diagonal();
      lw.cap = static_cast<std::size_t>(options.cap);
      lw.alpha = options.alpha;
      lw.workers = options.workers;
      pred = local_gaussian_predict(fd.train, fd.test_points, lw);
      break;
    }
  }
  return score(pred, fd.test_values);
}

void append_number(std::ostringstream& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out << buf;
}

std::string format_cell(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

CvPlan kfold_split(std::size_t n, int k, std::uint64_t seed) {
  if (k < 2 || static_cast<std::size_t>(k) > n)
    throw Error("fold count must lie in [2, n]");

  std::vector<int> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<int>(i);
  RandomStream stream(seed, 0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(stream.below(static_cast<int>(n - i)));
    std::swap(perm[i], perm[j]);
  }

  CvPlan plan;
  plan.k = k;
  plan.seed = seed;
  plan.fold.assign(n, 0);
  const std::size_t base = n / static_cast<std::size_t>(k);
  const std::size_t extra = n % static_cast<std::size_t>(k);
  std::size_t at = 0;
  for (int f = 0; f < k; ++f) {
    const std::size_t size = base + (static_cast<std::size_t>(f) < extra ? 1 : 0);
    for (std::size_t i = 0; i < size; ++i) plan.fold[perm[at++]] = f;
  }
  return plan;
}

Scores score(const PredictionSet& pred, const std::vector<double>& truth) {
  const std::size_t n = truth.size();
  if (pred.size() != n) throw InputError("prediction and truth lengths differ");
  if (n == 0) throw InputError("cannot score an empty prediction set");

  Scores s;
  std::size_t covered = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double err = pred.mean[i] - truth[i];
    s.mspe += err * err;
    s.mape += std::fabs(err);
    s.mpiw += pred.upper[i] - pred.lower[i];
    if (pred.lower[i] <= truth[i] && truth[i] <= pred.upper[i]) ++covered;
  }
  s.mspe /= n;
  s.mape /= n;
  s.mpiw /= n;
  s.picp = static_cast<double>(covered) / static_cast<double>(n);
  return s;
}

Method method_from_string(const std::string& name) {
  if (name == "exact") return Method::exact;
  if (name == "vecchia") return Method::vecchia;
  if (name == "bcl") return Method::bcl;
  if (name == "local_krige") return Method::local_krige;
  if (name == "local_gaussian") return Method::local_gaussian;
  throw InputError("unknown method '" + name +
                   "'; valid methods: exact, vecchia, bcl, local_krige, local_gaussian");
}

std::string method_to_string(Method m) {
  switch (m) {
    case Method::exact: return "exact";
    case Method::vecchia: return "vecchia";
    case Method::bcl: return "bcl";
    case Method::local_krige: return "local_krige";
    case Method::local_gaussian: return "local_gaussian";
  }
  return "unknown";
}

BenchmarkReport run_benchmark(const Dataset& data, const std::vector<Method>& methods,
                              const CvPlan& plan, const BenchmarkOptions& options) {
  if (methods.empty()) throw Error("benchmark needs at least one method");
  if (plan.fold.size() != data.size())
    throw Error("fold assignment length does not match data size");

  BenchmarkReport report;
  for (const Method method : methods) {
    Scores sum;
    int ok_count = 0;
    for (int fold = 0; fold < plan.k; ++fold) {
      BenchmarkCell cell;
      cell.method = method;
      cell.fold = fold;
      const auto started = std::chrono::steady_clock::now();
      try {
        cell.scores = run_cell(data, method, plan, fold, options);
        cell.ok = true;
      } catch (const std::exception& e) {
        cell.error = e.what();
      }
      if (options.timing && cell.ok) {
        const auto elapsed = std::chrono::steady_clock::now() - started;
        cell.scores.wall_time_s =
            std::chrono::duration_cast<std::chrono::duration<double>>(elapsed).count();
      }
      if (cell.ok) {
        sum.mspe += cell.scores.mspe;
        sum.mape += cell.scores.mape;
        sum.picp += cell.scores.picp;
        sum.mpiw += cell.scores.mpiw;
        sum.wall_time_s += cell.scores.wall_time_s;
        ++ok_count;
      }
      report.cells.push_back(std::move(cell));
    }
    if (ok_count > 0) {
      BenchmarkAggregate agg;
      agg.method = method;
      agg.folds_ok = ok_count;
      agg.scores.mspe = sum.mspe / ok_count;
      agg.scores.mape = sum.mape / ok_count;
      agg.scores.picp = sum.picp / ok_count;
      agg.scores.mpiw = sum.mpiw / ok_count;
      agg.scores.wall_time_s = sum.wall_time_s / ok_count;
      report.aggregates.push_back(agg);
    }
  }
  return report;
}

std::string benchmark_csv(const BenchmarkReport& report) {
  std::ostringstream out;
  out << "method,fold,mspe,mape,picp,mpiw,time_s\n";
  for (const BenchmarkCell& cell : report.cells) {
    if (!cell.ok) continue;
    out << method_to_string(cell.method) << ',' << cell.fold << ',';
    append_number(out, cell.scores.mspe);
    out << ',';
    append_number(out, cell.scores.mape);
    out << ',';
    append_number(out, cell.scores.picp);
    out << ',';
    append_number(out, cell.scores.mpiw);
    out << ',';
    append_number(out, cell.scores.wall_time_s);
    out << '\n';
  }
  out << "# aggregate\n";
  for (const BenchmarkAggregate& agg : report.aggregates) {
    out << method_to_string(agg.method) << ",mean,";
    append_number(out, agg.scores.mspe);
    out << ',';
    append_number(out, agg.scores.mape);
    out << ',';
    append_number(out, agg.scores.picp);
    out << ',';
    append_number(out, agg.scores.mpiw);
    out << ',';
    append_number(out, agg.scores.wall_time_s);
    out << '\n';
  }
  return out.str();
}

std::string benchmark_table(const BenchmarkReport& report) {
  const std::vector<std::string> header = {"method", "fold",  "mspe",  "mape",
                                           "picp",   "mpiw",  "time_s"};
  std::vector<std::vector<std::string>> rows;
  rows.push_back(header);
  auto score_row = [](const std::string& name, const std::string& fold, const Scores& s) {
    return std::vector<std::string>{name,
                                    fold,
                                    format_cell(s.mspe),
                                    format_cell(s.mape),
                                    format_cell(s.picp),
                                    format_cell(s.mpiw),
                                    format_cell(s.wall_time_s)};
  };
  for (const BenchmarkCell& cell : report.cells) {
    if (cell.ok) {
      rows.push_back(
          score_row(method_to_string(cell.method), std::to_string(cell.fold), cell.scores));
    } else {
      rows.push_back({method_to_string(cell.method), std::to_string(cell.fold), "failed:",
                      cell.error, "", "", ""});
    }
  }
  for (const BenchmarkAggregate& agg : report.aggregates)
    rows.push_back(score_row(method_to_string(agg.method), "mean", agg.scores));

  std::vector<std::size_t> widths(header.size(), 0);
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size(); ++c)
      widths[c] = std::max(widths[c], row[c].size());

  std::ostringstream out;
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << "  ";
      out << row[c];
      if (c + 1 < row.size())
        out << std::string(widths[c] - row[c].size(), ' ');
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace vgp
