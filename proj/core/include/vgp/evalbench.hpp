#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vgp/dataset.hpp"
#include "vgp/fit.hpp"
#include "vgp/predict.hpp"

namespace vgp {

// Cross-validation fold assignment: a seeded uniform permutation chunked
// into k folds whose sizes differ by at most one.
struct CvPlan {
  int k = 3;
  std::vector<int> fold;  // fold id per observation, 0-based
  std::uint64_t seed = 0;
};

CvPlan kfold_split(std::size_t n, int k, std::uint64_t seed);

struct Scores {
  double mspe = 0.0;
  double mape = 0.0;  // mean absolute prediction error
  double picp = 0.0;  // fraction of truths inside their interval
  double mpiw = 0.0;  // mean interval width
  double wall_time_s = 0.0;  // supplied by the caller
};

Scores score(const PredictionSet& pred, const std::vector<double>& truth);

enum class Method { exact, vecchia, bcl, local_krige, local_gaussian };

// InputError listing the valid names on an unknown one
Method method_from_string(const std::string& name);
std::string method_to_string(Method m);

struct BenchmarkOptions {
  double alpha = 0.05;
  TrendKind trend = TrendKind::none;
  std::vector<int> m_seq = {10, 30};  // neighbor schedule for sequential fits
  int m_pred = 200;
  int n_blocks = 0;     // <= 0: one block per 500 training points
  double delta = 0.0;   // window half-width; <= 0 picks a per-method default
  int cap = 500;
  int workers = 0;
  std::uint64_t seed = 0;
  // wall-clock timing is the one nondeterministic column; leave it off to
  // make reruns byte-identical
  bool timing = false;
  FitOptions base_fit;
};

struct BenchmarkCell {
  Method method = Method::vecchia;
  int fold = 0;
  Scores scores;
  bool ok = false;
  std::string error;  // set when ok is false
};

struct BenchmarkAggregate {
  Method method = Method::vecchia;
  Scores scores;  // means over the method's successful folds
  int folds_ok = 0;
};

struct BenchmarkReport {
  std::vector<BenchmarkCell> cells;            // method-major, fold-minor
  std::vector<BenchmarkAggregate> aggregates;  // methods with >= 1 ok fold
};

// Per method and fold: fit on the training folds, predict the held-out
// fold, score.  A failing cell records its error and the run continues.
BenchmarkReport run_benchmark(const Dataset& data, const std::vector<Method>& methods,
                              const CvPlan& plan, const BenchmarkOptions& options);

// columns method,fold,mspe,mape,picp,mpiw,time_s; failed cells omitted;
// aggregate section appended with fold = "mean"
std::string benchmark_csv(const BenchmarkReport& report);

// aligned plain-text rendering of the same table
std::string benchmark_table(const BenchmarkReport& report);

}  // namespace vgp
