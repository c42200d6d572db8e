#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shrinkcast/data.hpp"
#include "shrinkcast/gibbs.hpp"
#include "shrinkcast/model.hpp"
#include "shrinkcast/predictive.hpp"
#include "shrinkcast/scoring.hpp"

namespace shrinkcast {

struct ExperimentSettings {
  std::size_t target_column = 0;
  std::size_t moderate_count = 20;  // series in the moderate set, target included
  std::size_t window = 128;
  WindowScheme scheme = WindowScheme::kRolling;
  int lags = 2;
  std::size_t n_burn = 2000;
  std::size_t n_keep = 3000;
  std::size_t thin = 1;
  std::uint64_t seed = 20240501;
  int threads = 0;  // 0: OpenMP default, capped by SHRINKCAST_THREADS
};

enum class ForecastStatus { kOk, kFailed };

// One out-of-sample forecast for one model, horizon and window.
struct ForecastRecord {
  std::string model;  // ModelSpec::id()
  std::string prior;  // display label
  std::string size;
  bool sv = false;
  int horizon = 1;
  std::size_t window_index = 0;
  YearMonth origin;
  YearMonth target;
  double actual = 0.0;
  ForecastStatus status = ForecastStatus::kOk;
  std::string diagnostic;
  double point = 0.0;  // predictive mean
  double variance = 0.0;
  double log_score = 0.0;
  std::array<double, kQuantileCount> quantiles{};
  std::vector<double> kappa;  // exogenous predictors, HS-family models only
};

struct ExperimentResult {
  std::vector<ForecastRecord> records;  // spec order, then window order
  // Exogenous predictor names per model id, aligned with ForecastRecord::kappa.
  std::vector<std::pair<std::string, std::vector<std::string>>> kappa_names;
};

// Frame columns a predictor set adds to the AR(2) terms.
std::vector<std::size_t> predictor_columns(const TimeSeriesFrame& frame, PredictorSet size,
                                           const ExperimentSettings& settings);

// Worker count after applying SHRINKCAST_THREADS.
int effective_threads(int requested);

// Rolling-origin experiment. Tasks are (spec, window) pairs run in parallel;
// each task draws from its own seed so the output does not depend on the
// schedule or the thread count.
ExperimentResult run_experiment(const TimeSeriesFrame& frame, const std::vector<ModelSpec>& specs,
                                const ExperimentSettings& settings);

// Same computation on one thread, in task order. Reference for tests.
ExperimentResult run_experiment_serial(const TimeSeriesFrame& frame,
                                       const std::vector<ModelSpec>& specs,
                                       const ExperimentSettings& settings);

// A single (spec, window) forecast. Exposed for tests and benchmarks.
ForecastRecord forecast_one(const TimeSeriesFrame& frame, const ModelSpec& spec,
                            const ExperimentSettings& settings, std::size_t window_index);

struct Period {
  std::string name;
  std::optional<YearMonth> start;  // empty: unbounded
  std::optional<YearMonth> end;

  bool contains(YearMonth d) const noexcept {
    return (!start || !(d < *start)) && (!end || !(*end < d));
  }
  static Period full() { return {"full", std::nullopt, std::nullopt}; }
  static Period pandemic() { return {"pandemic", YearMonth{2019, 12}, YearMonth{2023, 5}}; }
};

// Scores every (model, horizon) against the benchmark of the same horizon on
// target dates where both forecasts succeeded. Throws if a horizon has no
// benchmark records.
ScoreTable evaluate(const std::vector<ForecastRecord>& records, const std::vector<Period>& periods);

// Log-score series of a model and the benchmark on their common dates.
struct LplSeries {
  std::vector<YearMonth> dates;
  std::vector<double> model;
  std::vector<double> benchmark;
  std::vector<double> cumulative;
};
LplSeries lpl_series(const std::vector<ForecastRecord>& records, const std::string& model,
                     int horizon);

}  // namespace shrinkcast
