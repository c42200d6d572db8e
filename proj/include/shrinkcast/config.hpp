#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shrinkcast/harness.hpp"
#include "shrinkcast/model.hpp"
#include "shrinkcast/priors.hpp"

namespace shrinkcast {

// Run configuration. Text form is `key = value` lines; `[section]` headers
// prefix the keys that follow with "section.". Unknown keys are errors.
struct RunConfig {
  std::filesystem::path data_path;
  std::string target;      // empty: first series
  bool transform = false;  // apply the year-over-year transform on load
  std::optional<YearMonth> start;  // rows outside [start, end] are dropped
  std::optional<YearMonth> end;

  std::vector<PriorFamily> priors = {PriorFamily::kDirichletLaplace, PriorFamily::kHorseshoe,
                                     PriorFamily::kHorseshoePlus,    PriorFamily::kAdaptiveLasso,
                                     PriorFamily::kRidge,            PriorFamily::kSpikeSlab};
  PriorHyper hyper;
  std::vector<PredictorSet> sizes = {PredictorSet::kSmall, PredictorSet::kModerate,
                                     PredictorSet::kLarge};
  std::vector<bool> sv = {false, true};
  std::vector<int> horizons = {1, 4, 8, 12};
  bool ucsv = true;
  bool allow_any_horizon = false;
  std::size_t moderate_count = 20;

  std::size_t window = 128;
  WindowScheme scheme = WindowScheme::kRolling;
  int lags = 2;

  std::size_t n_burn = 2000;
  std::size_t n_keep = 3000;
  std::size_t thin = 1;
  std::uint64_t seed = 20240501;
  int threads = 0;

  std::filesystem::path output_dir = "out";
  std::vector<Period> periods = {Period::full(), Period::pandemic()};

  void set(std::string_view key, std::string_view value);
  void validate() const;

  // Benchmark, UC-SV and every prior x size x sv combination, per horizon.
  std::vector<ModelSpec> specs() const;
  ExperimentSettings settings(const TimeSeriesFrame& frame) const;
  // Reads data.path, applies the transform and the date range.
  TimeSeriesFrame load_frame() const;
};

RunConfig parse_config(std::string_view text, std::string_view source = "config");
RunConfig load_config(const std::filesystem::path& path);

// "key=value" as given on the command line.
void apply_override(RunConfig& cfg, std::string_view assignment);

}  // namespace shrinkcast
