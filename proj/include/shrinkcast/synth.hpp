#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "shrinkcast/data.hpp"

namespace shrinkcast {

struct SynthOptions {
  std::uint64_t seed = 7;
  std::size_t length = 352;  // raw monthly observations (levels)
  std::size_t series = 56;   // target included
  std::size_t sparsity = 5;  // predictors with a nonzero effect on the target
  YearMonth start{1995, 1};
  double noise_sd = 0.3;
  double predictor_rho = 0.6;
};

// Price-index style panel whose year-over-year rates follow a sparse direct
// regression: target_{t+1} = c + 0.4 target_t + 0.1 target_{t-1} + sum_k b_k x_{k,t} + e.
struct SynthData {
  TimeSeriesFrame levels;
  TimeSeriesFrame yoy;                  // exact rates the levels were built from
  std::vector<std::string> true_names;  // predictors with nonzero b_k
  std::vector<std::size_t> true_columns;
  std::vector<double> coefficients;
  SynthOptions options;
};

SynthData make_synthetic(const SynthOptions& options);

// JSON sidecar describing the generating process.
std::string synth_manifest(const SynthData& data);

}  // namespace shrinkcast
