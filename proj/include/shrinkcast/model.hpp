#pragma once

#include <string>
#include <string_view>

#include "shrinkcast/priors.hpp"

namespace shrinkcast {

enum class ModelKind { kDirect, kUcsv };

// small = AR(2) only, moderate = first 20 series of the frame, large = all.
enum class PredictorSet { kSmall, kModerate, kLarge };

std::string_view to_string(PredictorSet s) noexcept;
std::string_view display_name(PredictorSet s) noexcept;
PredictorSet parse_predictor_set(std::string_view token);

// One forecasting model at one horizon.
struct ModelSpec {
  ModelKind kind = ModelKind::kDirect;
  PriorFamily prior = PriorFamily::kNoninformative;
  PriorHyper hyper;
  PredictorSet size = PredictorSet::kSmall;
  bool sv = false;
  int horizon = 1;

  // The noninformative AR(2) regression without stochastic volatility.
  bool is_benchmark() const noexcept {
    return kind == ModelKind::kDirect && prior == PriorFamily::kNoninformative &&
           size == PredictorSet::kSmall && !sv;
  }
  // Horizon-free identifier, e.g. "hs_large", "dl_moderate_sv", "ucsv".
  std::string id() const;
  std::string prior_label() const;  // "HS", "UC-SV", ...

  static ModelSpec benchmark(int horizon) {
    ModelSpec m;
    m.horizon = horizon;
    return m;
  }
  static ModelSpec ucsv(int horizon) {
    ModelSpec m;
    m.kind = ModelKind::kUcsv;
    m.horizon = horizon;
    return m;
  }
};

}  // namespace shrinkcast
