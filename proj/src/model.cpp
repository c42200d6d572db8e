#include "shrinkcast/model.hpp"

#include "shrinkcast/error.hpp"

namespace shrinkcast {

std::string_view to_string(PredictorSet s) noexcept {
  switch (s) {
    case PredictorSet::kSmall: return "small";
    case PredictorSet::kModerate: return "moderate";
    case PredictorSet::kLarge: return "large";
  }
  return "?";
}

std::string_view display_name(PredictorSet s) noexcept {
  switch (s) {
    case PredictorSet::kSmall: return "AR(2)";
    case PredictorSet::kModerate: return "Moderate";
    case PredictorSet::kLarge: return "Large";
  }
  return "?";
}

PredictorSet parse_predictor_set(std::string_view token) {
  for (auto s : {PredictorSet::kSmall, PredictorSet::kModerate, PredictorSet::kLarge}) {
    if (to_string(s) == token) return s;
  }
  if (token == "ar2") return PredictorSet::kSmall;
  throw ArgumentError("unknown predictor set '" + std::string(token) + "'");
}

std::string ModelSpec::id() const {
  if (kind == ModelKind::kUcsv) return "ucsv";
  std::string s(to_string(prior));
  s += '_';
  s += to_string(size);
  if (sv) s += "_sv";
  return s;
}

std::string ModelSpec::prior_label() const {
  if (kind == ModelKind::kUcsv) return "UC-SV";
  return std::string(display_name(prior));
}

}  // namespace shrinkcast
