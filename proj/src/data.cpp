#include "shrinkcast/data.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "shrinkcast/error.hpp"

namespace shrinkcast {

namespace {

int parse_int(std::string_view s, std::string_view whole) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw DataError("malformed year-month '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

YearMonth YearMonth::parse(std::string_view text) {
  auto sep = text.find_first_of("-:");
  if (sep == std::string_view::npos) {
    throw DataError("malformed year-month '" + std::string(text) + "'");
  }
  auto month_part = text.substr(sep + 1);
  if (!month_part.empty() && (month_part.front() == 'M' || month_part.front() == 'm')) {
    month_part.remove_prefix(1);
  }
  YearMonth ym{parse_int(text.substr(0, sep), text), parse_int(month_part, text)};
  if (ym.month < 1 || ym.month > 12) {
    throw DataError("month out of range in '" + std::string(text) + "'");
  }
  return ym;
}

YearMonth YearMonth::from_ordinal(long ordinal) {
  long y = ordinal >= 0 ? ordinal / 12 : -((-ordinal + 11) / 12);
  return YearMonth{static_cast<int>(y), static_cast<int>(ordinal - y * 12) + 1};
}

std::string YearMonth::str() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02d", year, month);
  return buf;
}

long months_between(YearMonth from, YearMonth to) noexcept { return to.ordinal() - from.ordinal(); }

TimeSeriesFrame::TimeSeriesFrame(std::vector<YearMonth> dates, std::vector<std::string> names,
                                 Eigen::MatrixXd values)
    : dates_(std::move(dates)), names_(std::move(names)), values_(std::move(values)) {
  if (static_cast<std::size_t>(values_.rows()) != dates_.size()) {
    throw DataError("frame has " + std::to_string(values_.rows()) + " value rows but " +
                    std::to_string(dates_.size()) + " dates");
  }
  if (static_cast<std::size_t>(values_.cols()) != names_.size()) {
    throw DataError("frame has " + std::to_string(values_.cols()) + " value columns but " +
                    std::to_string(names_.size()) + " names");
  }
  for (std::size_t i = 1; i < dates_.size(); ++i) {
    if (dates_[i].ordinal() != dates_[i - 1].ordinal() + 1) {
      throw DataError("dates must be consecutive months: " + dates_[i - 1].str() + " then " +
                      dates_[i].str());
    }
  }
  for (Eigen::Index j = 0; j < values_.cols(); ++j) {
    for (Eigen::Index i = 0; i < values_.rows(); ++i) {
      if (!std::isfinite(values_(i, j))) {
        throw DataError("missing or non-finite value in series '" + names_[j] + "' at " +
                        dates_[i].str());
      }
    }
  }
}

std::size_t TimeSeriesFrame::column_index(std::string_view name) const {
  for (std::size_t j = 0; j < names_.size(); ++j) {
    if (names_[j] == name) return j;
  }
  throw DataError("no series named '" + std::string(name) + "'");
}

TimeSeriesFrame TimeSeriesFrame::yoy() const {
  const std::size_t T = rows();
  if (T <= 12) {
    throw InsufficientDataError("YoY transform needs more than 12 rows, got " + std::to_string(T));
  }
  Eigen::MatrixXd out(static_cast<Eigen::Index>(T - 12), values_.cols());
  for (Eigen::Index j = 0; j < values_.cols(); ++j) {
    std::vector<double> col(values_.col(j).data(), values_.col(j).data() + T);
    std::vector<double> g;
    try {
      g = yoy_transform(col, dates_);
    } catch (const DomainError& e) {
      throw DomainError("series '" + names_[j] + "': " + e.what());
    }
    for (std::size_t i = 0; i < g.size(); ++i) out(static_cast<Eigen::Index>(i), j) = g[i];
  }
  return TimeSeriesFrame(std::vector<YearMonth>(dates_.begin() + 12, dates_.end()), names_,
                         std::move(out));
}

std::vector<double> yoy_transform(std::span<const double> levels,
                                  std::span<const YearMonth> dates) {
  const std::size_t T = levels.size();
  if (T <= 12) {
    throw InsufficientDataError("YoY transform needs more than 12 observations, got " +
                                std::to_string(T));
  }
  for (std::size_t t = 0; t < T; ++t) {
    if (!(levels[t] > 0.0)) {
      std::string where = t < dates.size() ? dates[t].str() : "index " + std::to_string(t);
      throw DomainError("non-positive level " + std::to_string(levels[t]) + " at " + where);
    }
  }
  std::vector<double> out(T - 12);
  for (std::size_t t = 0; t + 12 < T; ++t) out[t] = 100.0 * (levels[t + 12] / levels[t] - 1.0);
  return out;
}

DirectDesign build_direct_design(const Eigen::VectorXd& y, const Eigen::MatrixXd& X,
                                 const std::vector<YearMonth>& dates, int horizon, int lags) {
  const auto T = static_cast<long>(y.size());
  if (horizon < 1) throw ArgumentError("horizon must be >= 1");
  if (lags < 1) throw ArgumentError("lag order must be >= 1");
  if (X.rows() != y.size() && X.cols() > 0) {
    throw ArgumentError("target and predictors must share dates");
  }
  if (!dates.empty() && static_cast<long>(dates.size()) != T) {
    throw ArgumentError("date vector length differs from target length");
  }
  if (T <= horizon + lags) {
    throw InsufficientDataError("direct design needs more than h + lags = " +
                                std::to_string(horizon + lags) + " observations, got " +
                                std::to_string(T));
  }
  const long n = T - horizon - (lags - 1);
  const Eigen::Index width = 1 + lags + X.cols();

  DirectDesign d;
  d.horizon = horizon;
  d.lags = lags;
  d.targets.resize(n);
  d.regressors.resize(n, width);
  d.origin_index.resize(static_cast<std::size_t>(n));
  if (!dates.empty()) d.origin_dates.resize(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    const long t = i + lags - 1;
    d.targets(i) = y(t + horizon);
    d.regressors.row(i) = regressor_row(y, X, static_cast<std::size_t>(t), lags).transpose();
    d.origin_index[static_cast<std::size_t>(i)] = static_cast<std::size_t>(t);
    if (!dates.empty()) d.origin_dates[static_cast<std::size_t>(i)] = dates[static_cast<std::size_t>(t)];
  }
  return d;
}

Eigen::VectorXd regressor_row(const Eigen::VectorXd& y, const Eigen::MatrixXd& X,
                              std::size_t origin, int lags) {
  const auto t = static_cast<Eigen::Index>(origin);
  if (t < lags - 1 || t >= y.size()) {
    throw ArgumentError("origin " + std::to_string(origin) + " has no full lag history");
  }
  Eigen::VectorXd row(1 + lags + X.cols());
  row(0) = 1.0;
  for (int l = 0; l < lags; ++l) row(1 + l) = y(t - l);
  if (X.cols() > 0) row.tail(X.cols()) = X.row(t).transpose();
  return row;
}

WindowPlan rolling_windows(std::size_t T, std::size_t window, int horizon, WindowScheme scheme) {
  if (horizon < 1) throw ArgumentError("horizon must be >= 1");
  if (window == 0) throw ArgumentError("window length must be positive");
  const auto h = static_cast<std::size_t>(horizon);
  if (T <= window + h) {
    throw InsufficientDataError("rolling evaluation needs more than window + h = " +
                                std::to_string(window + h) + " observations, got " +
                                std::to_string(T));
  }
  WindowPlan plan;
  plan.window_length = window;
  plan.horizon = horizon;
  plan.scheme = scheme;
  const std::size_t count = T - window - h + 1;
  plan.splits.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    Split s;
    s.origin = window - 1 + k;
    s.train_begin = scheme == WindowScheme::kRolling ? k : 0;
    s.target = s.origin + h;
    plan.splits.push_back(s);
  }
  return plan;
}

RowRange training_rows(const Split& split, int horizon, int lags) {
  const std::size_t lag_offset = static_cast<std::size_t>(lags - 1);
  const std::size_t first_t = split.train_begin + lag_offset;
  const std::size_t h = static_cast<std::size_t>(horizon);
  if (split.origin < h || split.origin - h < first_t) return {0, 0};
  return {first_t - lag_offset, split.origin - h - lag_offset + 1};
}

std::vector<bool> subsample_mask(std::span<const YearMonth> dates, YearMonth start,
                                 YearMonth end) {
  if (end < start) {
    throw ArgumentError("subsample start " + start.str() + " is after end " + end.str());
  }
  std::vector<bool> mask(dates.size());
  for (std::size_t i = 0; i < dates.size(); ++i) mask[i] = start <= dates[i] && dates[i] <= end;
  return mask;
}

}  // namespace shrinkcast
