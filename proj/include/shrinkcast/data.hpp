#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace shrinkcast {

// Calendar month. Ordered; arithmetic is in whole months.
struct YearMonth {
  int year = 1970;
  int month = 1;  // 1..12

  static YearMonth parse(std::string_view text);  // "YYYY-MM" or "YYYY:Mmm"
  static YearMonth from_ordinal(long ordinal);

  long ordinal() const noexcept { return static_cast<long>(year) * 12 + (month - 1); }
  YearMonth plus_months(long n) const { return from_ordinal(ordinal() + n); }
  std::string str() const;  // "YYYY-MM"

  friend auto operator<=>(const YearMonth& a, const YearMonth& b) noexcept {
    return a.ordinal() <=> b.ordinal();
  }
  friend bool operator==(const YearMonth& a, const YearMonth& b) noexcept {
    return a.ordinal() == b.ordinal();
  }
};

long months_between(YearMonth from, YearMonth to) noexcept;

// Dated monthly matrix of named series. Immutable after construction.
class TimeSeriesFrame {
 public:
  TimeSeriesFrame(std::vector<YearMonth> dates, std::vector<std::string> names,
                  Eigen::MatrixXd values);

  std::size_t rows() const noexcept { return dates_.size(); }
  std::size_t cols() const noexcept { return names_.size(); }
  const std::vector<YearMonth>& dates() const noexcept { return dates_; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const Eigen::MatrixXd& values() const noexcept { return values_; }

  std::size_t column_index(std::string_view name) const;
  Eigen::VectorXd column(std::size_t j) const { return values_.col(static_cast<Eigen::Index>(j)); }

  // YoY percent growth of every column; drops the leading 12 rows.
  TimeSeriesFrame yoy() const;

 private:
  std::vector<YearMonth> dates_;
  std::vector<std::string> names_;
  Eigen::MatrixXd values_;
};

// output[t] = 100 * (levels[t+12] / levels[t] - 1).
std::vector<double> yoy_transform(std::span<const double> levels,
                                  std::span<const YearMonth> dates = {});

// Rows of a direct h-step regression: y_{t+h} on [1, y_t, ..., y_{t-lags+1}, X_t].
struct DirectDesign {
  Eigen::VectorXd targets;
  Eigen::MatrixXd regressors;
  std::vector<YearMonth> origin_dates;
  std::vector<std::size_t> origin_index;  // t for each row
  int horizon = 1;
  int lags = 2;

  Eigen::Index rows() const noexcept { return regressors.rows(); }
  Eigen::Index width() const noexcept { return regressors.cols(); }
};

DirectDesign build_direct_design(const Eigen::VectorXd& y, const Eigen::MatrixXd& X,
                                 const std::vector<YearMonth>& dates, int horizon,
                                 int lags = 2);

// Regressor row available at origin t (same layout as DirectDesign rows).
Eigen::VectorXd regressor_row(const Eigen::VectorXd& y, const Eigen::MatrixXd& X,
                              std::size_t origin, int lags = 2);

enum class WindowScheme { kRolling, kExpanding };

struct Split {
  std::size_t train_begin = 0;  // first observation usable for estimation
  std::size_t origin = 0;       // last observation known at forecast time
  std::size_t target = 0;       // origin + h
};

struct WindowPlan {
  std::size_t window_length = 0;
  int horizon = 1;
  WindowScheme scheme = WindowScheme::kRolling;
  std::vector<Split> splits;
};

WindowPlan rolling_windows(std::size_t T, std::size_t window, int horizon,
                           WindowScheme scheme = WindowScheme::kRolling);

// Half-open range [first, last) of DirectDesign rows usable for a split: the
// regressors and the target of every row lie inside [train_begin, origin].
struct RowRange {
  std::size_t first = 0;
  std::size_t last = 0;
  std::size_t size() const noexcept { return last - first; }
};
RowRange training_rows(const Split& split, int horizon, int lags = 2);

std::vector<bool> subsample_mask(std::span<const YearMonth> dates, YearMonth start,
                                 YearMonth end);

}  // namespace shrinkcast
