#include <doctest.h>

#include <cmath>
#include <vector>

#include "shrinkcast/data.hpp"
#include "shrinkcast/error.hpp"

using namespace shrinkcast;

namespace {

std::vector<YearMonth> months(YearMonth start, std::size_t n) {
  std::vector<YearMonth> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(start.plus_months(static_cast<long>(i)));
  return out;
}

}  // namespace

TEST_CASE("year-month parsing and arithmetic") {
  CHECK(YearMonth::parse("2019-12") == YearMonth{2019, 12});
  CHECK(YearMonth::parse("2019:M12") == YearMonth{2019, 12});
  CHECK(YearMonth::parse("2006:M9") == YearMonth{2006, 9});
  CHECK(YearMonth{2019, 12}.plus_months(1) == YearMonth{2020, 1});
  CHECK(YearMonth{2020, 1}.plus_months(-1) == YearMonth{2019, 12});
  CHECK(YearMonth{2023, 5}.str() == "2023-05");
  CHECK(months_between(YearMonth{2019, 12}, YearMonth{2023, 5}) == 41);
  CHECK_THROWS_AS(YearMonth::parse("2019-13"), Error);
  CHECK_THROWS_AS(YearMonth::parse("garbage"), Error);
}

TEST_CASE("yoy transform") {
  SUBCASE("constant levels give zeros") {
    std::vector<double> lv(30, 100.0);
    for (double g : yoy_transform(lv)) CHECK(g == 0.0);
  }
  SUBCASE("ten percent") {
    std::vector<double> lv(24, 100.0);
    lv[15] = 110.0;
    const auto g = yoy_transform(lv);
    CHECK(g[3] == doctest::Approx(10.0).epsilon(1e-14));
    CHECK(g[2] == 0.0);
  }
  SUBCASE("length 24 gives 12") { CHECK(yoy_transform(std::vector<double>(24, 5.0)).size() == 12); }
  SUBCASE("exponential trend is constant") {
    const double a = 0.0037;
    std::vector<double> lv;
    for (int t = 0; t < 80; ++t) lv.push_back(50.0 * std::exp(a * t));
    const double expected = 100.0 * (std::exp(12 * a) - 1.0);
    for (double g : yoy_transform(lv)) CHECK(std::abs(g - expected) <= 1e-10 * expected);
  }
  SUBCASE("non-positive level names the date") {
    std::vector<double> lv(30, 100.0);
    lv[17] = 0.0;
    const auto dates = months({2001, 1}, 30);
    try {
      yoy_transform(lv, dates);
      FAIL("expected an error");
    } catch (const DomainError& e) {
      CHECK(std::string(e.what()).find("2002-06") != std::string::npos);
    }
  }
  SUBCASE("short input") {
    CHECK_THROWS_AS(yoy_transform(std::vector<double>(12, 1.0)), InsufficientDataError);
  }
}

TEST_CASE("frame validation") {
  Eigen::MatrixXd v = Eigen::MatrixXd::Ones(3, 2);
  auto dates = months({2000, 1}, 3);
  CHECK_NOTHROW(TimeSeriesFrame(dates, {"a", "b"}, v));
  dates[2] = {2000, 4};
  CHECK_THROWS_AS(TimeSeriesFrame(dates, {"a", "b"}, v), DataError);
  v(1, 1) = std::nan("");
  CHECK_THROWS_AS(TimeSeriesFrame(months({2000, 1}, 3), {"a", "b"}, v), DataError);
  CHECK_THROWS_AS(TimeSeriesFrame(months({2000, 1}, 3), {"a"}, Eigen::MatrixXd::Ones(3, 2)), DataError);

  Eigen::MatrixXd lv = Eigen::MatrixXd::Constant(352, 3, 100.0);
  TimeSeriesFrame f(months({1995, 1}, 352), {"a", "b", "c"}, lv);
  const auto y = f.yoy();
  CHECK(y.rows() == 340);
  CHECK(y.dates().front() == YearMonth{1996, 1});
  CHECK(y.dates().back() == YearMonth{2024, 4});
  CHECK(f.column_index("c") == 2);
  CHECK_THROWS(f.column_index("zzz"));
}

TEST_CASE("direct design shape") {
  const Eigen::VectorXd y = Eigen::VectorXd::LinSpaced(100, 0.0, 99.0);
  const Eigen::MatrixXd none(100, 0);
  const auto d = build_direct_design(y, none, {}, 4, 2);
  CHECK(d.rows() == 95);
  CHECK(d.width() == 3);
  for (Eigen::Index i = 0; i < d.rows(); ++i) {
    const auto t = static_cast<Eigen::Index>(d.origin_index[static_cast<std::size_t>(i)]);
    CHECK(d.targets(i) == y(t + 4));
    CHECK(d.regressors(i, 1) == y(t));
    CHECK(d.regressors(i, 2) == y(t - 1));
  }
  CHECK(build_direct_design(Eigen::VectorXd::Ones(4), Eigen::MatrixXd(4, 0), {}, 1, 2).rows() == 2);
  CHECK_THROWS_AS(build_direct_design(Eigen::VectorXd::Ones(3), Eigen::MatrixXd(3, 0), {}, 1, 2),
                  InsufficientDataError);
  CHECK_THROWS_AS(build_direct_design(y, none, {}, 0, 2), ArgumentError);
}

TEST_CASE("direct design never looks ahead") {
  Eigen::VectorXd y = Eigen::VectorXd::LinSpaced(60, 1.0, 60.0);
  Eigen::MatrixXd X = Eigen::MatrixXd::Random(60, 3);
  for (std::size_t origin : {5u, 20u, 41u, 59u}) {
    const Eigen::VectorXd before = regressor_row(y, X, origin);
    Eigen::VectorXd y2 = y;
    Eigen::MatrixXd X2 = X;
    for (Eigen::Index t = static_cast<Eigen::Index>(origin) + 1; t < 60; ++t) {
      y2(t) += 1000.0;
      X2.row(t).array() -= 50.0;
    }
    CHECK(regressor_row(y2, X2, origin) == before);
  }
}

TEST_CASE("rolling windows") {
  CHECK(rolling_windows(340, 128, 1).splits.size() == 212);
  CHECK(rolling_windows(130, 128, 1).splits.size() == 2);
  CHECK(rolling_windows(340, 128, 12).splits.size() == 201);
  CHECK_THROWS_AS(rolling_windows(129, 128, 1), InsufficientDataError);

  for (int h : {1, 4, 8, 12}) {
    const auto plan = rolling_windows(340, 128, h);
    for (std::size_t k = 0; k < plan.splits.size(); ++k) {
      const Split& s = plan.splits[k];
      CHECK(s.train_begin == k);
      CHECK(s.origin == 127 + k);
      CHECK(s.target == s.origin + static_cast<std::size_t>(h));
      const RowRange r = training_rows(s, h, 2);
      CHECK(r.size() == 127 - static_cast<std::size_t>(h));
      // Row i has origin i + 1; its regressors start at i and its target is origin + h.
      CHECK(r.first >= s.train_begin);
      CHECK(r.last - 1 + 1 + static_cast<std::size_t>(h) <= s.origin);
    }
  }
  const auto exp = rolling_windows(200, 100, 1, WindowScheme::kExpanding);
  CHECK(exp.splits.back().train_begin == 0);
  CHECK(training_rows(exp.splits.back(), 1, 2).size() > training_rows(exp.splits.front(), 1, 2).size());
}

TEST_CASE("subsample mask") {
  const auto dates = months({1996, 1}, 340);
  const auto full = subsample_mask(dates, dates.front(), dates.back());
  CHECK(std::count(full.begin(), full.end(), true) == 340);
  const auto one = subsample_mask(dates, {2000, 3}, {2000, 3});
  CHECK(std::count(one.begin(), one.end(), true) == 1);
  const auto pandemic = subsample_mask(dates, {2019, 12}, {2023, 5});
  CHECK(std::count(pandemic.begin(), pandemic.end(), true) == 42);
  CHECK_THROWS_AS(subsample_mask(dates, {2023, 5}, {2019, 12}), ArgumentError);
}
