#include <doctest.h>

#include <cmath>

#include "shrinkcast/error.hpp"
#include "shrinkcast/ucsv.hpp"

using namespace shrinkcast;

namespace {

GibbsConfig quick(std::uint64_t seed, std::size_t burn = 300, std::size_t keep = 400) {
  GibbsConfig c;
  c.n_burn = burn;
  c.n_keep = keep;
  c.seed = seed;
  return c;
}

}  // namespace

TEST_CASE("ucsv is deterministic given the seed") {
  Rng g(1);
  Eigen::VectorXd y(60);
  for (Eigen::Index t = 0; t < 60; ++t) y(t) = 2.0 + g.normal();
  const auto a = run_ucsv(y, quick(5, 20, 30));
  const auto b = run_ucsv(y, quick(5, 20, 30));
  CHECK(a.trend == b.trend);
  CHECK(a.log_vol_u == b.log_vol_u);
  CHECK(a.draws() == 30);
  Rng ra(3), rb(3);
  const auto fa = ucsv_forecast(a, 4, ra);
  const auto fb = ucsv_forecast(b, 4, rb);
  CHECK(fa.quantiles == fb.quantiles);
  CHECK(fa.draws == fb.draws);
}

TEST_CASE("trend of a constant series stays at the constant") {
  const Eigen::VectorXd y = Eigen::VectorXd::Constant(80, 3.0);
  const auto post = run_ucsv(y, quick(7));
  CHECK((post.trend_mean().array() - 3.0).abs().maxCoeff() < 0.05);
}

TEST_CASE("trend smooths white noise") {
  Rng g(11);
  Eigen::VectorXd y(150);
  for (Eigen::Index t = 0; t < 150; ++t) y(t) = 1.0 + g.normal();
  const auto tm = run_ucsv(y, quick(2)).trend_mean();
  const double sd_y = std::sqrt((y.array() - y.mean()).square().sum() / 149.0);
  const double sd_t = std::sqrt((tm.array() - tm.mean()).square().sum() / 149.0);
  CHECK(sd_t < 0.5 * sd_y);
  CHECK(std::abs(tm.mean() - 1.0) < 0.3);
}

TEST_CASE("trend follows a level shift") {
  Eigen::VectorXd y(120);
  Rng g(4);
  for (Eigen::Index t = 0; t < 120; ++t) y(t) = (t < 60 ? 0.0 : 5.0) + 0.2 * g.normal();
  const auto tm = run_ucsv(y, quick(9)).trend_mean();
  CHECK(std::abs(tm(30)) < 0.5);
  CHECK(std::abs(tm(100) - 5.0) < 0.5);
}

TEST_CASE("forecast is centred on the last trend draw") {
  Rng g(2);
  Eigen::VectorXd y(60);
  for (Eigen::Index t = 0; t < 60; ++t) y(t) = 0.1 * t + g.normal();
  const auto post = run_ucsv(y, quick(8, 100, 200));
  Rng r(1);
  const auto d1 = ucsv_forecast(post, 1, r);
  CHECK(d1.mean() == doctest::Approx(post.trend.col(59).mean()).epsilon(1e-12));
  const auto d12 = ucsv_forecast(post, 12, r);
  CHECK(d12.variance() > d1.variance());
  CHECK(d12.draws.size() == 200);
  CHECK_THROWS_AS(ucsv_forecast(post, 0, r), ArgumentError);
}

TEST_CASE("ucsv input checks") {
  CHECK_THROWS_AS(run_ucsv(Eigen::VectorXd::Ones(23), quick(1)), InsufficientDataError);
  Eigen::VectorXd y = Eigen::VectorXd::Ones(40);
  y(5) = std::nan("");
  CHECK_THROWS_AS(run_ucsv(y, quick(1)), DataError);
}
