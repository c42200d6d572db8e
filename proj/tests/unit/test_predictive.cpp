#include <doctest.h>

#include <cmath>

#include "shrinkcast/error.hpp"
#include "shrinkcast/predictive.hpp"

using namespace shrinkcast;

TEST_CASE("quantile grid") {
  const auto& lv = quantile_levels();
  CHECK(lv.front() == doctest::Approx(0.05));
  CHECK(lv[9] == doctest::Approx(0.5));
  CHECK(lv.back() == doctest::Approx(0.95));
}

TEST_CASE("standard normal quantiles") {
  const auto d = make_predictive(Eigen::VectorXd::Zero(1), Eigen::VectorXd::Ones(1));
  CHECK(std::abs(d.quantiles[9]) < 1e-7);
  CHECK(d.quantiles[18] == doctest::Approx(1.6448536).epsilon(1e-7));
  CHECK(d.quantiles[0] == doctest::Approx(-1.6448536).epsilon(1e-7));
  CHECK(d.quantiles[1] == doctest::Approx(-1.2815516).epsilon(1e-7));
  for (std::size_t j = 1; j < kQuantileCount; ++j) CHECK(d.quantiles[j] >= d.quantiles[j - 1]);
  CHECK(predictive_logscore(d, 0.0) == doctest::Approx(-0.9189385332).epsilon(1e-10));
}

TEST_CASE("point-mass components collapse the grid") {
  const auto d = make_predictive(Eigen::VectorXd::Constant(5, 2.5), Eigen::VectorXd::Zero(5));
  for (double q : d.quantiles) CHECK(std::abs(q - 2.5) < 1e-7);
}

TEST_CASE("symmetric mixture") {
  Eigen::VectorXd m(2), v(2);
  m << -1.0, 1.0;
  v << 0.5, 0.5;
  const auto d = make_predictive(m, v);
  CHECK(std::abs(d.quantiles[9]) < 1e-7);
  for (std::size_t j = 0; j < kQuantileCount; ++j) {
    CHECK(d.quantiles[j] == doctest::Approx(-d.quantiles[kQuantileCount - 1 - j]).epsilon(1e-7));
    CHECK(mixture_cdf(m, v, d.quantiles[j]) == doctest::Approx(quantile_levels()[j]).epsilon(1e-7));
  }
  CHECK(d.variance() == doctest::Approx(1.5));
  // log of 0.5 N(0; -1, 0.5) + 0.5 N(0; 1, 0.5)
  CHECK(predictive_logscore(d, 0.0) == doctest::Approx(-0.5 * std::log(M_PI) - 1.0).epsilon(1e-12));
}

TEST_CASE("logscore survives far tails") {
  const auto d = make_predictive(Eigen::VectorXd::Zero(3), Eigen::VectorXd::Constant(3, 1e-4));
  const double ls = predictive_logscore(d, 1.0);
  CHECK(std::isfinite(ls));
  CHECK(ls == doctest::Approx(-0.5 * std::log(2 * M_PI * 1e-4) - 0.5 / 1e-4));
}

TEST_CASE("predictive from posterior draws") {
  PosteriorSample post;
  post.beta = Eigen::MatrixXd(2, 2);
  post.beta << 1.0, 2.0, 3.0, 4.0;
  post.sigma2 = Eigen::VectorXd::Constant(2, 0.25);
  Eigen::VectorXd x(2);
  x << 1.0, 0.5;
  const auto d = predictive_density(post, x, 1, false);
  CHECK(d.component_means(0) == 2.0);
  CHECK(d.component_means(1) == 5.0);
  CHECK(d.mean() == 3.5);
  CHECK_THROWS_AS(predictive_density(post, Eigen::VectorXd::Ones(3), 1, false), ArgumentError);
  CHECK_THROWS_AS(predictive_density(post, x, 1, true), ArgumentError);
  CHECK_THROWS_AS(predictive_density(post, x, 0, false), ArgumentError);

  post.sv_enabled = true;
  post.sv_terminal = Eigen::VectorXd::Constant(2, std::log(0.5));
  post.sv_sigma_eta2 = Eigen::VectorXd::Constant(2, 0.1);
  const auto s1 = predictive_density(post, x, 1, true);
  const auto s4 = predictive_density(post, x, 4, true);
  CHECK(s1.component_vars(0) == doctest::Approx(0.5 * std::exp(0.05)));
  CHECK(s4.component_vars(0) == doctest::Approx(0.5 * std::exp(0.2)));
}

TEST_CASE("mismatched inputs") {
  CHECK_THROWS_AS(make_predictive(Eigen::VectorXd(), Eigen::VectorXd()), ArgumentError);
  CHECK_THROWS_AS(make_predictive(Eigen::VectorXd::Zero(2), Eigen::VectorXd::Ones(3)), ArgumentError);
  CHECK_THROWS_AS(mixture_quantile(Eigen::VectorXd::Zero(1), Eigen::VectorXd::Ones(1), 1.0), ArgumentError);
}
