#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "shrinkcast/error.hpp"
#include "shrinkcast/predictive.hpp"
#include "shrinkcast/random.hpp"
#include "shrinkcast/scoring.hpp"

using namespace shrinkcast;

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// Closed-form CRPS of N(mu, s^2) at y.
double normal_crps(double mu, double s, double y) {
  const double z = (y - mu) / s;
  const double pdf = std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI);
  return s * (z * (2.0 * normal_cdf(z) - 1.0) + 2.0 * pdf - 1.0 / std::sqrt(M_PI));
}

std::array<double, 19> constant_grid(double v) {
  std::array<double, 19> q{};
  q.fill(v);
  return q;
}

}  // namespace

TEST_CASE("rmse and relative metric") {
  const std::vector<double> a{0.0, 0.0}, p{3.0, 4.0};
  CHECK(rmse(a, p) == doctest::Approx(3.5355339).epsilon(1e-7));
  CHECK(rmse(a, a) == 0.0);
  CHECK(relative_metric(1.7, 1.7) == 1.0);
  CHECK(relative_metric(1.0, 2.0) == 0.5);
  CHECK_THROWS_AS(relative_metric(1.0, 0.0), DomainError);
  CHECK_THROWS_AS(rmse(std::vector<double>{}, std::vector<double>{}), ArgumentError);
  CHECK_THROWS_AS(rmse(a, std::vector<double>{1.0}), ArgumentError);
}

TEST_CASE("quantile score") {
  CHECK(quantile_score(2.0, 2.0, 0.3) == 0.0);
  CHECK(quantile_score(1.0, 0.0, 0.95) == doctest::Approx(0.95));
  CHECK(quantile_score(0.0, 1.0, 0.95) == doctest::Approx(0.05));
  CHECK_THROWS_AS(quantile_score(0.0, 1.0, 1.0), ArgumentError);
  CHECK_THROWS_AS(quantile_score(0.0, 1.0, 0.0), ArgumentError);
  Rng r(1);
  for (int i = 0; i < 1000; ++i) CHECK(quantile_score(r.normal(), r.normal(), r.uniform()) >= 0.0);
}

TEST_CASE("scheme weights") {
  CHECK(to_string(parse_weight_scheme("centre")) == "centre");
  CHECK_THROWS_AS(parse_weight_scheme("middle"), ArgumentError);
  for (int j = 1; j < 20; ++j) {
    const double pi = j / 20.0;
    CHECK(scheme_weight(WeightScheme::kUniform, pi) == 1.0);
    CHECK(scheme_weight(WeightScheme::kRight, pi) + scheme_weight(WeightScheme::kLeft, pi) +
              2.0 * scheme_weight(WeightScheme::kCentre, pi) ==
          doctest::Approx(1.0).epsilon(1e-15));
  }
  CHECK(scheme_weight(WeightScheme::kTails, 0.5) == 0.0);
}

TEST_CASE("qwcrps") {
  for (auto s : kAllSchemes) CHECK(qwcrps(constant_grid(1.0), 1.0, s) == 0.0);
  CHECK(qwcrps(constant_grid(2.0), 1.0, WeightScheme::kUniform) == doctest::Approx(0.5).epsilon(1e-14));
  // The median term carries no weight under the tails scheme.
  std::array<double, 19> q{};
  for (std::size_t j = 0; j < 19; ++j) q[j] = static_cast<double>(j) - 9.0;
  auto moved = q;
  moved[9] = 0.5;
  CHECK(qwcrps(moved, 0.0, WeightScheme::kTails) == doctest::Approx(qwcrps(q, 0.0, WeightScheme::kTails)).epsilon(1e-15));
  CHECK(qwcrps(moved, 0.0, WeightScheme::kCentre) > qwcrps(q, 0.0, WeightScheme::kCentre));
  q[3] = 7.0;
  CHECK_THROWS_AS(qwcrps(q, 0.0, WeightScheme::kUniform), DataError);
  CHECK_THROWS_AS(qwcrps(std::vector<double>(18, 0.0), 0.0, WeightScheme::kUniform), ArgumentError);
}

TEST_CASE("crps from draws") {
  CHECK(crps_sample(std::vector<double>{1.0, 1.0}, 1.0) == 0.0);
  CHECK(crps_sample(std::vector<double>(10, 3.0), 1.0) == doctest::Approx(2.0));
  CHECK(crps_sample(std::vector<double>{0.0, 2.0}, 1.0) == doctest::Approx(0.5));
  CHECK_THROWS_AS(crps_sample(std::vector<double>{}, 1.0), ArgumentError);
  CHECK_THROWS_AS(crps_sample_pairwise(std::vector<double>{}, 1.0), ArgumentError);
  Rng r(3);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<double> d(200);
    for (auto& x : d) x = r.gamma(2.0, 1.0) - 1.0;
    const double y = r.normal();
    CHECK(crps_sample(d, y) == doctest::Approx(crps_sample_pairwise(d, y)).epsilon(1e-12));
  }
}

TEST_CASE("crps agrees with the normal closed form") {
  Rng r(5);
  std::vector<double> d(20000);
  for (auto& x : d) x = 1.0 + 2.0 * r.normal();
  CHECK(crps_sample(d, 0.3) == doctest::Approx(normal_crps(1.0, 2.0, 0.3)).epsilon(0.02));

  const auto cdf = [](double z) { return normal_cdf((z - 1.0) / 2.0); };
  const double tw = threshold_weighted_crps(cdf, 0.3, [](double) { return 1.0; }, -30.0, 30.0, 600000);
  CHECK(tw == doctest::Approx(normal_crps(1.0, 2.0, 0.3)).epsilon(1e-4));

  // Twice the uniform quantile average tracks CRPS up to the 19-point discretisation.
  const auto dens = make_predictive(Eigen::VectorXd::Constant(1, 1.0), Eigen::VectorXd::Constant(1, 4.0));
  const double approx = 2.0 * qwcrps(dens.quantiles, 0.3, WeightScheme::kUniform);
  CHECK(std::abs(approx / normal_crps(1.0, 2.0, 0.3) - 1.0) < 0.1);
  CHECK_THROWS_AS(threshold_weighted_crps(cdf, 0.0, [](double) { return 1.0; }, 1.0, 1.0, 10),
                  ArgumentError);
}

TEST_CASE("cumulative lpl") {
  const std::vector<double> m{1.0, 2.0, 3.0};
  for (double v : cumulative_lpl(m, m)) CHECK(v == 0.0);
  const std::vector<double> b{0.5, 1.5, 2.5};
  const auto ramp = cumulative_lpl(m, b);
  CHECK(ramp[0] == 0.5);
  CHECK(ramp[1] == 1.0);
  CHECK(ramp[2] == 1.5);
  const std::vector<YearMonth> d1{{2000, 1}, {2000, 2}, {2000, 3}};
  std::vector<YearMonth> d2 = d1;
  CHECK_NOTHROW(cumulative_lpl(m, b, d1, d2));
  d2[1] = {2000, 4};
  CHECK_THROWS_AS(cumulative_lpl(m, b, d1, d2), ArgumentError);
  CHECK_THROWS_AS(cumulative_lpl(m, std::vector<double>{1.0}), ArgumentError);

  Rng r(9);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> x(30), y(30);
    double diff = 0.0;
    for (int i = 0; i < 30; ++i) {
      x[static_cast<std::size_t>(i)] = r.normal();
      y[static_cast<std::size_t>(i)] = r.normal();
      diff += x[static_cast<std::size_t>(i)] - y[static_cast<std::size_t>(i)];
    }
    CHECK((cumulative_lpl(x, y).back() > 0.0) == (diff > 0.0));
  }
}

TEST_CASE("score table lookup") {
  ScoreTable t;
  ScoreRow row;
  row.model = "hs_large";
  row.horizon = 4;
  row.period = "full";
  row.metric = "qwcrps";
  row.scheme = "tails";
  row.value = 1.0;
  t.rows.push_back(row);
  CHECK(t.find("hs_large", 4, "full", "qwcrps", "tails") != nullptr);
  CHECK(t.find("hs_large", 4, "full", "qwcrps", "left") == nullptr);
  CHECK(t.find("hs_large", 1, "full", "qwcrps", "tails") == nullptr);
}
