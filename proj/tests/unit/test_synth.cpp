#include <doctest.h>

#include <cmath>

#include <nlohmann/json.hpp>

#include "shrinkcast/error.hpp"
#include "shrinkcast/synth.hpp"

using namespace shrinkcast;

TEST_CASE("default panel shape") {
  const auto d = make_synthetic({});
  CHECK(d.levels.rows() == 352);
  CHECK(d.levels.cols() == 56);
  CHECK(d.yoy.rows() == 340);
  CHECK(d.levels.dates().front() == YearMonth{1995, 1});
  CHECK(d.yoy.dates().front() == YearMonth{1996, 1});
  CHECK(d.yoy.dates().back() == YearMonth{2024, 4});
  CHECK(d.levels.names()[0] == "CPI");
  CHECK(d.levels.names()[55] == "X55");
  CHECK(d.true_names.size() == 5);
  for (auto c : d.true_columns) CHECK((c >= 1 && c < 56));
  CHECK((d.levels.values().array() > 0.0).all());
}

TEST_CASE("levels reproduce the rates") {
  const auto d = make_synthetic({});
  const auto back = d.levels.yoy();
  CHECK((back.values() - d.yoy.values()).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("same seed same panel") {
  SynthOptions o;
  o.seed = 3;
  const auto a = make_synthetic(o);
  const auto b = make_synthetic(o);
  CHECK(a.levels.values() == b.levels.values());
  CHECK(a.true_columns == b.true_columns);
  o.seed = 4;
  CHECK_FALSE(make_synthetic(o).levels.values() == a.levels.values());
}

TEST_CASE("target follows the stated equation") {
  SynthOptions o;
  o.length = 600;
  o.series = 10;
  o.sparsity = 3;
  const auto d = make_synthetic(o);
  const auto& v = d.yoy.values();
  // Regress y_t on 1, y_{t-1}, y_{t-2} and the lagged true predictors.
  const Eigen::Index n = v.rows() - 2;
  Eigen::MatrixXd X(n, 3 + 3);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index t = i + 2;
    X(i, 0) = 1.0;
    X(i, 1) = v(t - 1, 0);
    X(i, 2) = v(t - 2, 0);
    for (int k = 0; k < 3; ++k) X(i, 3 + k) = v(t - 1, static_cast<Eigen::Index>(d.true_columns[static_cast<std::size_t>(k)]));
    y(i) = v(t, 0);
  }
  const Eigen::VectorXd b = X.colPivHouseholderQr().solve(y);
  CHECK(b(1) == doctest::Approx(0.4).epsilon(0.15));
  for (int k = 0; k < 3; ++k) CHECK(b(3 + k) == doctest::Approx(d.coefficients[static_cast<std::size_t>(k)]).epsilon(0.1));
  const double resid_sd = std::sqrt((y - X * b).squaredNorm() / static_cast<double>(n - 6));
  CHECK(resid_sd == doctest::Approx(0.3).epsilon(0.1));
}

TEST_CASE("manifest") {
  const auto d = make_synthetic({});
  const auto j = nlohmann::json::parse(synth_manifest(d));
  CHECK(j["seed"] == 7);
  CHECK(j["true_predictors"].size() == 5);
  CHECK(j["true_predictors"][0] == d.true_names[0]);
}

TEST_CASE("bad options") {
  SynthOptions o;
  o.sparsity = 56;
  CHECK_THROWS_AS(make_synthetic(o), ArgumentError);
  o = {};
  o.length = 20;
  CHECK_THROWS_AS(make_synthetic(o), ArgumentError);
  o = {};
  o.series = 1;
  CHECK_THROWS_AS(make_synthetic(o), ArgumentError);
}
