#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "shrinkcast/random.hpp"

using namespace shrinkcast;

namespace {

struct Moments {
  double mean = 0.0;
  double var = 0.0;
};

template <class F>
Moments sample(F&& f, int n) {
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = f();
    s += x;
    s2 += x * x;
  }
  const double m = s / n;
  return {m, s2 / n - m * m};
}

double bessel_k(double nu, double x) { return std::cyl_bessel_k(std::abs(nu), x); }

}  // namespace

TEST_CASE("seed derivation") {
  CHECK(derive_seed(1, {2, 3}) == derive_seed(1, {2, 3}));
  std::set<std::uint64_t> seen;
  for (std::uint64_t a = 0; a < 20; ++a) {
    for (std::uint64_t b = 0; b < 20; ++b) seen.insert(derive_seed(99, {a, b}));
  }
  CHECK(seen.size() == 400);
  CHECK(derive_seed(1, {2, 3}) != derive_seed(1, {3, 2}));
  CHECK(stable_hash("hs_large") == stable_hash("hs_large"));
  CHECK(stable_hash("hs_large") != stable_hash("hs+_large"));
  // FNV-1a offset basis for the empty string.
  CHECK(stable_hash("") == 0xcbf29ce484222325ULL);
}

TEST_CASE("same seed gives the same stream") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) {
    CHECK(a.normal() == b.normal());
    CHECK(a.gamma(0.7, 2.0) == b.gamma(0.7, 2.0));
    CHECK(a.gig(-0.3, 0.5, 1.2) == b.gig(-0.3, 0.5, 1.2));
  }
}

TEST_CASE("uniform stays inside the open interval") {
  Rng r(3);
  for (int i = 0; i < 100000; ++i) {
    const double u = r.uniform();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
  }
}

TEST_CASE("distribution moments") {
  Rng r(2024);
  const int n = 200000;
  SUBCASE("gamma shape/rate") {
    const auto m = sample([&] { return r.gamma(2.5, 4.0); }, n);
    CHECK(m.mean == doctest::Approx(2.5 / 4.0).epsilon(0.01));
    CHECK(m.var == doctest::Approx(2.5 / 16.0).epsilon(0.03));
  }
  SUBCASE("inverse gamma") {
    const auto m = sample([&] { return r.inv_gamma(5.0, 2.0); }, n);
    CHECK(m.mean == doctest::Approx(2.0 / 4.0).epsilon(0.01));
  }
  SUBCASE("beta") {
    const auto m = sample([&] { return r.beta(2.0, 5.0); }, n);
    CHECK(m.mean == doctest::Approx(2.0 / 7.0).epsilon(0.01));
  }
  SUBCASE("inverse gaussian") {
    const auto m = sample([&] { return r.inverse_gaussian(1.5, 3.0); }, n);
    CHECK(m.mean == doctest::Approx(1.5).epsilon(0.01));
    CHECK(m.var == doctest::Approx(1.5 * 1.5 * 1.5 / 3.0).epsilon(0.04));
  }
  SUBCASE("inverse gaussian with a huge mean stays finite") {
    for (int i = 0; i < 1000; ++i) {
      const double x = r.inverse_gaussian(1e8, 0.5);
      REQUIRE(std::isfinite(x));
      REQUIRE(x > 0.0);
    }
  }
  SUBCASE("exponential") {
    const auto m = sample([&] { return r.exponential(0.5); }, n);
    CHECK(m.mean == doctest::Approx(2.0).epsilon(0.01));
  }
}

TEST_CASE("GIG mean matches the Bessel-function formula") {
  struct Case {
    double lambda, chi, psi;
  };
  const Case cases[] = {{0.5, 1.0, 1.0},   {-0.5, 2.0, 1.0}, {1.5, 0.3, 2.0},
                        {-0.5, 0.01, 1.0}, {0.5, 4.0, 0.2},  {-1.2, 3.0, 0.7},
                        {2.0, 10.0, 10.0}, {0.1, 0.05, 0.05}};
  Rng r(11);
  for (const auto& c : cases) {
    const double w = std::sqrt(c.chi * c.psi);
    const double eta = std::sqrt(c.chi / c.psi);
    const double mean = eta * bessel_k(c.lambda + 1.0, w) / bessel_k(c.lambda, w);
    const double second = eta * eta * bessel_k(c.lambda + 2.0, w) / bessel_k(c.lambda, w);
    const auto m = sample([&] { return r.gig(c.lambda, c.chi, c.psi); }, 200000);
    const double se = std::sqrt((second - mean * mean) / 200000.0);
    CAPTURE(c.lambda);
    CAPTURE(c.chi);
    CAPTURE(c.psi);
    CHECK(std::abs(m.mean - mean) < 5.0 * se);
  }
}

TEST_CASE("GIG boundary cases reduce to gamma and inverse gamma") {
  Rng r(5);
  // chi = 0, lambda > 0: Gamma(lambda, psi / 2)
  auto g = sample([&] { return r.gig(1.5, 0.0, 2.0); }, 200000);
  CHECK(g.mean == doctest::Approx(1.5).epsilon(0.01));
  // psi = 0, lambda < 0: InvGamma(-lambda, chi / 2)
  auto ig = sample([&] { return r.gig(-3.0, 4.0, 0.0); }, 200000);
  CHECK(ig.mean == doctest::Approx(2.0 / 2.0).epsilon(0.01));
}

TEST_CASE("categorical from log weights") {
  Rng r(8);
  const double lw[3] = {std::log(0.2), std::log(0.5), std::log(0.3)};
  std::vector<int> counts(3);
  for (int i = 0; i < 100000; ++i) ++counts[r.categorical_log(lw, 3)];
  CHECK(counts[0] / 1e5 == doctest::Approx(0.2).epsilon(0.03));
  CHECK(counts[1] / 1e5 == doctest::Approx(0.5).epsilon(0.02));
  const double big[2] = {1000.0, 1000.0 + std::log(3.0)};
  int second = 0;
  for (int i = 0; i < 20000; ++i) second += r.categorical_log(big, 2) == 1;
  CHECK(second / 2e4 == doctest::Approx(0.75).epsilon(0.03));
}
