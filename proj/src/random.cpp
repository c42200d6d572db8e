#include "shrinkcast/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "shrinkcast/error.hpp"

namespace shrinkcast {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double gig_mode(double lambda, double omega) {
  if (lambda >= 1.0) return (std::sqrt((lambda - 1.0) * (lambda - 1.0) + omega * omega) + (lambda - 1.0)) / omega;
  return omega / (std::sqrt((1.0 - lambda) * (1.0 - lambda) + omega * omega) + (1.0 - lambda));
}

// Standardized GIG(lambda, omega) generators of Hörmann & Leydold (2014).
double gig_rou_noshift(Rng& rng, double lambda, double omega) {
  const double t = 0.5 * (lambda - 1.0);
  const double s = 0.25 * omega;
  const double xm = gig_mode(lambda, omega);
  const double nc = t * std::log(xm) - s * (xm + 1.0 / xm);
  const double ym = ((lambda + 1.0) + std::sqrt((lambda + 1.0) * (lambda + 1.0) + omega * omega)) / omega;
  const double um = std::exp(0.5 * (lambda + 1.0) * std::log(ym) - s * (ym + 1.0 / ym) - nc);
  double x;
  double v;
  do {
    const double u = um * rng.uniform();
    v = rng.uniform();
    x = u / v;
  } while (std::log(v) > t * std::log(x) - s * (x + 1.0 / x) - nc);
  return x;
}

double gig_new_approach(Rng& rng, double lambda, double omega) {
  const double xm = gig_mode(lambda, omega);
  const double x0 = omega / (1.0 - lambda);
  const double k0 = std::exp((lambda - 1.0) * std::log(xm) - 0.5 * omega * (xm + 1.0 / xm));
  double area[3];
  double k1;
  double k2;
  area[0] = k0 * x0;
  if (x0 >= 2.0 / omega) {
    k1 = 0.0;
    area[1] = 0.0;
    k2 = std::pow(x0, lambda - 1.0);
    area[2] = k2 * 2.0 * std::exp(-omega * x0 / 2.0) / omega;
  } else {
    k1 = std::exp(-omega);
    area[1] = lambda == 0.0 ? k1 * std::log(2.0 / (omega * omega))
                            : k1 / lambda * (std::pow(2.0 / omega, lambda) - std::pow(x0, lambda));
    k2 = std::pow(2.0 / omega, lambda - 1.0);
    area[2] = k2 * 2.0 * std::exp(-1.0) / omega;
  }
  const double total = area[0] + area[1] + area[2];
  for (;;) {
    double v = total * rng.uniform();
    double x;
    double hx;
    if (v <= area[0]) {
      x = x0 * v / area[0];
      hx = k0;
    } else if ((v -= area[0]) <= area[1]) {
      if (lambda == 0.0) {
        x = omega * std::exp(std::exp(omega) * v);
        hx = k1 / x;
      } else {
        x = std::pow(std::pow(x0, lambda) + (lambda / k1 * v), 1.0 / lambda);
        hx = k1 * std::pow(x, lambda - 1.0);
      }
    } else {
      v -= area[1];
      const double a = std::max(x0, 2.0 / omega);
      x = -2.0 / omega * std::log(std::exp(-omega / 2.0 * a) - omega / (2.0 * k2) * v);
      hx = k2 * std::exp(-omega / 2.0 * x);
    }
    const double u = rng.uniform() * hx;
    if (std::log(u) <= (lambda - 1.0) * std::log(x) - omega / 2.0 * (x + 1.0 / x)) return x;
  }
}

double gig_rou_shift(Rng& rng, double lambda, double omega) {
  const double t = 0.5 * (lambda - 1.0);
  const double s = 0.25 * omega;
  const double xm = gig_mode(lambda, omega);
  const double nc = t * std::log(xm) - s * (xm + 1.0 / xm);
  const double a = -(2.0 * (lambda + 1.0) / omega + xm);
  const double b = 2.0 * (lambda - 1.0) * xm / omega - 1.0;
  const double c = xm;
  const double p = b - a * a / 3.0;
  const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  const double fi = std::acos(-q / (2.0 * std::sqrt(-(p * p * p) / 27.0)));
  const double fak = 2.0 * std::sqrt(-p / 3.0);
  const double y1 = fak * std::cos(fi / 3.0) - a / 3.0;
  const double y2 = fak * std::cos(fi / 3.0 + 4.0 / 3.0 * std::numbers::pi) - a / 3.0;
  const double uplus = (y1 - xm) * std::exp(t * std::log(y1) - s * (y1 + 1.0 / y1) - nc);
  const double uminus = (y2 - xm) * std::exp(t * std::log(y2) - s * (y2 + 1.0 / y2) - nc);
  double x;
  double v;
  do {
    const double u = uminus + rng.uniform() * (uplus - uminus);
    v = rng.uniform();
    x = u / v + xm;
  } while (x <= 0.0 || std::log(v) > t * std::log(x) - s * (x + 1.0 / x) - nc);
  return x;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> coords) {
  std::uint64_t h = splitmix64(master);
  for (auto c : coords) h = splitmix64(h ^ splitmix64(c + 0x632be59bd9b4e019ULL));
  return h;
}

std::uint64_t stable_hash(const char* s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (; *s; ++s) {
    h ^= static_cast<unsigned char>(*s);
    h *= 0x100000001b3ULL;
  }
  return h;
}

double Rng::uniform() {
  // 53 random bits mapped to the open interval.
  const std::uint64_t bits = engine_() >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double Rng::gamma(double shape, double rate) {
  if (!(shape > 0.0) || !(rate > 0.0) || !std::isfinite(shape) || !std::isfinite(rate)) {
    throw InternalStateError("invalid gamma parameters shape=" + std::to_string(shape) +
                             " rate=" + std::to_string(rate));
  }
  std::gamma_distribution<double> dist(shape, 1.0);
  return dist(engine_) / rate;
}

double Rng::beta(double a, double b) {
  const double x = gamma(a, 1.0);
  const double y = gamma(b, 1.0);
  return x / (x + y);
}

double Rng::inverse_gaussian(double mean, double shape) {
  if (!(mean > 0.0) || !(shape > 0.0)) {
    throw InternalStateError("invalid inverse-Gaussian parameters mean=" + std::to_string(mean) +
                             " shape=" + std::to_string(shape));
  }
  const double nu = normal();
  const double y = nu * nu;
  // Smaller root of the quadratic, written without cancellation:
  // mean * (1 + a - sqrt(a^2 + 2a)) == mean / (1 + a + sqrt(a^2 + 2a)).
  const double a = mean * y / (2.0 * shape);
  const double x = mean / (1.0 + a + std::sqrt(a * (a + 2.0)));
  if (uniform() <= mean / (mean + x)) return x;
  return mean * (mean / x);
}

double Rng::gig(double lambda, double chi, double psi) {
  constexpr double kTiny = std::numeric_limits<double>::epsilon() * 10.0;
  if (!(chi >= 0.0) || !(psi >= 0.0) || !std::isfinite(lambda) || !std::isfinite(chi) ||
      !std::isfinite(psi) || (chi == 0.0 && lambda <= 0.0) || (psi == 0.0 && lambda >= 0.0)) {
    throw InternalStateError("invalid GIG parameters lambda=" + std::to_string(lambda) +
                             " chi=" + std::to_string(chi) + " psi=" + std::to_string(psi));
  }
  // Degenerate ends reduce to gamma / inverse-gamma laws.
  if (chi < kTiny && lambda > 0.0) return gamma(lambda, psi / 2.0);
  if (psi < kTiny && lambda < 0.0) return 1.0 / gamma(-lambda, chi / 2.0);
  const double abs_lambda = std::abs(lambda);
  const double alpha = std::sqrt(chi / psi);
  const double omega = std::sqrt(psi * chi);
  double x;
  if (abs_lambda > 2.0 || omega > 3.0) {
    x = gig_rou_shift(*this, abs_lambda, omega);
  } else if (abs_lambda >= 1.0 - 2.25 * omega * omega || omega > 0.2) {
    x = gig_rou_noshift(*this, abs_lambda, omega);
  } else {
    x = gig_new_approach(*this, abs_lambda, omega);
  }
  return lambda < 0.0 ? alpha / x : alpha * x;
}

std::size_t Rng::categorical_log(const double* logw, std::size_t n) {
  double mx = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) mx = std::max(mx, logw[i]);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) total += std::exp(logw[i] - mx);
  double u = uniform() * total;
  for (std::size_t i = 0; i < n; ++i) {
    u -= std::exp(logw[i] - mx);
    if (u <= 0.0) return i;
  }
  return n - 1;
}

}  // namespace shrinkcast
