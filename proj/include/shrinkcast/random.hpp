#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace shrinkcast {

// Mixes a master seed with stream coordinates (window, model, retry, ...) so
// each worker gets an independent, scheduling-order-free stream.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> coords);

// Hash of a string, stable across platforms (FNV-1a 64).
std::uint64_t stable_hash(const char* s);

// One sampler chain's random source. Not thread-safe; one per chain.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform();  // (0, 1), never 0 or 1
  double normal() { return normal_(engine_); }
  double normal(double mean, double sd) { return mean + sd * normal_(engine_); }
  double gamma(double shape, double rate);
  // X with 1/X ~ Gamma(shape, rate), i.e. density ∝ x^{-shape-1} exp(-rate/x).
  double inv_gamma(double shape, double rate) { return 1.0 / gamma(shape, rate); }
  double beta(double a, double b);
  bool bernoulli(double p) { return uniform() < p; }
  double exponential(double rate) { return -std::log(uniform()) / rate; }
  // Inverse Gaussian with given mean and shape (Michael, Schucany & Haas).
  double inverse_gaussian(double mean, double shape);
  // Generalized inverse Gaussian, density ∝ x^{lambda-1} exp(-(chi/x + psi*x)/2).
  double gig(double lambda, double chi, double psi);
  std::size_t categorical_log(const double* logw, std::size_t n);

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace shrinkcast
