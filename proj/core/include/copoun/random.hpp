#pragma once

#include <cstdint>
#include <random>

namespace copoun {

/// Seeded random stream. The engine is std::mt19937_64, whose output
/// sequence is fixed by the standard; every variate transform below is
/// implemented here so draws are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }

  /// Independent stream for replication `index`, derived deterministically.
  Rng split(std::uint64_t index) const;

  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform();
  double normal();
  double exponential(double rate);
  /// Marsaglia-Tsang squeeze; shape < 1 is boosted via U^(1/shape).
  double gamma(double shape, double rate);
  std::uint64_t poisson(double mean);
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

}  // namespace copoun
