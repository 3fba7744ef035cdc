#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace hcause {

// Seeded random source owned by a single chain. The uniform stream is
// built from raw mt19937_64 words so it is identical across standard
// libraries; gamma draws go through libstdc++/libc++ and are only
// reproducible on the same toolchain.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  bool bernoulli(double p) { return uniform() < p; }
  // Uniform integer in [0, n).
  std::size_t index(std::size_t n);

  // Poisson draw by inversion with sequential search.
  unsigned poisson(double mean);
  // Gamma(shape, rate).
  double gamma(double shape, double rate);
  double beta(double a, double b);

  // Samples an index with probability proportional to exp(log_weights).
  // Entries equal to -inf carry zero mass. Throws DegeneracyError when
  // every entry is -inf or any entry is NaN.
  std::size_t categorical_log(std::span<const double> log_weights);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer; used to derive independent per-task seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace hcause
