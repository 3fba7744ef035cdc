#include "hcause/random.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "hcause/model.hpp"

namespace hcause {

std::size_t Rng::index(std::size_t n) {
  if (n == 0) throw std::invalid_argument("Rng::index on empty range");
  // Rejection keeps the draw exactly uniform.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t u;
  do u = engine_();
  while (u >= limit);
  return static_cast<std::size_t>(u % n);
}

unsigned Rng::poisson(double mean) {
  if (!(mean >= 0.0)) throw std::invalid_argument("Poisson mean must be non-negative");
  if (mean == 0.0) return 0;
  const double u = uniform();
  double pmf = std::exp(-mean);
  double cdf = pmf;
  unsigned k = 0;
  while (u >= cdf) {
    ++k;
    pmf *= mean / k;
    cdf += pmf;
    // cdf can stall just below 1 from rounding; the tail mass there is
    // below double resolution.
    if (pmf == 0.0 && k > mean) break;
  }
  return k;
}

double Rng::gamma(double shape, double rate) {
  std::gamma_distribution<double> dist(shape, 1.0 / rate);
  return dist(engine_);
}

double Rng::beta(double a, double b) {
  const double x = gamma(a, 1.0);
  const double y = gamma(b, 1.0);
  return x / (x + y);
}

std::size_t Rng::categorical_log(std::span<const double> log_weights) {
  double top = -std::numeric_limits<double>::infinity();
  for (double w : log_weights) {
    if (std::isnan(w)) throw DegeneracyError("NaN weight in conditional draw");
    if (w > top) top = w;
  }
  if (top == -std::numeric_limits<double>::infinity())
    throw DegeneracyError("every outcome of a conditional draw has zero probability");
  std::vector<double> mass(log_weights.size());
  double total = 0.0;
  for (std::size_t j = 0; j < log_weights.size(); ++j) {
    mass[j] = std::exp(log_weights[j] - top);
    total += mass[j];
  }
  double u = uniform() * total;
  for (std::size_t j = 0; j < mass.size(); ++j) {
    if (u < mass[j]) return j;
    u -= mass[j];
  }
  // Rounding fallthrough: return the last outcome with positive mass.
  for (std::size_t j = mass.size(); j-- > 0;)
    if (mass[j] > 0.0) return j;
  return 0;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace hcause
