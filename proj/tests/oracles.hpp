#pragma once

// Test-only reference computations. Nothing here calls the code paths it is
// used to check.

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "hcause/binary_matrix.hpp"

namespace hcause::oracle {

/// Calls fn on every N x K binary matrix.
inline void for_each_matrix(std::size_t N, std::size_t K,
                            const std::function<void(const BinaryMatrix&)>& fn) {
  const std::size_t bits = N * K;
  BinaryMatrix m(N, K);
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << bits); ++code) {
    for (std::size_t b = 0; b < bits; ++b) m.set(b / K, b % K, (code >> b) & 1);
    fn(m);
  }
}

/// P(x = 1) after summing over all 2^k_new activation patterns of the new
/// causes, each pattern weighted by its Bernoulli(p) prior.
inline double brute_force_new_cause_prob(double eta, unsigned k_new, double lambda, double p,
                                         double epsilon) {
  double total = 0.0;
  for (std::uint64_t pattern = 0; pattern < (std::uint64_t{1} << k_new); ++pattern) {
    int on = 0;
    double weight = 1.0;
    for (unsigned j = 0; j < k_new; ++j) {
      const bool bit = (pattern >> j) & 1;
      on += bit;
      weight *= bit ? p : 1.0 - p;
    }
    double off = eta * (1.0 - epsilon);
    for (int j = 0; j < on; ++j) off *= 1.0 - lambda;
    total += weight * (1.0 - off);
  }
  return total;
}

/// Direct product form of the finite Z prior, using tgamma.
inline double finite_prior_direct(const BinaryMatrix& Z, double alpha) {
  const double K = static_cast<double>(Z.cols());
  const double N = static_cast<double>(Z.rows());
  const double a = alpha / K;
  double prob = 1.0;
  for (std::size_t k = 0; k < Z.cols(); ++k) {
    double m = 0;
    for (std::size_t i = 0; i < Z.rows(); ++i) m += Z(i, k);
    prob *= a * std::tgamma(m + a) * std::tgamma(N - m + 1.0) / std::tgamma(N + 1.0 + a);
  }
  return prob;
}

/// Naive noisy-OR likelihood, looping over every cell and cause.
inline double likelihood_direct(const BinaryMatrix& X, const BinaryMatrix& Z,
                                const BinaryMatrix& Y, double lambda, double epsilon) {
  double prob = 1.0;
  for (std::size_t i = 0; i < X.rows(); ++i)
    for (std::size_t t = 0; t < X.cols(); ++t) {
      double off = 1.0 - epsilon;
      for (std::size_t k = 0; k < Z.cols(); ++k)
        if (Z(i, k) && Y(k, t)) off *= 1.0 - lambda;
      prob *= X(i, t) ? 1.0 - off : off;
    }
  return prob;
}

}  // namespace hcause::oracle
