#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

#include "hcause/binary_matrix.hpp"
#include "hcause/model.hpp"
#include "hcause/random.hpp"

namespace hcause {

// Prior over the number of columns K >= 1 of the finite model.
struct KPrior {
  enum class Kind { kShiftedPoisson, kGeometric, kUniformCap };
  Kind kind = Kind::kShiftedPoisson;
  double mean = 1.0;      // kShiftedPoisson: K - 1 ~ Poisson(mean)
  double q = 0.5;         // kGeometric: P(K) = q (1 - q)^(K - 1)
  std::size_t cap = 10;   // kUniformCap: K uniform on 1..cap

  static KPrior shifted_poisson(double mean) { return {Kind::kShiftedPoisson, mean, 0.5, 0}; }
  static KPrior geometric(double q) { return {Kind::kGeometric, 1.0, q, 0}; }
  static KPrior uniform_cap(std::size_t cap) { return {Kind::kUniformCap, 1.0, 0.5, cap}; }
  // Shifted Poisson with mean alpha * H_N.
  static KPrior matching_ibp(double alpha, std::size_t N);

  double log_pmf(std::size_t K) const;
};

KPrior parse_k_prior(const std::string& spec, double alpha, std::size_t N);

// Which acceptance ratio the birth/death move uses.
//  kPrinted: the textbook form with delta / (K+1), where delta counts Y rows
//            equal to the proposed row (the move's reverse-path count).
//  kOrdered: the same move with the reverse-path count matched to the
//            column-ordered finite prior; delta / (K+1) drops out. This is the
//            version whose stationary law is the finite joint.
enum class DimensionRatio { kOrdered, kPrinted };

// Denominator used in the finite prior predictive for z(i, k).
//  kPredictive: (m + a) / (N + a), the Beta-Bernoulli predictive.
//  kPrinted:    (m + a) / N, clamped to [0, 1].
enum class ThetaDenominator { kPredictive, kPrinted };

struct RjmcmcOptions {
  KPrior k_prior;
  DimensionRatio ratio = DimensionRatio::kOrdered;
  ThetaDenominator theta = ThetaDenominator::kPredictive;
};

// Finite-model chain state; every column of Z is kept, empty or not.
struct FiniteState {
  SamplerState state;
  RjmcmcOptions options;

  std::size_t K() const { return state.K(); }
  std::size_t k_plus() const { return state.k_plus(); }
};

struct MoveOutcome {
  double acceptance = 0.0;
  bool accepted = false;
};

// Number of Y rows equal to `row`.
std::size_t matching_y_rows(const BinaryMatrix& Y, std::span<const std::uint8_t> row);

// Log of the ratio inside min(1, .) for appending an empty cause whose
// activations are `proposed_y`.
double birth_log_ratio(const FiniteState& fs, std::span<const std::uint8_t> proposed_y);
// Log of the ratio inside min(1, .) for deleting the unlinked cause k.
// -inf when K = 1 or when no linked cause remains.
double death_log_ratio(const FiniteState& fs, std::size_t k);

MoveOutcome birth_acceptance(FiniteState& fs, std::span<const std::uint8_t> proposed_y,
                             Rng& rng);
MoveOutcome death_acceptance(FiniteState& fs, std::size_t k, Rng& rng);

// Prior predictive P(z(i, k) = 1 | rest of column k) under the finite prior.
double finite_theta(const FiniteState& fs, std::size_t i, std::size_t k);

bool finite_conditional_z(FiniteState& fs, std::size_t i, std::size_t k,
                          const BinaryMatrix& X, Rng& rng);

// Fixed-K Gibbs sweep: every z(i, k), then every y(k, t).
void finite_gibbs_sweep(FiniteState& fs, const BinaryMatrix& X, Rng& rng);

// One iteration: per row, a birth or death proposal on a random column,
// then row i of Z, then all of Y.
void rjmcmc_sweep(FiniteState& fs, const BinaryMatrix& X, Rng& rng);

}  // namespace hcause
