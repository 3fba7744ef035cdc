#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <variant>
#include <vector>

#include "hcause/binary_matrix.hpp"

namespace hcause {

// Every outcome of a conditional draw had zero probability. This is a
// property of the model/data pair, not a programming error.
class DegeneracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ModelParams {
  double epsilon = 0.01;  // leak: P(x = 1) with no active cause
  double lambda = 0.9;    // per-cause transmission probability
  double p = 0.1;         // prevalence of each hidden cause on a trial
  double alpha = 3.0;     // IBP concentration

  // Throws std::invalid_argument if any field leaves its range.
  void validate() const;
  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

// P(x = 1) when `active_count` linked causes are on.
double noisy_or_prob(int active_count, const ModelParams& params);

// log P(x | active_count); -inf for impossible observations, never NaN.
double log_noisy_or(bool x, int active_count, const ModelParams& params);

// Precomputed log_noisy_or values for the common small counts.
class NoisyOrTable {
 public:
  NoisyOrTable() : NoisyOrTable(ModelParams{}) {}
  explicit NoisyOrTable(const ModelParams& params);

  double operator()(bool x, int count) const {
    if (count < kCached) return table_[x][count];
    return log_noisy_or(x, count, params_);
  }

 private:
  static constexpr int kCached = 32;
  ModelParams params_;
  std::array<std::array<double, kCached>, 2> table_{};
};

double log_likelihood(const BinaryMatrix& X, const BinaryMatrix& Z,
                      const BinaryMatrix& Y, const ModelParams& params);

double log_prior_Y(const BinaryMatrix& Y, double p);

// Beta(alpha/K, 1)-Bernoulli prior on an N x K matrix with theta integrated
// out. Z must have exactly K columns, empty ones included.
double log_prior_Z_finite(const BinaryMatrix& Z, std::size_t K, double alpha);

struct FinitePrior {
  std::size_t K;
};
struct IbpPrior {};
using ZPrior = std::variant<FinitePrior, IbpPrior>;

double log_joint(const BinaryMatrix& X, const BinaryMatrix& Z,
                 const BinaryMatrix& Y, const ModelParams& params,
                 const ZPrior& prior);

// One chain's mutable state. Keeps column sums and the per-cell active
// cause counts (Z * Y) in sync with every edit.
class SamplerState {
 public:
  SamplerState() = default;
  SamplerState(BinaryMatrix Z, BinaryMatrix Y, ModelParams params);
  // Empty state: N x 0 Z, 0 x T Y.
  static SamplerState empty(std::size_t N, std::size_t T, ModelParams params);

  const BinaryMatrix& Z() const { return Z_; }
  const BinaryMatrix& Y() const { return Y_; }
  const ModelParams& params() const { return params_; }
  const NoisyOrTable& table() const { return table_; }

  std::size_t N() const { return Z_.rows(); }
  std::size_t K() const { return Z_.cols(); }
  std::size_t T() const { return Y_.cols(); }
  // Columns with at least one link.
  std::size_t k_plus() const;

  std::size_t column_sum(std::size_t k) const { return column_sums_[k]; }
  const std::vector<std::size_t>& column_sums() const { return column_sums_; }
  int active(std::size_t i, std::size_t t) const { return active_[i * T() + t]; }

  void set_z(std::size_t i, std::size_t k, bool v);
  void set_y(std::size_t k, std::size_t t, bool v);
  void set_params(const ModelParams& params);

  // Appends `count` causes with empty Z columns and all-zero Y rows.
  void append_causes(std::size_t count);
  void erase_cause(std::size_t k);
  // Drops causes with no links, keeping the survivors' order and their
  // Z-column / Y-row pairing.
  void compact();

  // Recomputes every cache from scratch and compares; true when consistent.
  bool caches_consistent() const;

 private:
  BinaryMatrix Z_;
  BinaryMatrix Y_;
  ModelParams params_;
  NoisyOrTable table_;
  std::vector<std::size_t> column_sums_;
  std::vector<int> active_;
};

}  // namespace hcause
