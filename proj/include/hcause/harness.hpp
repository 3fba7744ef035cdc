#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hcause/binary_matrix.hpp"
#include "hcause/model.hpp"
#include "hcause/random.hpp"

namespace hcause {

// Rejection sampling ran out of attempts.
class ExhaustionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GroundTruth {
  BinaryMatrix Z;
  BinaryMatrix Y;
  ModelParams params;
};

struct Dataset {
  BinaryMatrix X;
  std::optional<GroundTruth> truth;
};

// Running average of Z Z^T and K over posterior samples.
class SummaryAccumulator {
 public:
  explicit SummaryAccumulator(std::size_t N) : N_(N), zzt_(N * N, 0.0) {}
  // `k` is K for the finite model, K+ otherwise.
  void add(const BinaryMatrix& Z, std::size_t k_plus, std::size_t k);
  std::size_t count() const { return count_; }

  friend struct PosteriorSummary;

 private:
  std::size_t N_;
  std::size_t count_ = 0;
  double k_plus_sum_ = 0.0;
  double k_sum_ = 0.0;
  std::vector<double> zzt_;
};

struct PosteriorSummary {
  std::size_t N = 0;
  double mean_k_plus = 0.0;
  double mean_k = 0.0;
  std::vector<double> mean_zzt;  // N x N, row-major
  std::size_t sample_count = 0;

  static PosteriorSummary from(const SummaryAccumulator& acc);
  // Summary whose every sample equals Z.
  static PosteriorSummary point(const BinaryMatrix& Z);
  double zzt(std::size_t a, std::size_t b) const { return mean_zzt[a * N + b]; }
};

// Draws IBP matrices until one has exactly `k_target` columns.
BinaryMatrix rejection_sample_Z(std::size_t N, std::size_t k_target, double alpha, Rng& rng,
                                std::size_t max_tries);

// Y ~ Bernoulli(p) per entry, then X per entry from the noisy-OR.
Dataset generate_dataset(const BinaryMatrix& Z_true, std::size_t T, const ModelParams& params,
                         Rng& rng);

// degree1 (6 x 6 identity), disconnected (8 x 4, two blocks), undercomplete
// (8 x 4) and overcomplete (6 x 8). The random ones come from a fixed seed.
BinaryMatrix canonical_structure(const std::string& name);
const std::vector<std::string>& canonical_structure_names();

double in_degree_error(const PosteriorSummary& summary, const BinaryMatrix& Z_true);
double structure_error(const PosteriorSummary& summary, const BinaryMatrix& Z_true);

// Exact posterior over (Z, Y) for a fixed K, by enumeration under the
// finite prior. State codes pack Z row-major into the low N*K bits and Y
// row-major above them.
struct ExactPosterior {
  std::size_t N = 0, K = 0, T = 0;
  std::vector<double> probs;
  double log_evidence = 0.0;          // log sum_{Z,Y} P(X, Z, Y | K)
  std::vector<double> z_marginals;    // N x K, P(z(i,k) = 1)
  std::vector<double> k_plus_probs;   // index = K+

  std::uint64_t encode(const BinaryMatrix& Z, const BinaryMatrix& Y) const;
};

ExactPosterior exact_posterior_oracle(const BinaryMatrix& X, std::size_t K,
                                      const ModelParams& params,
                                      std::uint64_t max_states = std::uint64_t{1} << 22);

}  // namespace hcause
