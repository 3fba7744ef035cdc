#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "hcause/binary_matrix.hpp"
#include "hcause/model.hpp"
#include "hcause/random.hpp"

namespace hcause {

// Draws p from its Beta(1 + S, 1 + K T - S) posterior under a Beta(1, 1)
// prior, where S counts the ones in Y.
double sample_p(const BinaryMatrix& Y, Rng& rng);

// Draws alpha from Gamma(shape 1 + K+, rate 1 + H_N): the Gamma(1, 1)
// prior times the alpha^{K+} exp(-alpha H_N) factor of the IBP.
double sample_alpha(std::size_t k_plus, std::size_t N, Rng& rng);

enum class RateParam { kLambda, kEpsilon };

// Counts of (x, active cause count) over every cell; enough to evaluate
// the likelihood for any (lambda, epsilon) without touching Z or Y.
class LikelihoodTally {
 public:
  LikelihoodTally(const SamplerState& state, const BinaryMatrix& X);
  double log_likelihood(const ModelParams& params) const;

 private:
  std::vector<std::array<std::size_t, 2>> counts_;
};

struct MhOutcome {
  double value = 0.0;
  bool accepted = false;
};

// Random-walk Metropolis step on lambda or epsilon under a flat prior.
// Proposals outside (0, 1) are rejected without evaluating the likelihood.
MhOutcome mh_step_rate(RateParam which, SamplerState& state, const BinaryMatrix& X,
                       Rng& rng, double step_size);

struct HyperOptions {
  bool infer = false;
  double lambda_step = 0.05;
  double epsilon_step = 0.01;
  // Alpha has a conjugate update only under the IBP prior.
  bool update_alpha = true;
};

struct HyperStats {
  std::size_t lambda_accepts = 0;
  std::size_t epsilon_accepts = 0;
  std::size_t steps = 0;
};

// One round of updates in the order lambda, epsilon, p, alpha.
void update_hypers(SamplerState& state, const BinaryMatrix& X, Rng& rng,
                   const HyperOptions& options, HyperStats* stats = nullptr);

}  // namespace hcause
