#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "hcause/binary_matrix.hpp"
#include "hcause/model.hpp"
#include "hcause/random.hpp"

namespace hcause {

// Upper bound on causes created for one row in a single step.
inline constexpr unsigned kMaxNewCauses = 10;

// Unnormalized log weights {a = 0, a = 1} for z(i, k) given every other
// entry, with prior P(z = 1) = `prob_one`. Trials where cause k is off
// contribute equally to both and are left out.
std::array<double, 2> z_entry_log_weights(const SamplerState& state, std::size_t i,
                                          std::size_t k, const BinaryMatrix& X,
                                          double prob_one);

// Unnormalized log weights {a = 0, a = 1} for y(k, t); only rows linked
// to cause k enter the likelihood ratio.
std::array<double, 2> y_entry_log_weights(const SamplerState& state, std::size_t k,
                                          std::size_t t, const BinaryMatrix& X);

// P(value = 1) from a pair of log weights. Throws DegeneracyError when
// both are -inf.
double prob_one(const std::array<double, 2>& log_weights);

// P(x = 1) for a row whose existing causes leave `eta` = (1 - lambda)^count
// and which gains `k_new` causes whose activations are integrated out
// under the Bernoulli(p) prior.
double new_cause_activation_prob(double eta, unsigned k_new, const ModelParams& params);

// Resamples z(i, k) with prior weight m_{-i,k} / N. Requires m_{-i,k} > 0.
bool gibbs_sample_z_entry(SamplerState& state, std::size_t i, std::size_t k,
                          const BinaryMatrix& X, Rng& rng);

bool gibbs_sample_y_entry(SamplerState& state, std::size_t k, std::size_t t,
                          const BinaryMatrix& X, Rng& rng);

// Unnormalized log mass of K_new = 0..kMaxNewCauses for row i: a
// Poisson(alpha / N) prior times the marginal likelihood of row i.
std::vector<double> new_cause_log_weights(const SamplerState& state, std::size_t i,
                                          const BinaryMatrix& X);

// Draws K_new for row i, appends that many causes linked only to row i,
// seeds their activations from the prior and gives them one Gibbs pass.
unsigned sample_new_causes(SamplerState& state, std::size_t i, const BinaryMatrix& X,
                           Rng& rng);

// Removes causes with no links.
void compact_state(SamplerState& state);

// One full iteration of the collapsed sampler over rows, then Y, then
// compaction. Hyperparameters are left alone.
void gibbs_sweep(SamplerState& state, const BinaryMatrix& X, Rng& rng);

}  // namespace hcause
