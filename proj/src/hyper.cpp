#include "hcause/hyper.hpp"

#include <cmath>

#include "hcause/ibp.hpp"

namespace hcause {

double sample_p(const BinaryMatrix& Y, Rng& rng) {
  const double ones = static_cast<double>(Y.total());
  const double cells = static_cast<double>(Y.rows() * Y.cols());
  return rng.beta(1.0 + ones, 1.0 + cells - ones);
}

double sample_alpha(std::size_t k_plus, std::size_t N, Rng& rng) {
  if (N == 0) throw std::invalid_argument("sample_alpha needs N >= 1");
  return rng.gamma(1.0 + static_cast<double>(k_plus), 1.0 + harmonic(N));
}

LikelihoodTally::LikelihoodTally(const SamplerState& state, const BinaryMatrix& X) {
  if (X.rows() != state.N() || X.cols() != state.T())
    throw DimensionError("X shape does not match the sampler state");
  for (std::size_t i = 0; i < state.N(); ++i)
    for (std::size_t t = 0; t < state.T(); ++t) {
      const auto c = static_cast<std::size_t>(state.active(i, t));
      if (c >= counts_.size()) counts_.resize(c + 1, {0, 0});
      ++counts_[c][X(i, t)];
    }
}

double LikelihoodTally::log_likelihood(const ModelParams& params) const {
  double total = 0.0;
  for (std::size_t c = 0; c < counts_.size(); ++c)
    for (int x = 0; x < 2; ++x)
      if (counts_[c][x]) total += counts_[c][x] * log_noisy_or(x, static_cast<int>(c), params);
  return total;
}

MhOutcome mh_step_rate(RateParam which, SamplerState& state, const BinaryMatrix& X,
                       Rng& rng, double step_size) {
  ModelParams current = state.params();
  double& slot = which == RateParam::kLambda ? current.lambda : current.epsilon;
  const double old_value = slot;
  const double proposed = old_value + rng.uniform(-step_size, step_size);
  if (!(proposed > 0.0 && proposed < 1.0)) return {old_value, false};

  const LikelihoodTally tally(state, X);
  const double before = tally.log_likelihood(current);
  slot = proposed;
  const double after = tally.log_likelihood(current);
  bool accept;
  if (std::isinf(before))
    accept = !std::isinf(after);  // leave an impossible state for any possible one
  else
    accept = after >= before || rng.uniform() < std::exp(after - before);
  if (!accept) return {old_value, false};
  state.set_params(current);
  return {proposed, true};
}

void update_hypers(SamplerState& state, const BinaryMatrix& X, Rng& rng,
                   const HyperOptions& options, HyperStats* stats) {
  if (!options.infer) return;
  const bool l = mh_step_rate(RateParam::kLambda, state, X, rng, options.lambda_step).accepted;
  const bool e = mh_step_rate(RateParam::kEpsilon, state, X, rng, options.epsilon_step).accepted;
  ModelParams next = state.params();
  next.p = sample_p(state.Y(), rng);
  if (options.update_alpha) next.alpha = sample_alpha(state.k_plus(), state.N(), rng);
  state.set_params(next);
  if (stats) {
    stats->lambda_accepts += l;
    stats->epsilon_accepts += e;
    ++stats->steps;
  }
}

}  // namespace hcause
