#include "hcause/gibbs.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hcause {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double safe_log(double v) { return v <= 0.0 ? kNegInf : std::log(v); }

void check_shapes(const SamplerState& state, const BinaryMatrix& X) {
  if (X.rows() != state.N() || X.cols() != state.T())
    throw DimensionError("X shape does not match the sampler state");
}

}  // namespace

std::array<double, 2> z_entry_log_weights(const SamplerState& state, std::size_t i,
                                          std::size_t k, const BinaryMatrix& X,
                                          double prob_one) {
  const auto& table = state.table();
  const auto& Y = state.Y();
  const int own = state.Z()(i, k);
  std::array<double, 2> w{safe_log(1.0 - prob_one), safe_log(prob_one)};
  for (std::size_t t = 0; t < state.T(); ++t) {
    if (!Y(k, t)) continue;
    const int base = state.active(i, t) - own;
    const bool x = X(i, t);
    w[0] += table(x, base);
    w[1] += table(x, base + 1);
  }
  return w;
}

std::array<double, 2> y_entry_log_weights(const SamplerState& state, std::size_t k,
                                          std::size_t t, const BinaryMatrix& X) {
  const auto& table = state.table();
  const auto& Z = state.Z();
  const int own = state.Y()(k, t);
  const double p = state.params().p;
  std::array<double, 2> w{safe_log(1.0 - p), safe_log(p)};
  for (std::size_t i = 0; i < state.N(); ++i) {
    if (!Z(i, k)) continue;
    const int base = state.active(i, t) - own;
    const bool x = X(i, t);
    w[0] += table(x, base);
    w[1] += table(x, base + 1);
  }
  return w;
}

double prob_one(const std::array<double, 2>& w) {
  if (std::isnan(w[0]) || std::isnan(w[1])) throw DegeneracyError("NaN conditional weight");
  if (w[0] == kNegInf && w[1] == kNegInf)
    throw DegeneracyError("both values of a binary conditional have zero probability");
  if (w[1] == kNegInf) return 0.0;
  if (w[0] == kNegInf) return 1.0;
  // Logistic of the log-odds.
  return 1.0 / (1.0 + std::exp(w[0] - w[1]));
}

double new_cause_activation_prob(double eta, unsigned k_new, const ModelParams& params) {
  return 1.0 - (1.0 - params.epsilon) * eta *
                   std::pow(1.0 - params.lambda * params.p, static_cast<double>(k_new));
}

bool gibbs_sample_z_entry(SamplerState& state, std::size_t i, std::size_t k,
                          const BinaryMatrix& X, Rng& rng) {
  const std::size_t others = state.column_sum(k) - state.Z()(i, k);
  if (others == 0)
    throw std::logic_error("gibbs_sample_z_entry requires another row linked to the cause");
  const double theta = static_cast<double>(others) / static_cast<double>(state.N());
  const bool v = rng.bernoulli(prob_one(z_entry_log_weights(state, i, k, X, theta)));
  state.set_z(i, k, v);
  return v;
}

bool gibbs_sample_y_entry(SamplerState& state, std::size_t k, std::size_t t,
                          const BinaryMatrix& X, Rng& rng) {
  const bool v = rng.bernoulli(prob_one(y_entry_log_weights(state, k, t, X)));
  state.set_y(k, t, v);
  return v;
}

std::vector<double> new_cause_log_weights(const SamplerState& state, std::size_t i,
                                          const BinaryMatrix& X) {
  check_shapes(state, X);
  const ModelParams& params = state.params();
  const double rate = params.alpha / static_cast<double>(state.N());

  // Trials only differ through (x, active count); tally them once.
  std::vector<std::array<std::size_t, 2>> tally;
  for (std::size_t t = 0; t < state.T(); ++t) {
    const auto c = static_cast<std::size_t>(state.active(i, t));
    if (c >= tally.size()) tally.resize(c + 1, {0, 0});
    ++tally[c][X(i, t)];
  }

  std::vector<double> w(kMaxNewCauses + 1);
  for (unsigned kn = 0; kn <= kMaxNewCauses; ++kn) {
    double lw = kn == 0 ? -rate
                        : (rate == 0.0 ? kNegInf
                                       : kn * std::log(rate) - rate - std::lgamma(kn + 1.0));
    for (std::size_t c = 0; c < tally.size(); ++c) {
      const auto [n0, n1] = tally[c];
      if (n0 + n1 == 0) continue;
      const double eta = std::pow(1.0 - params.lambda, static_cast<double>(c));
      const double on = new_cause_activation_prob(eta, kn, params);
      if (n1) lw += n1 * safe_log(on);
      if (n0) lw += n0 * safe_log(1.0 - on);
    }
    w[kn] = lw;
  }
  return w;
}

unsigned sample_new_causes(SamplerState& state, std::size_t i, const BinaryMatrix& X,
                           Rng& rng) {
  const auto w = new_cause_log_weights(state, i, X);
  const auto k_new = static_cast<unsigned>(rng.categorical_log(w));
  if (k_new == 0) return 0;
  const std::size_t first = state.K();
  state.append_causes(k_new);
  for (std::size_t k = first; k < state.K(); ++k) state.set_z(i, k, true);
  const double p = state.params().p;
  for (std::size_t k = first; k < state.K(); ++k)
    for (std::size_t t = 0; t < state.T(); ++t) state.set_y(k, t, rng.bernoulli(p));
  for (std::size_t k = first; k < state.K(); ++k)
    for (std::size_t t = 0; t < state.T(); ++t) gibbs_sample_y_entry(state, k, t, X, rng);
  return k_new;
}

void compact_state(SamplerState& state) { state.compact(); }

void gibbs_sweep(SamplerState& state, const BinaryMatrix& X, Rng& rng) {
  check_shapes(state, X);
  std::vector<std::size_t> marked;
  for (std::size_t i = 0; i < state.N(); ++i) {
    marked.clear();
    for (std::size_t k = 0; k < state.K(); ++k) {
      const std::size_t others = state.column_sum(k) - state.Z()(i, k);
      if (others > 0)
        gibbs_sample_z_entry(state, i, k, X, rng);
      else
        marked.push_back(k);
    }
    for (std::size_t k : marked) state.set_z(i, k, false);
    sample_new_causes(state, i, X, rng);
  }
  for (std::size_t k = 0; k < state.K(); ++k)
    for (std::size_t t = 0; t < state.T(); ++t) gibbs_sample_y_entry(state, k, t, X, rng);
  state.compact();
}

}  // namespace hcause
