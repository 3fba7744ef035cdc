#include "hcause/rjmcmc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "hcause/gibbs.hpp"
#include "hcause/ibp.hpp"

namespace hcause {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_k_ratio(std::size_t num, std::size_t den) {
  if (num == 0) return kNegInf;
  return std::log(static_cast<double>(num)) - std::log(static_cast<double>(den));
}

MoveOutcome decide(double log_ratio, Rng& rng) {
  MoveOutcome out;
  out.acceptance = log_ratio >= 0.0 ? 1.0 : std::exp(log_ratio);
  out.accepted = out.acceptance >= 1.0 || rng.uniform() < out.acceptance;
  return out;
}

}  // namespace

KPrior KPrior::matching_ibp(double alpha, std::size_t N) {
  return shifted_poisson(alpha * harmonic(N));
}

double KPrior::log_pmf(std::size_t K) const {
  if (K == 0) return kNegInf;
  const double k1 = static_cast<double>(K - 1);
  switch (kind) {
    case Kind::kShiftedPoisson:
      if (mean == 0.0) return K == 1 ? 0.0 : kNegInf;
      return k1 * std::log(mean) - mean - std::lgamma(k1 + 1.0);
    case Kind::kGeometric:
      return std::log(q) + k1 * std::log1p(-q);
    case Kind::kUniformCap:
      return K <= cap ? -std::log(static_cast<double>(cap)) : kNegInf;
  }
  return kNegInf;
}

KPrior parse_k_prior(const std::string& spec, double alpha, std::size_t N) {
  if (spec.empty() || spec == "poisson") return KPrior::matching_ibp(alpha, N);
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  if (colon == std::string::npos) throw std::invalid_argument("K prior needs a value: " + spec);
  const std::string value = spec.substr(colon + 1);
  if (kind == "poisson") return KPrior::shifted_poisson(std::stod(value));
  if (kind == "geometric") return KPrior::geometric(std::stod(value));
  if (kind == "uniform") return KPrior::uniform_cap(std::stoul(value));
  throw std::invalid_argument("unknown K prior: " + spec);
}

std::size_t matching_y_rows(const BinaryMatrix& Y, std::span<const std::uint8_t> row) {
  std::size_t n = 0;
  for (std::size_t k = 0; k < Y.rows(); ++k)
    n += std::equal(row.begin(), row.end(), Y.row(k).begin(), Y.row(k).end());
  return n;
}

double birth_log_ratio(const FiniteState& fs, std::span<const std::uint8_t> proposed_y) {
  const SamplerState& s = fs.state;
  if (proposed_y.size() != s.T()) throw DimensionError("proposed Y row has wrong length");
  const std::size_t K = s.K();
  const double alpha = s.params().alpha;
  BinaryMatrix grown = s.Z();
  grown.append_zero_cols(1);
  double lr = log_prior_Z_finite(grown, K + 1, alpha) + fs.options.k_prior.log_pmf(K + 1) -
              log_prior_Z_finite(s.Z(), K, alpha) - fs.options.k_prior.log_pmf(K);
  lr -= log_k_ratio(s.k_plus(), K);
  if (fs.options.ratio == DimensionRatio::kPrinted) {
    const std::size_t delta = matching_y_rows(s.Y(), proposed_y) + 1;
    lr += log_k_ratio(delta, K + 1);
  }
  return lr;
}

double death_log_ratio(const FiniteState& fs, std::size_t k) {
  const SamplerState& s = fs.state;
  const std::size_t K = s.K();
  if (s.column_sum(k) != 0) throw std::logic_error("death move on a linked cause");
  if (K <= 1) return kNegInf;
  const double alpha = s.params().alpha;
  BinaryMatrix shrunk = s.Z();
  shrunk.erase_col(k);
  double lr = log_prior_Z_finite(shrunk, K - 1, alpha) + fs.options.k_prior.log_pmf(K - 1) -
              log_prior_Z_finite(s.Z(), K, alpha) - fs.options.k_prior.log_pmf(K);
  lr += log_k_ratio(s.k_plus(), K - 1);
  if (fs.options.ratio == DimensionRatio::kPrinted) {
    const std::size_t delta = matching_y_rows(s.Y(), s.Y().row(k));
    lr -= log_k_ratio(delta, K);
  }
  return lr;
}

MoveOutcome birth_acceptance(FiniteState& fs, std::span<const std::uint8_t> proposed_y,
                             Rng& rng) {
  const MoveOutcome out = decide(birth_log_ratio(fs, proposed_y), rng);
  if (out.accepted) {
    const std::size_t k = fs.state.K();
    fs.state.append_causes(1);
    for (std::size_t t = 0; t < proposed_y.size(); ++t) fs.state.set_y(k, t, proposed_y[t]);
  }
  return out;
}

MoveOutcome death_acceptance(FiniteState& fs, std::size_t k, Rng& rng) {
  const double lr = death_log_ratio(fs, k);
  if (lr == kNegInf) return {};
  const MoveOutcome out = decide(lr, rng);
  if (out.accepted) fs.state.erase_cause(k);
  return out;
}

double finite_theta(const FiniteState& fs, std::size_t i, std::size_t k) {
  const SamplerState& s = fs.state;
  const double a = s.params().alpha / static_cast<double>(s.K());
  const double others = static_cast<double>(s.column_sum(k) - s.Z()(i, k));
  const double N = static_cast<double>(s.N());
  if (fs.options.theta == ThetaDenominator::kPrinted)
    return std::clamp((others + a) / N, 0.0, 1.0);
  return (others + a) / (N + a);
}

bool finite_conditional_z(FiniteState& fs, std::size_t i, std::size_t k,
                          const BinaryMatrix& X, Rng& rng) {
  const double theta = finite_theta(fs, i, k);
  const bool v = rng.bernoulli(prob_one(z_entry_log_weights(fs.state, i, k, X, theta)));
  fs.state.set_z(i, k, v);
  return v;
}

void finite_gibbs_sweep(FiniteState& fs, const BinaryMatrix& X, Rng& rng) {
  SamplerState& s = fs.state;
  for (std::size_t i = 0; i < s.N(); ++i)
    for (std::size_t k = 0; k < s.K(); ++k) finite_conditional_z(fs, i, k, X, rng);
  for (std::size_t k = 0; k < s.K(); ++k)
    for (std::size_t t = 0; t < s.T(); ++t) gibbs_sample_y_entry(s, k, t, X, rng);
}

void rjmcmc_sweep(FiniteState& fs, const BinaryMatrix& X, Rng& rng) {
  SamplerState& s = fs.state;
  if (X.rows() != s.N() || X.cols() != s.T())
    throw DimensionError("X shape does not match the sampler state");
  if (s.K() == 0) throw std::logic_error("finite model needs K >= 1");
  const double p = s.params().p;
  std::vector<std::uint8_t> proposal(s.T());
  for (std::size_t i = 0; i < s.N(); ++i) {
    const std::size_t k = rng.index(s.K());
    if (s.column_sum(k) > 0) {
      for (auto& v : proposal) v = rng.bernoulli(p);
      birth_acceptance(fs, proposal, rng);
    } else {
      death_acceptance(fs, k, rng);
    }
    for (std::size_t kk = 0; kk < s.K(); ++kk) finite_conditional_z(fs, i, kk, X, rng);
    for (std::size_t kk = 0; kk < s.K(); ++kk)
      for (std::size_t t = 0; t < s.T(); ++t) gibbs_sample_y_entry(s, kk, t, X, rng);
  }
}

}  // namespace hcause
