#include "hcause/model.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "hcause/ibp.hpp"

namespace hcause {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

bool is_probability(double v) { return v >= 0.0 && v <= 1.0; }

}  // namespace

void ModelParams::validate() const {
  if (!is_probability(epsilon)) throw std::invalid_argument("epsilon must lie in [0, 1]");
  if (!is_probability(lambda)) throw std::invalid_argument("lambda must lie in [0, 1]");
  if (!is_probability(p)) throw std::invalid_argument("p must lie in [0, 1]");
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw std::invalid_argument("alpha must be positive and finite");
}

double noisy_or_prob(int active_count, const ModelParams& params) {
  return 1.0 - std::pow(1.0 - params.lambda, active_count) * (1.0 - params.epsilon);
}

double log_noisy_or(bool x, int active_count, const ModelParams& params) {
  const double off = std::pow(1.0 - params.lambda, active_count) * (1.0 - params.epsilon);
  if (x) return off >= 1.0 ? kNegInf : std::log1p(-off);
  return off <= 0.0 ? kNegInf : std::log(off);
}

NoisyOrTable::NoisyOrTable(const ModelParams& params) : params_(params) {
  for (int c = 0; c < kCached; ++c) {
    table_[0][c] = log_noisy_or(false, c, params);
    table_[1][c] = log_noisy_or(true, c, params);
  }
}

double log_likelihood(const BinaryMatrix& X, const BinaryMatrix& Z,
                      const BinaryMatrix& Y, const ModelParams& params) {
  if (Z.rows() != X.rows() || Z.cols() != Y.rows() || Y.cols() != X.cols())
    throw DimensionError("log_likelihood expects X (N x T), Z (N x K), Y (K x T)");
  const auto counts = Z.times(Y);
  const NoisyOrTable table(params);
  double total = 0.0;
  for (std::size_t i = 0; i < X.rows(); ++i)
    for (std::size_t t = 0; t < X.cols(); ++t)
      total += table(X(i, t), counts[i * X.cols() + t]);
  return total;
}

double log_prior_Y(const BinaryMatrix& Y, double p) {
  if (!is_probability(p)) throw std::invalid_argument("p must lie in [0, 1]");
  const std::size_t ones = Y.total();
  const std::size_t zeros = Y.rows() * Y.cols() - ones;
  // Skip empty terms so 0 * log(0) never appears.
  double total = 0.0;
  if (ones) total += ones * std::log(p);
  if (zeros) total += zeros * std::log1p(-p);
  return total;
}

double log_prior_Z_finite(const BinaryMatrix& Z, std::size_t K, double alpha) {
  if (Z.cols() != K) throw DimensionError("Z must have exactly K columns");
  if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be non-negative");
  if (K == 0) return 0.0;
  const double N = static_cast<double>(Z.rows());
  const double a = alpha / static_cast<double>(K);
  const double tail = std::lgamma(N + 1.0 + a);
  double total = 0.0;
  for (std::size_t m : Z.col_sums()) {
    const double md = static_cast<double>(m);
    // a * Gamma(a) = Gamma(a + 1) keeps the empty-column term finite at a -> 0.
    const double head = m == 0 ? std::lgamma(a + 1.0)
                               : (a == 0.0 ? kNegInf : std::log(a) + std::lgamma(md + a));
    total += head + std::lgamma(N - md + 1.0) - tail;
  }
  return total;
}

double log_joint(const BinaryMatrix& X, const BinaryMatrix& Z, const BinaryMatrix& Y,
                 const ModelParams& params, const ZPrior& prior) {
  const double z_term = std::visit(
      [&](const auto& pr) -> double {
        using P = std::decay_t<decltype(pr)>;
        if constexpr (std::is_same_v<P, FinitePrior>)
          return log_prior_Z_finite(Z, pr.K, params.alpha);
        else
          return log_prior_Z_ibp(Z, params.alpha);
      },
      prior);
  return log_likelihood(X, Z, Y, params) + log_prior_Y(Y, params.p) + z_term;
}

// SamplerState

SamplerState::SamplerState(BinaryMatrix Z, BinaryMatrix Y, ModelParams params)
    : Z_(std::move(Z)), Y_(std::move(Y)), params_(params), table_(params) {
  if (Z_.cols() != Y_.rows()) throw DimensionError("Z columns must match Y rows");
  column_sums_ = Z_.col_sums();
  active_ = Z_.times(Y_);
}

SamplerState SamplerState::empty(std::size_t N, std::size_t T, ModelParams params) {
  return SamplerState(BinaryMatrix(N, 0), BinaryMatrix(0, T), params);
}

std::size_t SamplerState::k_plus() const {
  std::size_t n = 0;
  for (auto m : column_sums_) n += m > 0;
  return n;
}

void SamplerState::set_z(std::size_t i, std::size_t k, bool v) {
  if (Z_(i, k) == v) return;
  Z_.set(i, k, v);
  const int delta = v ? 1 : -1;
  column_sums_[k] += delta;
  const std::size_t T_ = T();
  for (std::size_t t = 0; t < T_; ++t)
    if (Y_(k, t)) active_[i * T_ + t] += delta;
}

void SamplerState::set_y(std::size_t k, std::size_t t, bool v) {
  if (Y_(k, t) == v) return;
  Y_.set(k, t, v);
  const int delta = v ? 1 : -1;
  const std::size_t T_ = T();
  for (std::size_t i = 0; i < N(); ++i)
    if (Z_(i, k)) active_[i * T_ + t] += delta;
}

void SamplerState::set_params(const ModelParams& params) {
  params_ = params;
  table_ = NoisyOrTable(params);
}

void SamplerState::append_causes(std::size_t count) {
  Z_.append_zero_cols(count);
  Y_.append_zero_rows(count);
  column_sums_.resize(column_sums_.size() + count, 0);
}

void SamplerState::erase_cause(std::size_t k) {
  if (column_sums_.at(k) != 0) {
    for (std::size_t i = 0; i < N(); ++i) set_z(i, k, false);
  }
  Z_.erase_col(k);
  Y_.erase_row(k);
  column_sums_.erase(column_sums_.begin() + static_cast<std::ptrdiff_t>(k));
}

void SamplerState::compact() {
  std::vector<bool> keep(K());
  bool any_dropped = false;
  for (std::size_t k = 0; k < K(); ++k) {
    keep[k] = column_sums_[k] > 0;
    any_dropped |= !keep[k];
  }
  if (!any_dropped) return;
  Z_.keep_cols(keep);
  Y_.keep_rows(keep);
  std::vector<std::size_t> sums;
  for (std::size_t k = 0; k < keep.size(); ++k)
    if (keep[k]) sums.push_back(column_sums_[k]);
  column_sums_ = std::move(sums);
}

bool SamplerState::caches_consistent() const {
  return column_sums_ == Z_.col_sums() && active_ == Z_.times(Y_);
}

}  // namespace hcause
