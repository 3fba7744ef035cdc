#include "hcause/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "hcause/ibp.hpp"

namespace hcause {

void SummaryAccumulator::add(const BinaryMatrix& Z, std::size_t k_plus, std::size_t k) {
  if (Z.rows() != N_) throw DimensionError("sample has the wrong number of rows");
  const auto g = Z.gram();
  for (std::size_t j = 0; j < zzt_.size(); ++j) zzt_[j] += g[j];
  k_plus_sum_ += static_cast<double>(k_plus);
  k_sum_ += static_cast<double>(k);
  ++count_;
}

PosteriorSummary PosteriorSummary::from(const SummaryAccumulator& acc) {
  if (acc.count_ == 0) throw std::logic_error("posterior summary needs at least one sample");
  PosteriorSummary s;
  const double n = static_cast<double>(acc.count_);
  s.N = acc.N_;
  s.sample_count = acc.count_;
  s.mean_k_plus = acc.k_plus_sum_ / n;
  s.mean_k = acc.k_sum_ / n;
  s.mean_zzt.resize(acc.zzt_.size());
  for (std::size_t j = 0; j < acc.zzt_.size(); ++j) s.mean_zzt[j] = acc.zzt_[j] / n;
  return s;
}

PosteriorSummary PosteriorSummary::point(const BinaryMatrix& Z) {
  SummaryAccumulator acc(Z.rows());
  std::size_t kp = 0;
  for (auto m : Z.col_sums()) kp += m > 0;
  acc.add(Z, kp, Z.cols());
  return from(acc);
}

BinaryMatrix rejection_sample_Z(std::size_t N, std::size_t k_target, double alpha, Rng& rng,
                                std::size_t max_tries) {
  if (max_tries == 0) throw std::invalid_argument("max_tries must be at least 1");
  for (std::size_t attempt = 0; attempt < max_tries; ++attempt) {
    BinaryMatrix Z = sample_ibp(N, alpha, rng);
    if (Z.cols() == k_target) return Z;
  }
  std::ostringstream msg;
  msg << "rejection sampling found no IBP draw with K+ = " << k_target << " in " << max_tries
      << " tries (acceptance rate below " << 1.0 / static_cast<double>(max_tries) << ")";
  throw ExhaustionError(msg.str());
}

Dataset generate_dataset(const BinaryMatrix& Z_true, std::size_t T, const ModelParams& params,
                         Rng& rng) {
  BinaryMatrix Y(Z_true.cols(), T);
  for (std::size_t k = 0; k < Y.rows(); ++k)
    for (std::size_t t = 0; t < T; ++t) Y.set(k, t, rng.bernoulli(params.p));
  const auto counts = Z_true.times(Y);
  BinaryMatrix X(Z_true.rows(), T);
  for (std::size_t i = 0; i < X.rows(); ++i)
    for (std::size_t t = 0; t < T; ++t)
      X.set(i, t, rng.bernoulli(noisy_or_prob(counts[i * T + t], params)));
  return {std::move(X), GroundTruth{Z_true, std::move(Y), params}};
}

namespace {

// Bernoulli(density) entries from a fixed seed until every row and column
// has an edge and no two columns coincide.
BinaryMatrix seeded_structure(std::size_t N, std::size_t K, double density,
                              std::uint64_t seed) {
  Rng rng(seed);
  for (;;) {
    BinaryMatrix Z(N, K);
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t k = 0; k < K; ++k) Z.set(i, k, rng.bernoulli(density));
    bool ok = true;
    for (std::size_t i = 0; i < N && ok; ++i) ok = Z.row_sum(i) > 0;
    for (std::size_t k = 0; k < K && ok; ++k) ok = Z.col_sum(k) > 0;
    const auto Zt = Z.transposed();
    for (std::size_t a = 0; a < K && ok; ++a)
      for (std::size_t b = a + 1; b < K && ok; ++b) ok = !std::ranges::equal(Zt.row(a), Zt.row(b));
    if (ok) return Z;
  }
}

}  // namespace

const std::vector<std::string>& canonical_structure_names() {
  static const std::vector<std::string> names{"degree1", "disconnected", "undercomplete",
                                              "overcomplete"};
  return names;
}

BinaryMatrix canonical_structure(const std::string& name) {
  if (name == "degree1") return BinaryMatrix::identity(6);
  if (name == "disconnected") {
    // Causes 0-1 feed rows 0-3, causes 2-3 feed rows 4-7.
    return BinaryMatrix::from_rows({{1, 0, 0, 0},
                                    {1, 1, 0, 0},
                                    {1, 1, 0, 0},
                                    {0, 1, 0, 0},
                                    {0, 0, 1, 0},
                                    {0, 0, 1, 1},
                                    {0, 0, 1, 1},
                                    {0, 0, 0, 1}});
  }
  if (name == "undercomplete") return seeded_structure(8, 4, 0.4, 20070401);
  if (name == "overcomplete") return seeded_structure(6, 8, 0.35, 20070402);
  throw std::invalid_argument("unknown structure '" + name +
                              "' (expected degree1, disconnected, undercomplete, overcomplete)");
}

namespace {

void check_summary_shape(const PosteriorSummary& s, const BinaryMatrix& Z_true) {
  if (s.N != Z_true.rows() || s.mean_zzt.size() != s.N * s.N)
    throw DimensionError("summary covers " + std::to_string(s.N) +
                         " observed variables but the truth has " +
                         std::to_string(Z_true.rows()));
}

}  // namespace

double in_degree_error(const PosteriorSummary& summary, const BinaryMatrix& Z_true) {
  check_summary_shape(summary, Z_true);
  const auto g = Z_true.gram();
  double err = 0.0;
  for (std::size_t i = 0; i < summary.N; ++i)
    err += std::abs(g[i * summary.N + i] - summary.zzt(i, i));
  return err;
}

double structure_error(const PosteriorSummary& summary, const BinaryMatrix& Z_true) {
  check_summary_shape(summary, Z_true);
  const auto g = Z_true.gram();
  double err = 0.0;
  for (std::size_t a = 0; a < summary.N; ++a)
    for (std::size_t b = a + 1; b < summary.N; ++b)
      err += std::abs(g[a * summary.N + b] - summary.zzt(a, b));
  return err;
}

std::uint64_t ExactPosterior::encode(const BinaryMatrix& Z, const BinaryMatrix& Y) const {
  if (Z.rows() != N || Z.cols() != K || Y.rows() != K || Y.cols() != T)
    throw DimensionError("state shape does not match the enumerated space");
  std::uint64_t code = 0;
  std::size_t bit = 0;
  for (auto v : Z.data()) code |= std::uint64_t{v} << bit++;
  for (auto v : Y.data()) code |= std::uint64_t{v} << bit++;
  return code;
}

ExactPosterior exact_posterior_oracle(const BinaryMatrix& X, std::size_t K,
                                      const ModelParams& params, std::uint64_t max_states) {
  ExactPosterior out;
  out.N = X.rows();
  out.T = X.cols();
  out.K = K;
  const std::size_t z_bits = out.N * K;
  const std::size_t y_bits = K * out.T;
  if (z_bits + y_bits >= 63 || (std::uint64_t{1} << (z_bits + y_bits)) > max_states)
    throw std::invalid_argument("enumeration needs 2^" + std::to_string(z_bits + y_bits) +
                                " states, above the cap of " + std::to_string(max_states));
  const std::uint64_t n_z = std::uint64_t{1} << z_bits;
  const std::uint64_t n_y = std::uint64_t{1} << y_bits;

  std::vector<double> log_joint_values(n_z * n_y);
  BinaryMatrix Z(out.N, K), Y(K, out.T);
  for (std::uint64_t zc = 0; zc < n_z; ++zc) {
    for (std::size_t b = 0; b < z_bits; ++b) Z.set(b / K, b % K, (zc >> b) & 1);
    const double lz = log_prior_Z_finite(Z, K, params.alpha);
    for (std::uint64_t yc = 0; yc < n_y; ++yc) {
      for (std::size_t b = 0; b < y_bits; ++b) Y.set(b / out.T, b % out.T, (yc >> b) & 1);
      log_joint_values[zc | (yc << z_bits)] =
          lz + log_prior_Y(Y, params.p) + log_likelihood(X, Z, Y, params);
    }
  }

  double top = -std::numeric_limits<double>::infinity();
  for (double v : log_joint_values) top = std::max(top, v);
  if (top == -std::numeric_limits<double>::infinity())
    throw DegeneracyError("every (Z, Y) has zero probability under the model");
  double total = 0.0;
  out.probs.resize(log_joint_values.size());
  for (std::size_t j = 0; j < log_joint_values.size(); ++j) {
    out.probs[j] = std::exp(log_joint_values[j] - top);
    total += out.probs[j];
  }
  for (double& v : out.probs) v /= total;
  out.log_evidence = top + std::log(total);

  out.z_marginals.assign(out.N * K, 0.0);
  out.k_plus_probs.assign(K + 1, 0.0);
  for (std::uint64_t code = 0; code < out.probs.size(); ++code) {
    const double pr = out.probs[code];
    std::size_t k_plus = 0;
    for (std::size_t k = 0; k < K; ++k) {
      bool linked = false;
      for (std::size_t i = 0; i < out.N; ++i)
        if ((code >> (i * K + k)) & 1) {
          out.z_marginals[i * K + k] += pr;
          linked = true;
        }
      k_plus += linked;
    }
    out.k_plus_probs[k_plus] += pr;
  }
  return out;
}

}  // namespace hcause
