#include "hcause/ibp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hcause {

double harmonic(std::size_t N) {
  double h = 0.0;
  for (std::size_t i = 1; i <= N; ++i) h += 1.0 / static_cast<double>(i);
  return h;
}

BinaryMatrix sample_ibp(std::size_t N, double alpha, Rng& rng) {
  if (N == 0) throw std::invalid_argument("sample_ibp needs at least one customer");
  if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be non-negative");
  // Build column-major, then transpose once at the end.
  std::vector<std::vector<std::uint8_t>> dishes;
  std::vector<std::size_t> taken;
  for (std::size_t i = 0; i < N; ++i) {
    const double customer = static_cast<double>(i + 1);
    for (std::size_t k = 0; k < dishes.size(); ++k) {
      if (rng.bernoulli(static_cast<double>(taken[k]) / customer)) {
        dishes[k][i] = 1;
        ++taken[k];
      }
    }
    const unsigned fresh = rng.poisson(alpha / customer);
    for (unsigned j = 0; j < fresh; ++j) {
      dishes.emplace_back(N, 0);
      dishes.back()[i] = 1;
      taken.push_back(1);
    }
  }
  BinaryMatrix Z(N, dishes.size());
  for (std::size_t k = 0; k < dishes.size(); ++k)
    for (std::size_t i = 0; i < N; ++i) Z.set(i, k, dishes[k][i]);
  return Z;
}

LofHistogram lof_histogram(const BinaryMatrix& Z) {
  LofHistogram hist;
  for (std::size_t k = 0; k < Z.cols(); ++k) {
    ColumnPattern pattern(Z.rows());
    bool any = false;
    for (std::size_t i = 0; i < Z.rows(); ++i) {
      pattern[i] = Z(i, k);
      any |= pattern[i] != 0;
    }
    if (!any) throw std::invalid_argument("lof_histogram: Z has an all-zero column");
    ++hist.counts[pattern];
  }
  hist.total_columns = Z.cols();
  return hist;
}

double log_prior_Z_ibp(const BinaryMatrix& Z, double alpha) {
  const std::size_t N = Z.rows();
  if (N == 0) throw std::invalid_argument("log_prior_Z_ibp needs N >= 1");
  if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be non-negative");
  const LofHistogram hist = lof_histogram(Z);
  const double k_plus = static_cast<double>(hist.total_columns);
  double lp = -alpha * harmonic(N);
  if (k_plus > 0)
    lp += alpha == 0.0 ? -std::numeric_limits<double>::infinity() : k_plus * std::log(alpha);
  for (const auto& [pattern, mult] : hist.counts) lp -= std::lgamma(mult + 1.0);
  const double log_n_fact = std::lgamma(N + 1.0);
  for (std::size_t m : Z.col_sums())
    lp += std::lgamma(static_cast<double>(N - m) + 1.0) + std::lgamma(static_cast<double>(m)) -
          log_n_fact;
  return lp;
}

}  // namespace hcause
