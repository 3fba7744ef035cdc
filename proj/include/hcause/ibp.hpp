#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "hcause/binary_matrix.hpp"
#include "hcause/random.hpp"

namespace hcause {

// H_N = sum_{i=1..N} 1/i, by direct summation.
double harmonic(std::size_t N);

// Draws Z from the Indian buffet process with N customers. Customer i
// (1-based) takes an existing dish with probability m_k / i, then
// Poisson(alpha / i) new dishes. Every returned column has a 1.
BinaryMatrix sample_ibp(std::size_t N, double alpha, Rng& rng);

// Column pattern read top to bottom; row 0 is the most significant bit,
// so lexicographic order on patterns is numeric order on h.
using ColumnPattern = std::vector<std::uint8_t>;

// Multiplicity K_h of each distinct non-zero column pattern.
struct LofHistogram {
  std::map<ColumnPattern, std::size_t> counts;
  std::size_t total_columns = 0;

  friend bool operator==(const LofHistogram&, const LofHistogram&) = default;
  friend auto operator<=>(const LofHistogram& a, const LofHistogram& b) {
    return a.counts <=> b.counts;
  }
};

// Throws std::invalid_argument if Z holds an all-zero column.
LofHistogram lof_histogram(const BinaryMatrix& Z);

// Log probability of the left-ordered-form class of Z under the IBP:
//   K+ log a - sum_h log K_h! - a H_N + sum_k [log (N-m_k)! + log (m_k-1)! - log N!]
double log_prior_Z_ibp(const BinaryMatrix& Z, double alpha);

}  // namespace hcause
