#include <doctest.h>

#include <cmath>
#include <random>

#include "hcause/gibbs.hpp"
#include "hcause/harness.hpp"
#include "hcause/ibp.hpp"
#include "oracles.hpp"

using namespace hcause;
using doctest::Approx;

namespace {

const ModelParams kDefaults{0.01, 0.9, 0.1, 3.0};

// Row 0 is the row under test; row 1 holds the other link to cause 0.
SamplerState two_row_state(int x_row0, ModelParams params, BinaryMatrix& X) {
  X = BinaryMatrix::from_rows({{x_row0}, {1}});
  return SamplerState(BinaryMatrix::from_rows({{0}, {1}}), BinaryMatrix::from_rows({{1}}),
                      params);
}

}  // namespace

TEST_CASE("z conditional with lambda = 0 is the prior m/N") {
  BinaryMatrix X = BinaryMatrix::from_rows({{1, 0, 1}, {1, 1, 0}, {0, 0, 1}});
  SamplerState s(BinaryMatrix::from_rows({{1, 0}, {1, 1}, {0, 1}}),
                 BinaryMatrix::from_rows({{1, 1, 0}, {0, 1, 1}}), {0.2, 0.0, 0.3, 1.0});
  const double theta = 1.0 / 3.0;  // m_{-0,0} = 1, N = 3
  CHECK(prob_one(z_entry_log_weights(s, 0, 0, X, theta)) == Approx(theta).epsilon(1e-14));
}

TEST_CASE("z conditional hand values") {
  BinaryMatrix X;
  auto on = two_row_state(1, kDefaults, X);
  const double p_on = prob_one(z_entry_log_weights(on, 0, 0, X, 0.5));
  CHECK(p_on == Approx(0.5 * 0.901 / (0.5 * 0.901 + 0.5 * 0.01)).epsilon(1e-12));
  CHECK(p_on == Approx(0.98902).epsilon(1e-5));

  auto off = two_row_state(0, kDefaults, X);
  const double p_off = prob_one(z_entry_log_weights(off, 0, 0, X, 0.5));
  CHECK(p_off == Approx(0.5 * 0.099 / (0.5 * 0.099 + 0.5 * 0.99)).epsilon(1e-12));
}

TEST_CASE("gibbs_sample_z_entry frequencies match the two-point law") {
  BinaryMatrix X;
  auto s = two_row_state(1, kDefaults, X);
  Rng rng(4);
  const int n = 40000;
  int ones = 0;
  for (int j = 0; j < n; ++j) ones += gibbs_sample_z_entry(s, 0, 0, X, rng);
  const double expected = 0.5 * 0.901 / (0.5 * 0.901 + 0.5 * 0.01);
  CHECK(std::abs(ones / double(n) - expected) < 4 * std::sqrt(expected * (1 - expected) / n));
  CHECK(s.caches_consistent());
}

TEST_CASE("gibbs_sample_z_entry refuses a cause nobody else uses") {
  auto X = BinaryMatrix::from_rows({{1}, {0}});
  SamplerState s(BinaryMatrix::from_rows({{1}, {0}}), BinaryMatrix::from_rows({{1}}), kDefaults);
  Rng rng(1);
  CHECK_THROWS_AS(gibbs_sample_z_entry(s, 0, 0, X, rng), std::logic_error);
}

TEST_CASE("y conditional hand values") {
  SUBCASE("unlinked cause keeps the prior") {
    auto X = BinaryMatrix::from_rows({{1, 0}});
    SamplerState s(BinaryMatrix(1, 1), BinaryMatrix::from_rows({{0, 1}}), kDefaults);
    CHECK(prob_one(y_entry_log_weights(s, 0, 0, X)) == Approx(0.1).epsilon(1e-14));
  }
  SUBCASE("linked, observed on") {
    auto X = BinaryMatrix::from_rows({{1}});
    SamplerState s(BinaryMatrix::from_rows({{1}}), BinaryMatrix::from_rows({{0}}), kDefaults);
    CHECK(prob_one(y_entry_log_weights(s, 0, 0, X)) == Approx(0.0901 / 0.0991).epsilon(1e-12));
  }
  SUBCASE("linked, observed off") {
    auto X = BinaryMatrix::from_rows({{0}});
    SamplerState s(BinaryMatrix::from_rows({{1}}), BinaryMatrix::from_rows({{1}}), kDefaults);
    CHECK(prob_one(y_entry_log_weights(s, 0, 0, X)) ==
          Approx(0.1 * 0.099 / (0.1 * 0.099 + 0.9 * 0.99)).epsilon(1e-12));
  }
}

TEST_CASE("degenerate conditional raises instead of sampling") {
  auto X = BinaryMatrix::from_rows({{1}});
  // x = 1 needs the cause on (eps = 0) but p = 0 forbids it.
  SamplerState s(BinaryMatrix::from_rows({{1}}), BinaryMatrix::from_rows({{0}}),
                 {0.0, 0.9, 0.0, 1.0});
  Rng rng(1);
  CHECK_THROWS_AS(gibbs_sample_y_entry(s, 0, 0, X, rng), DegeneracyError);
}

TEST_CASE("collapsed new-cause activation agrees with brute force") {
  CHECK(new_cause_activation_prob(1.0, 2, kDefaults) == Approx(0.180181).epsilon(1e-12));
  CHECK(oracle::brute_force_new_cause_prob(1.0, 2, 0.9, 0.1, 0.01) ==
        Approx(0.81 * 0.01 + 0.18 * 0.901 + 0.01 * 0.9901).epsilon(1e-12));
  CHECK(new_cause_activation_prob(0.3, 0, kDefaults) == Approx(1 - 0.99 * 0.3));

  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 200; ++rep) {
    const ModelParams pr{u(gen), u(gen), u(gen), 1.0};
    const double eta = u(gen);
    for (unsigned k = 0; k <= 8; ++k) {
      const double closed = new_cause_activation_prob(eta, k, pr);
      const double brute = oracle::brute_force_new_cause_prob(eta, k, pr.lambda, pr.p, pr.epsilon);
      CHECK(std::abs(closed - brute) <= 1e-12 * std::max(std::abs(brute), 1e-300) + 1e-300);
    }
  }
}

TEST_CASE("without data K_new follows a truncated Poisson(alpha / N)") {
  const ModelParams pr{0.01, 0.9, 0.1, 6.0};
  SamplerState s = SamplerState::empty(3, 0, pr);
  BinaryMatrix X(3, 0);
  const auto w = new_cause_log_weights(s, 0, X);
  REQUIRE(w.size() == kMaxNewCauses + 1);
  const double rate = 2.0;
  for (unsigned k = 0; k <= kMaxNewCauses; ++k)
    CHECK(w[k] == Approx(k * std::log(rate) - rate - std::lgamma(k + 1.0)));

  Rng rng(8);
  std::vector<int> hits(kMaxNewCauses + 1, 0);
  const int n = 30000;
  for (int j = 0; j < n; ++j) {
    SamplerState fresh = SamplerState::empty(3, 0, pr);
    const unsigned k = sample_new_causes(fresh, 0, X, rng);
    ++hits[k];
    if (fresh.K() != k) FAIL("K_new and the appended column count disagree");
  }
  double norm = 0.0;
  for (double v : w) norm += std::exp(v);
  for (unsigned k = 0; k <= 5; ++k) {
    const double prob = std::exp(w[k]) / norm;
    CHECK(std::abs(hits[k] / double(n) - prob) < 4 * std::sqrt(prob * (1 - prob) / n) + 1e-4);
  }
}

TEST_CASE("the K_new = 0 weight is the plain noisy-OR row likelihood") {
  auto X = BinaryMatrix::from_rows({{1, 0, 1, 1}, {0, 1, 1, 0}});
  SamplerState s(BinaryMatrix::from_rows({{1}, {1}}), BinaryMatrix::from_rows({{1, 0, 0, 1}}),
                 kDefaults);
  const auto w = new_cause_log_weights(s, 0, X);
  double expected = -kDefaults.alpha / 2.0;
  for (std::size_t t = 0; t < 4; ++t) expected += log_noisy_or(X(0, t), s.active(0, t), kDefaults);
  CHECK(w[0] == Approx(expected).epsilon(1e-13));
}

TEST_CASE("new causes are linked to their row only") {
  auto X = BinaryMatrix::from_rows({{1, 1, 1, 1, 1, 1}, {0, 0, 0, 0, 0, 0}});
  Rng rng(3);
  SamplerState s = SamplerState::empty(2, 6, kDefaults);
  unsigned k_new = 0;
  for (int tries = 0; tries < 20 && k_new == 0; ++tries) k_new = sample_new_causes(s, 0, X, rng);
  REQUIRE(k_new > 0);
  CHECK(s.K() == k_new);
  for (std::size_t k = 0; k < s.K(); ++k) {
    CHECK(s.Z()(0, k) == 1);
    CHECK(s.Z()(1, k) == 0);
  }
  CHECK(s.caches_consistent());
}

TEST_CASE("compact_state drops unlinked causes only") {
  SamplerState s(BinaryMatrix::from_rows({{1, 1}, {0, 1}}), BinaryMatrix::from_rows({{1, 0}, {0, 1}}),
                 kDefaults);
  const SamplerState before = s;
  compact_state(s);
  CHECK(s.Z() == before.Z());
  CHECK(s.Y() == before.Y());
}

TEST_CASE("gibbs sweeps keep the state well formed and are seed-deterministic") {
  Rng data_rng(12);
  const BinaryMatrix Z_true = rejection_sample_Z(5, 3, 3.0, data_rng, 100000);
  const Dataset data = generate_dataset(Z_true, 60, kDefaults, data_rng);

  SamplerState a = SamplerState::empty(5, 60, kDefaults);
  SamplerState b = a;
  Rng ra(77), rb(77);
  for (int it = 0; it < 40; ++it) {
    gibbs_sweep(a, data.X, ra);
    gibbs_sweep(b, data.X, rb);
    REQUIRE(a.caches_consistent());
    for (auto m : a.column_sums()) CHECK(m >= 1);
    CHECK(a.Z() == b.Z());
    CHECK(a.Y() == b.Y());
  }
  CHECK(a.K() >= 1);
}
