#include <doctest.h>

#include <cmath>
#include <numeric>

#include "hcause/harness.hpp"
#include "hcause/io.hpp"
#include "oracles.hpp"

using namespace hcause;
using doctest::Approx;

TEST_CASE("structure and in-degree errors hand values") {
  const auto Z_true = BinaryMatrix::from_rows({{1, 0}, {1, 1}, {0, 1}});
  // Perfect recovery.
  CHECK(structure_error(PosteriorSummary::point(Z_true), Z_true) == 0.0);
  CHECK(in_degree_error(PosteriorSummary::point(Z_true), Z_true) == 0.0);

  // Half the samples are the truth, half are empty.
  SummaryAccumulator acc(3);
  acc.add(Z_true, 2, 2);
  acc.add(BinaryMatrix(3, 0), 0, 0);
  const auto s = PosteriorSummary::from(acc);
  // Off-diagonal truth: (0,1)=1, (0,2)=0, (1,2)=1 -> errors 0.5 + 0 + 0.5.
  CHECK(structure_error(s, Z_true) == Approx(1.0));
  // Diagonal truth 1, 2, 1 -> 0.5 + 1 + 0.5.
  CHECK(in_degree_error(s, Z_true) == Approx(2.0));
  CHECK(s.mean_k_plus == Approx(1.0));

  const auto one = PosteriorSummary::point(BinaryMatrix::from_rows({{1}, {0}, {1}}));
  CHECK(structure_error(one, Z_true) == Approx(3.0));

  CHECK_THROWS_AS(structure_error(PosteriorSummary::point(BinaryMatrix(2, 1)), Z_true),
                  DimensionError);
}

TEST_CASE("summary needs samples") {
  SummaryAccumulator acc(2);
  CHECK_THROWS(PosteriorSummary::from(acc));
  CHECK_THROWS_AS(acc.add(BinaryMatrix(3, 1), 0, 1), DimensionError);
}

TEST_CASE("rejection sampling gives the requested K+ or gives up") {
  Rng rng(10);
  for (std::size_t k : {0, 1, 4}) CHECK(rejection_sample_Z(6, k, 3.0, rng, 100000).cols() == k);
  CHECK_THROWS_AS(rejection_sample_Z(6, 2, 0.0, rng, 500), ExhaustionError);
  CHECK_THROWS(rejection_sample_Z(6, 2, 1.0, rng, 0));
}

TEST_CASE("generate_dataset edge cases and leak rate") {
  Rng rng(11);
  const ModelParams pr{0.01, 0.9, 0.1, 3.0};
  auto empty = generate_dataset(BinaryMatrix(4, 0), 7, pr, rng);
  CHECK(empty.X.rows() == 4);
  CHECK(empty.X.cols() == 7);
  CHECK(empty.truth->Y.rows() == 0);
  auto none = generate_dataset(BinaryMatrix::identity(2), 0, pr, rng);
  CHECK(none.X.cols() == 0);

  // A single linked cause: P(x = 1) = p (1 - 0.1 * 0.99) + (1 - p) 0.01 = 0.0991.
  const int T = 200000;
  auto d = generate_dataset(BinaryMatrix::from_rows({{1}}), T, pr, rng);
  const double rate = static_cast<double>(d.X.total()) / T;
  CHECK(std::abs(rate - 0.0991) < 4 * std::sqrt(0.0991 * 0.9009 / T));
}

TEST_CASE("canonical structures") {
  CHECK(canonical_structure("degree1") == BinaryMatrix::identity(6));
  const auto disc = canonical_structure("disconnected");
  CHECK(disc.rows() == 8);
  CHECK(disc.cols() == 4);
  const auto under = canonical_structure("undercomplete");
  CHECK(under.rows() == 8);
  CHECK(under.cols() == 4);
  const auto over = canonical_structure("overcomplete");
  CHECK(over.rows() == 6);
  CHECK(over.cols() == 8);
  for (const auto& name : canonical_structure_names()) {
    const auto Z = canonical_structure(name);
    for (auto m : Z.col_sums()) CHECK(m > 0);
    for (std::size_t i = 0; i < Z.rows(); ++i) CHECK(Z.row_sum(i) > 0);
    CHECK(canonical_structure(name) == Z);
  }
  CHECK_THROWS_AS(canonical_structure("ring"), std::invalid_argument);
}

TEST_CASE("exact posterior oracle") {
  const ModelParams pr{0.05, 0.8, 0.3, 1.0};
  const auto X = BinaryMatrix::from_rows({{1, 0}, {1, 1}});
  const auto post = exact_posterior_oracle(X, 2, pr);
  CHECK(post.probs.size() == 256);
  CHECK(std::accumulate(post.probs.begin(), post.probs.end(), 0.0) == Approx(1.0));
  CHECK(std::accumulate(post.k_plus_probs.begin(), post.k_plus_probs.end(), 0.0) ==
        Approx(1.0));

  // Evidence against direct sums with the test-side formulas.
  double evidence = 0.0;
  oracle::for_each_matrix(2, 2, [&](const BinaryMatrix& Z) {
    oracle::for_each_matrix(2, 2, [&](const BinaryMatrix& Y) {
      evidence += oracle::finite_prior_direct(Z, pr.alpha) *
                  std::pow(pr.p, Y.total()) * std::pow(1 - pr.p, 4.0 - Y.total()) *
                  oracle::likelihood_direct(X, Z, Y, pr.lambda, pr.epsilon);
    });
  });
  CHECK(post.log_evidence == Approx(std::log(evidence)).epsilon(1e-12));

  // With lambda = 0 and epsilon = 0.5, the data say nothing about Z or Y.
  const auto flat = exact_posterior_oracle(X, 1, {0.5, 0.0, 0.5, 1.0});
  // K = 1, alpha = 1: marginally P(z = 1) = a / (1 + a) = 1/2.
  CHECK(flat.z_marginals[0] == Approx(0.5));
  CHECK(flat.log_evidence == Approx(4 * std::log(0.5)));
  for (std::size_t j = 0; j < 4; ++j) {
    BinaryMatrix Z(2, 1), Y(1, 2);
    Z.set(0, 0, j & 1);
    Z.set(1, 0, j & 2);
    const double prior_z = oracle::finite_prior_direct(Z, 1.0);
    CHECK(flat.probs[flat.encode(Z, Y)] == Approx(prior_z * 0.25).epsilon(1e-12));
  }
  CHECK_THROWS(exact_posterior_oracle(X, 12, pr));
}

TEST_CASE("shipped structure files match the built-in structures") {
  for (const auto& name : canonical_structure_names()) {
    const auto path = std::string(HCAUSE_DATA_DIR) + "/structures/" + name + ".csv";
    CHECK_MESSAGE(read_matrix_csv(path) == canonical_structure(name), name);
  }
}
