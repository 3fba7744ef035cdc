#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "hcause/ibp.hpp"
#include "hcause/model.hpp"
#include "oracles.hpp"

using namespace hcause;
using doctest::Approx;

namespace {

ModelParams params(double eps, double lam, double p = 0.1, double alpha = 1.0) {
  return ModelParams{eps, lam, p, alpha};
}

BinaryMatrix random_matrix(std::size_t r, std::size_t c, std::mt19937& gen, double density = 0.5) {
  std::bernoulli_distribution bit(density);
  BinaryMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, bit(gen));
  return m;
}

}  // namespace

TEST_CASE("binary matrix basics") {
  auto m = BinaryMatrix::from_rows({{1, 0, 1}, {0, 0, 1}});
  CHECK(m.rows() == 2);
  CHECK(m.cols() == 3);
  CHECK(m.col_sums() == std::vector<std::size_t>{1, 0, 2});
  CHECK(m.row_sum(0) == 2);
  CHECK_THROWS_AS(BinaryMatrix::from_rows({{1, 0}, {1}}), DimensionError);
  CHECK_THROWS_AS(BinaryMatrix::from_rows({{2}}), std::invalid_argument);

  m.erase_col(1);
  CHECK(m == BinaryMatrix::from_rows({{1, 1}, {0, 1}}));
  m.append_zero_cols(1);
  CHECK(m == BinaryMatrix::from_rows({{1, 1, 0}, {0, 1, 0}}));
  CHECK(m.transposed().transposed() == m);
  CHECK(m.gram() == std::vector<int>{2, 1, 1, 1});
}

TEST_CASE("noisy_or_prob hand values") {
  CHECK(noisy_or_prob(0, params(0.01, 0.3)) == Approx(0.01));
  CHECK(noisy_or_prob(0, params(0.01, 1.0)) == Approx(0.01));
  CHECK(noisy_or_prob(1, params(0.01, 0.9)) == Approx(0.901));
  CHECK(noisy_or_prob(2, params(0.01, 0.9)) == Approx(0.9901));
}

TEST_CASE("noisy_or_prob is non-decreasing and stays in [eps, 1]") {
  for (double lam : {0.0, 0.1, 0.5, 0.9, 1.0})
    for (double eps : {0.0, 0.01, 0.5, 1.0}) {
      double prev = noisy_or_prob(0, params(eps, lam));
      CHECK(prev == Approx(eps));
      for (int c = 1; c < 12; ++c) {
        const double cur = noisy_or_prob(c, params(eps, lam));
        CHECK(cur >= prev);
        CHECK(cur >= eps - 1e-15);
        CHECK(cur <= 1.0);
        prev = cur;
      }
    }
}

TEST_CASE("log_noisy_or never produces NaN at the boundaries") {
  const double ninf = -std::numeric_limits<double>::infinity();
  CHECK(log_noisy_or(true, 0, params(0.0, 0.5)) == ninf);
  CHECK(log_noisy_or(false, 0, params(1.0, 0.5)) == ninf);
  CHECK(log_noisy_or(false, 1, params(0.0, 1.0)) == ninf);
  CHECK(log_noisy_or(false, 0, params(0.0, 1.0)) == 0.0);
  CHECK(log_noisy_or(true, 3, params(0.0, 1.0)) == 0.0);
}

TEST_CASE("log_likelihood hand values") {
  const ModelParams pr = params(0.01, 0.9);
  SUBCASE("all-zero X with no causes") {
    BinaryMatrix X(1, 2), Z(1, 0), Y(0, 2);
    CHECK(log_likelihood(X, Z, Y, pr) == Approx(2 * std::log(0.99)));
  }
  SUBCASE("single cell, one active cause") {
    auto X = BinaryMatrix::from_rows({{1}});
    auto Z = BinaryMatrix::from_rows({{1}});
    auto Y = BinaryMatrix::from_rows({{1}});
    CHECK(log_likelihood(X, Z, Y, pr) == Approx(std::log(0.901)));
  }
  SUBCASE("empty product") {
    CHECK(log_likelihood(BinaryMatrix(1, 0), BinaryMatrix(1, 0), BinaryMatrix(0, 0), pr) == 0.0);
  }
  SUBCASE("shape mismatch") {
    CHECK_THROWS_AS(log_likelihood(BinaryMatrix(2, 3), BinaryMatrix(2, 1), BinaryMatrix(2, 3), pr),
                    DimensionError);
  }
  SUBCASE("impossible observation gives -inf") {
    auto X = BinaryMatrix::from_rows({{1}});
    CHECK(std::isinf(log_likelihood(X, BinaryMatrix(1, 0), BinaryMatrix(0, 1), params(0.0, 0.9))));
  }
}

TEST_CASE("log_likelihood matches the naive product and splits over trials") {
  std::mt19937 gen(7);
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t N = 1 + gen() % 4, K = gen() % 4, T = 1 + gen() % 6;
    auto X = random_matrix(N, T, gen), Z = random_matrix(N, K, gen), Y = random_matrix(K, T, gen);
    std::uniform_real_distribution<double> u(0.01, 0.99);
    const ModelParams pr = params(u(gen), u(gen));
    const double whole = log_likelihood(X, Z, Y, pr);
    CHECK(whole == Approx(std::log(oracle::likelihood_direct(X, Z, Y, pr.lambda, pr.epsilon))));
    const std::size_t cut = gen() % (T + 1);
    const double parts = log_likelihood(X.col_range(0, cut), Z, Y.col_range(0, cut), pr) +
                         log_likelihood(X.col_range(cut, T), Z, Y.col_range(cut, T), pr);
    CHECK(parts == Approx(whole).epsilon(1e-12));
  }
}

TEST_CASE("log_prior_Y hand values") {
  CHECK(log_prior_Y(BinaryMatrix(0, 0), 0.3) == 0.0);
  CHECK(log_prior_Y(BinaryMatrix::from_rows({{0, 1}}), 0.5) == Approx(std::log(0.25)));
  CHECK(log_prior_Y(BinaryMatrix::from_rows({{1, 0}}), 0.1) == Approx(std::log(0.09)));
  CHECK(log_prior_Y(BinaryMatrix::from_rows({{0, 0}}), 0.0) == 0.0);
  CHECK(std::isinf(log_prior_Y(BinaryMatrix::from_rows({{1, 0}}), 0.0)));
  CHECK_THROWS(log_prior_Y(BinaryMatrix(1, 1), 1.5));
}

TEST_CASE("log_prior_Z_finite hand values") {
  CHECK(log_prior_Z_finite(BinaryMatrix::from_rows({{1}}), 1, 1.0) == Approx(std::log(0.5)));
  CHECK(log_prior_Z_finite(BinaryMatrix::from_rows({{0}}), 1, 1.0) == Approx(std::log(0.5)));
  CHECK_THROWS_AS(log_prior_Z_finite(BinaryMatrix(2, 2), 3, 1.0), DimensionError);
}

TEST_CASE("log_prior_Z_finite agrees with the tgamma product and normalizes") {
  for (std::size_t N = 1; N <= 3; ++N)
    for (std::size_t K = 1; K <= 3; ++K)
      for (double alpha : {0.5, 1.0, 3.0}) {
        double total = 0.0;
        oracle::for_each_matrix(N, K, [&](const BinaryMatrix& Z) {
          const double lp = log_prior_Z_finite(Z, K, alpha);
          CHECK(std::exp(lp) == Approx(oracle::finite_prior_direct(Z, alpha)).epsilon(1e-12));
          total += std::exp(lp);
        });
        CHECK(total == Approx(1.0).epsilon(1e-10));
      }
}

TEST_CASE("log_prior_Z_finite is invariant to row and column permutations") {
  std::mt19937 gen(11);
  for (int rep = 0; rep < 30; ++rep) {
    auto Z = random_matrix(4, 3, gen);
    const double base = log_prior_Z_finite(Z, 3, 2.0);
    std::vector<int> rows{0, 1, 2, 3}, cols{0, 1, 2};
    std::shuffle(rows.begin(), rows.end(), gen);
    std::shuffle(cols.begin(), cols.end(), gen);
    BinaryMatrix P(4, 3);
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < 3; ++k) P.set(i, k, Z(rows[i], cols[k]));
    CHECK(log_prior_Z_finite(P, 3, 2.0) == Approx(base).epsilon(1e-13));
  }
}

TEST_CASE("log_prior_Z_finite at alpha = 0 puts all mass on empty columns") {
  CHECK(log_prior_Z_finite(BinaryMatrix(3, 2), 2, 0.0) == 0.0);
  CHECK(std::isinf(log_prior_Z_finite(BinaryMatrix::from_rows({{1}, {0}}), 1, 0.0)));
}

TEST_CASE("log_joint adds its three terms") {
  auto X = BinaryMatrix::from_rows({{1, 0, 1}, {0, 0, 1}});
  auto Z = BinaryMatrix::from_rows({{1}, {1}});
  auto Y = BinaryMatrix::from_rows({{1, 0, 1}});
  const ModelParams pr = params(0.05, 0.8, 0.3, 2.0);
  const double lik = log_likelihood(X, Z, Y, pr);
  const double py = log_prior_Y(Y, pr.p);
  CHECK(log_joint(X, Z, Y, pr, FinitePrior{1}) ==
        Approx(lik + py + log_prior_Z_finite(Z, 1, pr.alpha)));
  CHECK(log_joint(X, Z, Y, pr, IbpPrior{}) == Approx(lik + py + log_prior_Z_ibp(Z, pr.alpha)));
  CHECK(log_joint(X, Z, Y, pr, IbpPrior{}) <= 0.0);
}

TEST_CASE("log_joint on an empty model is -alpha H_N under the IBP") {
  const ModelParams pr = params(0.1, 0.5, 0.2, 2.5);
  const double h3 = 1.0 + 0.5 + 1.0 / 3.0;
  CHECK(log_joint(BinaryMatrix(3, 0), BinaryMatrix(3, 0), BinaryMatrix(0, 0), pr, IbpPrior{}) ==
        Approx(-2.5 * h3));
}

TEST_CASE("ModelParams validation") {
  CHECK_NOTHROW(ModelParams{0.0, 1.0, 0.0, 0.1}.validate());
  CHECK_THROWS(ModelParams{-0.1, 0.5, 0.5, 1.0}.validate());
  CHECK_THROWS(ModelParams{0.1, 1.5, 0.5, 1.0}.validate());
  CHECK_THROWS(ModelParams{0.1, 0.5, 0.5, 0.0}.validate());
}

TEST_CASE("SamplerState keeps its caches in sync under random edits") {
  std::mt19937 gen(3);
  SamplerState s(random_matrix(5, 3, gen), random_matrix(3, 7, gen), params(0.1, 0.6));
  for (int step = 0; step < 500; ++step) {
    switch (gen() % 5) {
      case 0:
      case 1:
        if (s.K()) s.set_z(gen() % s.N(), gen() % s.K(), gen() % 2);
        break;
      case 2:
        if (s.K()) s.set_y(gen() % s.K(), gen() % s.T(), gen() % 2);
        break;
      case 3:
        s.append_causes(1 + gen() % 2);
        break;
      case 4:
        if (s.K() > 0 && gen() % 2) s.erase_cause(gen() % s.K());
        else s.compact();
        break;
    }
    REQUIRE(s.caches_consistent());
  }
}

TEST_CASE("compact keeps Z-column / Y-row pairing") {
  auto Z = BinaryMatrix::from_rows({{1, 0, 0}, {0, 0, 1}});
  auto Y = BinaryMatrix::from_rows({{1, 1}, {0, 1}, {1, 0}});
  SamplerState s(Z, Y, params(0.1, 0.5));
  s.compact();
  CHECK(s.Z() == BinaryMatrix::from_rows({{1, 0}, {0, 1}}));
  CHECK(s.Y() == BinaryMatrix::from_rows({{1, 1}, {1, 0}}));

  SamplerState all_zero(BinaryMatrix(2, 2), BinaryMatrix(2, 4), params(0.1, 0.5));
  all_zero.compact();
  CHECK(all_zero.K() == 0);
  CHECK(all_zero.Y().rows() == 0);
  CHECK(all_zero.T() == 4);
}
