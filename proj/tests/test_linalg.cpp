#include <gtest/gtest.h>

#include <random>

#include "holodet/linalg.hpp"
#include "holodet/multipoly.hpp"
#include "holodet/quiver.hpp"
#include "oracles.hpp"

using namespace holodet;

namespace {

Matrix<GaussianRational> random_matrix(std::size_t n, std::mt19937_64& rng) {
  Matrix<GaussianRational> m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = random_gaussian_rational(rng);
  }
  return m;
}

}  // namespace

TEST(DetOracle, MatchesLeibnizOnRandomExactMatrices) {
  std::mt19937_64 rng(11);
  for (std::size_t n = 1; n <= 6; ++n) {
    for (int trial = 0; trial < 5; ++trial) {
      auto m = random_matrix(n, rng);
      EXPECT_EQ(det_oracle(m), oracle::leibniz(m)) << "n=" << n;
    }
  }
}

TEST(DetOracle, SingularAndPivoting) {
  Matrix<GaussianRational> zero_pivot{{0, 1}, {1, 0}};
  EXPECT_EQ(det_oracle(zero_pivot), GaussianRational(-1));
  Matrix<GaussianRational> rank_one{{1, 2}, {2, 4}};
  EXPECT_EQ(det_oracle(rank_one), GaussianRational(0));
  EXPECT_EQ(det_oracle(Matrix<GaussianRational>(0, 0)), GaussianRational(1));
}

TEST(DetOracle, FloatAgreesWithExact) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    auto m = random_matrix(5, rng);
    auto f = m.map<ComplexFloat>([](const GaussianRational& g) { return g.to_complex(); });
    EXPECT_TRUE(approx_equal(det_oracle(f), det_oracle(m).to_complex()));
  }
}

TEST(DetOracle, PolynomialEntries) {
  MultiPoly x = MultiPoly::variable(0);
  MultiPoly y = MultiPoly::variable(1);
  MultiPoly one(GaussianRational(1));
  Matrix<MultiPoly> m{{x, one, MultiPoly()}, {y, x, one}, {MultiPoly(), y, x}};
  EXPECT_EQ(det_oracle(m), oracle::leibniz(m));
  EXPECT_EQ(det_oracle(m), x * x * x - x * y - x * y);
}

TEST(CharpolyOracle, CoefficientsOfDetTPlusM) {
  std::mt19937_64 rng(13);
  for (std::size_t n = 1; n <= 5; ++n) {
    auto m = random_matrix(n, rng);
    auto c = charpoly_oracle(m);
    ASSERT_EQ(c.size(), n + 1);
    EXPECT_EQ(c[n], GaussianRational(1));
    EXPECT_EQ(c[0], det_oracle(m));
    // Evaluate at t = 2 against det(2I + M).
    GaussianRational value = 0;
    GaussianRational power = 1;
    for (const auto& ck : c) {
      value = value + ck * power;
      power = power * GaussianRational(2);
    }
    EXPECT_EQ(value, det_oracle(Matrix<GaussianRational>::scalar(n, 2) + m));
  }
}

TEST(Inverse, RoundTrip) {
  std::mt19937_64 rng(14);
  auto m = oracle::random_invertible<GaussianRational>(4, rng);
  EXPECT_EQ(m * inverse(m), Matrix<GaussianRational>::identity(4));
  EXPECT_THROW(inverse(Matrix<GaussianRational>{{1, 2}, {2, 4}}), ValidationError);
}

TEST(BlockMatrix, BlocksAndHolonomy) {
  Matrix<GaussianRational> base{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}};
  BlockMatrix<GaussianRational> a(base, {1, 2});
  EXPECT_EQ(a.block(0, 1), (Matrix<GaussianRational>{{2, 3}}));
  EXPECT_EQ(a.block(1, 0), (Matrix<GaussianRational>{{4}, {7}}));
  EXPECT_EQ(a.bl(2), 1);
  std::vector<int> walk = {0, 1};
  EXPECT_EQ(block_holonomy(a, std::span<const int>(walk)), a.block(0, 1) * a.block(1, 0));
  EXPECT_THROW(BlockMatrix<GaussianRational>(base, {1, 1}), ValidationError);
}

TEST(OperatorNorm, UnitaryHasNormOne) {
  std::mt19937_64 rng(15);
  auto u = haar_like_unitary(4, rng);
  EXPECT_NEAR(operator_norm2(u), 1.0, 1e-9);
  EXPECT_LT(unitarity_defect(u), 1e-12);
}
