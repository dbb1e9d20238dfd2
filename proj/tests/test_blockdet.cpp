#include <gtest/gtest.h>

#include <random>

#include "holodet/blockdet.hpp"
#include "holodet/error.hpp"
#include "holodet/quiver.hpp"
#include "oracles.hpp"

using namespace holodet;

namespace {

// Random block matrix with diagonal blocks z_a I.
BlockMatrix<GaussianRational> random_scalar_diag(const std::vector<int>& partition, std::mt19937_64& rng) {
  int n = 0;
  for (int b : partition) n += b;
  Matrix<GaussianRational> m(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  BlockMatrix<GaussianRational> shape(m, partition);
  std::vector<GaussianRational> z;
  for (std::size_t a = 0; a < partition.size(); ++a) z.push_back(random_gaussian_rational(rng));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      auto ii = static_cast<std::size_t>(i);
      auto jj = static_cast<std::size_t>(j);
      if (shape.bl(i) != shape.bl(j)) {
        m(ii, jj) = random_gaussian_rational(rng);
      } else if (i == j) {
        m(ii, jj) = z[static_cast<std::size_t>(shape.bl(i))];
      }
    }
  }
  return {m, partition};
}

const std::vector<std::vector<int>> kPartitions = {{1, 1}, {2, 1}, {1, 2, 1}, {2, 2}, {3, 1, 1}, {2, 2, 1}, {1, 1, 1, 1}};

}  // namespace

TEST(PermTraces, MatchesLeibniz) {
  std::mt19937_64 rng(21);
  for (std::size_t n = 1; n <= 5; ++n) {
    Matrix<GaussianRational> m(n, n);
    for (auto i = 0U; i < n; ++i) {
      for (auto j = 0U; j < n; ++j) m(i, j) = random_gaussian_rational(rng);
    }
    EXPECT_EQ(det_perm_traces(m), oracle::leibniz(m));
  }
}

TEST(BlockPerm, MatchesOracleOnArbitraryBlocks) {
  std::mt19937_64 rng(22);
  for (const auto& part : kPartitions) {
    int n = 0;
    for (int b : part) n += b;
    Matrix<GaussianRational> m(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = random_gaussian_rational(rng);
    }
    BlockMatrix<GaussianRational> a(m, part);
    EXPECT_EQ(det_block_perm(a), oracle::leibniz(m));
    EXPECT_EQ(det_trace_formal(a), oracle::leibniz(m));
  }
}

TEST(ScalarDiag, CycleExpansionsMatchOracle) {
  std::mt19937_64 rng(23);
  for (const auto& part : kPartitions) {
    for (int trial = 0; trial < 3; ++trial) {
      auto a = random_scalar_diag(part, rng);
      auto want = oracle::leibniz(a.base());
      EXPECT_EQ(det_scalar_diag(a), want);
      EXPECT_EQ(det_scalar_diag_integral(a), want);
      FoldOptions par;
      par.parallel = true;
      par.threads = 3;
      EXPECT_EQ(det_scalar_diag(a, par), want);
    }
  }
}

TEST(ScalarDiag, RejectsNonScalarDiagonal) {
  BlockMatrix<GaussianRational> a(Matrix<GaussianRational>{{1, 2, 0}, {0, 3, 1}, {1, 1, 1}}, {2, 1});
  EXPECT_THROW(det_scalar_diag(a), ValidationError);
}

TEST(IntegralCoefficient, KnownValues) {
  // Single walk <<1,2>> with n = (2, 1): 2! 1! / (1! * 1) = 2.
  WalkMultisetStream stream(2, {2, 1});
  bool seen = false;
  stream.for_each([&](const CycleMultiset& c) {
    if (c.cardinality() != 1) return;
    std::vector<int> vals;
    for (const auto& w : stream.cycles()) vals.push_back(valuation(w));
    EXPECT_EQ(integral_coefficient({2, 1}, c, vals), 2);
    seen = true;
  });
  EXPECT_TRUE(seen);
  // <<1,2,1,2>> has valuation 2: 2! 2! / 2 = 2; twice <<1,2>>: 2! 2! / 2! = 2.
  WalkMultisetStream s22(2, {2, 2});
  s22.for_each([&](const CycleMultiset& c) {
    std::vector<int> vals;
    for (const auto& w : s22.cycles()) vals.push_back(valuation(w));
    long long coeff = integral_coefficient({2, 2}, c, vals);
    if (c.visits == VisitVector{2, 2}) EXPECT_EQ(coeff, 2);
  });
}

TEST(CharpolyBlock, MatchesFaddeevLeverrier) {
  std::mt19937_64 rng(24);
  for (const auto& part : kPartitions) {
    auto a = random_scalar_diag(part, rng);
    std::vector<std::size_t> t(part.size(), 0);
    auto poly = charpoly_block(a, t);
    auto coeffs = collapse_by_degree(poly, {0});
    auto want = charpoly_oracle(a.base());
    coeffs.resize(want.size());
    for (std::size_t k = 0; k < want.size(); ++k) EXPECT_EQ(coeffs[k], MultiPoly(want[k])) << "degree " << k;
  }
}

TEST(CharpolyBlock, SeparateIndeterminatesPerBlock) {
  // det(diag(t_a) + A) at t = (1, 2, 3) equals the oracle on the shifted matrix.
  std::mt19937_64 rng(25);
  auto a = random_scalar_diag({1, 2, 1}, rng);
  IndeterminateSet s({"t1", "t2", "t3"});
  auto poly = charpoly_block(a, {0, 1, 2});
  Matrix<GaussianRational> shifted = a.base();
  for (int i = 0; i < a.size(); ++i) {
    auto ii = static_cast<std::size_t>(i);
    shifted(ii, ii) = shifted(ii, ii) + GaussianRational(a.bl(i) + 1);
  }
  std::map<std::string, GaussianRational> at = {{"t1", 1}, {"t2", 2}, {"t3", 3}};
  EXPECT_EQ(poly_eval<GaussianRational>(poly, s, at), det_oracle(shifted));
}

TEST(Refusals, LargeInputs) {
  Matrix<GaussianRational> big = Matrix<GaussianRational>::identity(20);
  EXPECT_THROW(det_perm_traces(big), RefusalError);
  EXPECT_THROW(det_trace_formal(BlockMatrix<GaussianRational>(big, std::vector<int>(20, 1))), RefusalError);
}

TEST(BlockEuler, ThreeBlocksConverge) {
  std::mt19937_64 rng(26);
  Matrix<ComplexFloat> m(4, 4);
  std::uniform_real_distribution<double> u(-0.05, 0.05);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) m(i, j) = {u(rng), u(rng)};
  }
  m(0, 0) = m(1, 1) = 1.0;
  m(2, 2) = 2.0;
  m(3, 3) = 1.5;
  m(0, 1) = m(1, 0) = 0.0;
  BlockMatrix<ComplexFloat> a(m, {2, 1, 1});
  auto r = block_euler_truncated(a, 12);
  EXPECT_GT(r.factors, 0);
  EXPECT_LT(std::abs(r.value - det_oracle(m)), 1e-5 * std::abs(det_oracle(m)));
}
