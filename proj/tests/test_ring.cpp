#include <gtest/gtest.h>

#include "holodet/error.hpp"
#include "holodet/multipoly.hpp"
#include "holodet/ring.hpp"

using namespace holodet;

TEST(BigRational, ParsesFractionsAndDecimals) {
  EXPECT_EQ(BigRational::parse("-3/4"), BigRational(-3, 4));
  EXPECT_EQ(BigRational::parse("0.125"), BigRational(1, 8));
  EXPECT_EQ(BigRational::parse("2.5E2"), BigRational(250));
  EXPECT_EQ(BigRational::parse("1e-3"), BigRational(1, 1000));
  EXPECT_EQ(BigRational(6, -4), BigRational(-3, 2));
}

TEST(BigRational, RejectsGarbage) {
  EXPECT_THROW(BigRational::parse("abc"), ValidationError);
  EXPECT_THROW(BigRational::parse("1/0"), ValidationError);
  EXPECT_THROW(BigRational(1, 0), ValidationError);
}

TEST(BigRational, Arithmetic) {
  BigRational a(1, 3);
  BigRational b(1, 6);
  EXPECT_EQ(a + b, BigRational(1, 2));
  EXPECT_EQ(a - b, b);
  EXPECT_EQ(a * b, BigRational(1, 18));
  EXPECT_EQ(a / b, BigRational(2));
  EXPECT_EQ((a / b).to_string(), "2");
  EXPECT_EQ(BigRational(-7, 3).to_string(), "-7/3");
}

TEST(GaussianRational, FieldOperations) {
  GaussianRational z(BigRational(1), BigRational(2));
  GaussianRational w(BigRational(3), BigRational(-1));
  EXPECT_EQ(z * w, GaussianRational(BigRational(5), BigRational(5)));
  EXPECT_EQ((z * w) / w, z);
  EXPECT_EQ(z * z.conj(), GaussianRational(z.norm()));
  EXPECT_THROW(z / GaussianRational(0), InvariantError);
}

TEST(GaussianRational, CanonicalText) {
  EXPECT_EQ(GaussianRational(BigRational(0), BigRational(1)).to_string(), "i");
  EXPECT_EQ(GaussianRational(BigRational(0), BigRational(-1)).to_string(), "-i");
  EXPECT_EQ(GaussianRational(BigRational(1, 2), BigRational(1, 3)).to_string(), "1/2+1/3i");
  EXPECT_EQ(GaussianRational(BigRational(0), BigRational(-1, 3)).to_string(), "-1/3i");
  EXPECT_EQ(GaussianRational(0).to_string(), "0");
}

TEST(ComplexFloat, ApproxEqualUsesRelativeAndAbsoluteTolerance) {
  EXPECT_TRUE(approx_equal({1e6, 0}, {1e6 + 1e-4, 0}));
  EXPECT_FALSE(approx_equal({1.0, 0}, {1.0 + 1e-6, 0}));
  EXPECT_TRUE(approx_equal({0, 0}, {1e-13, 0}));
}

TEST(ScalarHelpers, PowAndScale) {
  EXPECT_EQ(scalar_pow(BigRational(2, 3), 3), BigRational(8, 27));
  EXPECT_EQ(scalar_pow(GaussianRational(BigRational(0), BigRational(1)), 4), GaussianRational(1));
  EXPECT_EQ(scale_int(BigRational(1, 6), 3), BigRational(1, 2));
  EXPECT_EQ(int_div(GaussianRational(BigRational(3), BigRational(6)), 3), GaussianRational(BigRational(1), BigRational(2)));
}

TEST(MultiPoly, ExpansionAndCancellation) {
  IndeterminateSet s({"x", "y"});
  MultiPoly x = MultiPoly::variable(0);
  MultiPoly y = MultiPoly::variable(1);
  MultiPoly one(GaussianRational(1));
  EXPECT_EQ((x + y) * (x - y), x * x - y * y);
  EXPECT_TRUE(((x + one) - x - one).is_zero());
  EXPECT_EQ(((x + y) * (x + y)).total_degree(), 2U);
  EXPECT_EQ(to_string(x * y - x * y * y, &s), "x*y - x*y^2");
}

TEST(MultiPoly, ConstantsCompareRegardlessOfSymbolTable) {
  MultiPoly a(GaussianRational(3));
  MultiPoly x = MultiPoly::variable(2);
  EXPECT_EQ(a, (a + x) - x);
  EXPECT_TRUE(((a + x) - x).is_constant());
}

TEST(MultiPoly, EvaluationAndDegreeCollapse) {
  IndeterminateSet s({"t1", "t2", "x"});
  MultiPoly t1 = MultiPoly::variable(0);
  MultiPoly t2 = MultiPoly::variable(1);
  MultiPoly x = MultiPoly::variable(2);
  MultiPoly p = t1 * t2 + x * t1 + x;
  std::map<std::string, GaussianRational> at = {{"t1", 2}, {"t2", 3}, {"x", 5}};
  EXPECT_EQ(poly_eval<GaussianRational>(p, s, at), GaussianRational(21));
  auto coeffs = collapse_by_degree(p, {0, 1});
  ASSERT_EQ(coeffs.size(), 3U);
  EXPECT_EQ(coeffs[0], x);
  EXPECT_EQ(coeffs[1], x);
  EXPECT_EQ(coeffs[2], MultiPoly(GaussianRational(1)));
}
