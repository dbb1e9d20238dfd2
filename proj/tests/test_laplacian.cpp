#include <gtest/gtest.h>

#include "holodet/error.hpp"
#include "holodet/laplacian.hpp"
#include "holodet/quiver_io.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace holodet;
using G = GaussianRational;

TEST(BuildLaplacian, BlockLayout) {
  auto inst = gen_example("two_cycle");
  auto lap = build_laplacian(inst);
  // z_1 = x_1 = 2, z_2 = x_2 = 3, off-diagonal -x_e U_e.
  EXPECT_EQ(lap.matrix.base(), (Matrix<G>{{2, G(-1)}, {-9, 3}}));
  EXPECT_EQ(lap.z, (std::vector<G>{2, 3}));
}

TEST(BuildLaplacian, ParallelEdgesAddUp) {
  Instance<G> inst;
  inst.quiver = Quiver(2, {{"a", 0, 1}, {"b", 0, 1}, {"c", 1, 0}});
  inst.rep.ranks = {1, 1};
  inst.rep.matrices = {Matrix<G>{{2}}, Matrix<G>{{5}}, Matrix<G>{{1}}};
  inst.weights = {1, 3, 4};
  auto lap = build_laplacian(inst);
  EXPECT_EQ(lap.matrix.base(), (Matrix<G>{{4, -17}, {-4, 4}}));
}

TEST(BuildLaplacian, RejectsInvalid) {
  auto inst = gen_example("two_cycle");
  inst.rep.matrices[0] = Matrix<G>{{1, 2}};
  EXPECT_THROW(build_laplacian(inst), ValidationError);
}

TEST(Holonomy, ProductAlongCycle) {
  auto inst = gen_example("unicyclic");
  auto c = GCycle::from_edges(inst.quiver, {0, 1, 2});
  auto hol = holonomy(inst.rep, c);
  EXPECT_EQ(hol, inst.rep.matrices[0] * inst.rep.matrices[1] * inst.rep.matrices[2]);
  EXPECT_EQ(edge_monomial(inst.weights, c), G(1 * 2 * 3));
}

TEST(CycleExpansion, MatchesOracleOnRandomInstances) {
  for (std::uint64_t seed = 100; seed < 130; ++seed) {
    auto inst = gen_random(testing_support::cover_spec(seed));
    auto lap = build_laplacian(inst);
    EXPECT_EQ(det_laplacian_cycles(lap), det_oracle(lap.matrix.base())) << "seed " << seed;
  }
}

TEST(CycleExpansion, ExamplesAndEmptyExpansion) {
  auto acyclic = build_laplacian(gen_example("acyclic"));
  EXPECT_TRUE(laplacian_candidates(acyclic, nullptr).cycles.empty());
  EXPECT_EQ(det_laplacian_cycles(acyclic), G(0));
  auto fig5 = build_laplacian(gen_example("figure5"));
  EXPECT_EQ(det_laplacian_cycles(fig5), det_oracle(fig5.matrix.base()));
}

TEST(CharpolyLaplacian, MatchesOracleAfterCollapse) {
  for (std::uint64_t seed = 200; seed < 215; ++seed) {
    auto lap = build_laplacian(gen_random(testing_support::cover_spec(seed)));
    std::vector<std::size_t> t(lap.ranks().size(), 0);
    auto coeffs = collapse_by_degree(charpoly_laplacian(lap, t), {0});
    auto want = charpoly_oracle(lap.matrix.base());
    coeffs.resize(want.size());
    for (std::size_t k = 0; k < want.size(); ++k) EXPECT_EQ(coeffs[k], MultiPoly(want[k])) << "seed " << seed;
  }
}

TEST(WilsonMoments, SignFlipsOnTwoCycle) {
  auto doc = read_instance_file(std::string(HOLODET_TEST_DATA) + "/two_cycle_law.json");
  auto inst = doc.exact();
  // det = 6 - 6 u v with u, v independent uniform signs.
  auto m1 = wilson_moment(inst, *doc.distribution, 1);
  EXPECT_EQ(m1.lhs, G(6));
  EXPECT_EQ(m1.rhs, G(6));
  EXPECT_EQ(m1.support_size, 4U);
  auto m2 = wilson_moment(inst, *doc.distribution, 2);
  EXPECT_EQ(m2.lhs, G(72));
  EXPECT_EQ(m2.rhs, G(72));
  EXPECT_FALSE(m2.table.empty());
}

TEST(WilsonMoments, LawValidation) {
  auto doc = read_instance_file(std::string(HOLODET_TEST_DATA) + "/two_cycle_law.json");
  auto inst = doc.exact();
  auto law = *doc.distribution;
  law[0].outcomes[0].first = BigRational(1, 3);
  EXPECT_THROW(validate_law(inst, law), ValidationError);
  law = *doc.distribution;
  law[0].outcomes[0].second = Matrix<G>{{1, 0}};
  EXPECT_THROW(validate_law(inst, law), ValidationError);
  EXPECT_THROW(wilson_moment(inst, *doc.distribution, 0), ValidationError);
}

TEST(WilsonMoments, MonteCarloSidesAgreeSampleBySample) {
  auto inst = to_float(gen_example("two_cycle"));
  auto mc = wilson_moment_monte_carlo(inst, 2, 200, 5);
  EXPECT_EQ(mc.samples, 200);
  EXPECT_NEAR(mc.lhs.mean_re, mc.rhs.mean_re, 1e-8 * (1 + std::abs(mc.lhs.mean_re)));
  EXPECT_NEAR(mc.lhs.mean_im, mc.rhs.mean_im, 1e-8 * (1 + std::abs(mc.lhs.mean_im)));
}

TEST(CauchyBinet, TermsSumToDeterminant) {
  for (std::uint64_t seed = 300; seed < 310; ++seed) {
    auto lap = build_laplacian(gen_random(testing_support::cover_spec(seed, 3, 5, 2, 6)));
    G sum = 0;
    for (const auto& term : cauchy_binet_decompose(lap)) {
      sum = sum + term.value;
      for (int a = 0; a < lap.quiver().vertex_count(); ++a) {
        std::size_t chosen = 0;
        for (int e : lap.quiver().out_edges(a)) chosen += term.index_sets[static_cast<std::size_t>(e)].size();
        EXPECT_EQ(chosen, static_cast<std::size_t>(lap.ranks()[static_cast<std::size_t>(a)]));
      }
    }
    EXPECT_EQ(sum, det_oracle(lap.matrix.base())) << "seed " << seed;
  }
  EXPECT_THROW(cauchy_binet_decompose(build_laplacian(gen_example("figure5"))), RefusalError);
}

TEST(Gauge, CycleExpansionInvariant) {
  std::mt19937_64 rng(41);
  for (std::uint64_t seed = 400; seed < 410; ++seed) {
    auto inst = gen_random(testing_support::cover_spec(seed));
    auto moved = oracle::gauge_transform(inst, rng);
    EXPECT_EQ(det_laplacian_cycles(build_laplacian(moved)), det_laplacian_cycles(build_laplacian(inst)));
  }
}
