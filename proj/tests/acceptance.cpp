// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "holodet/blockdet.hpp"
#include "holodet/euler.hpp"
#include "holodet/laplacian.hpp"
#include "holodet/tau_forest.hpp"
#include "holodet/vectorfields.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace holodet;
using G = GaussianRational;
using testing_support::cover_spec;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void fail(const std::string& why) {
    if (pass) detail << "first failure: " << why << "; ";
    pass = false;
  }
};

int g_failed = 0;

void criterion(int id, const std::string& name, const std::function<void(Outcome&)>& body) {
  Outcome o;
  auto start = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!o.pass) ++g_failed;
  std::printf("[%s] %d %s: %s(%.1f s)\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), o.detail.str().c_str(), secs);
  std::fflush(stdout);
}

std::uint64_t g_integral_checks = 0;
std::uint64_t g_integral_violations = 0;

// Matrix entries become indeterminates u<id> (1x1) or u<id>_<i><j>.
Instance<MultiPoly> fully_symbolic(const Instance<G>& inst, IndeterminateSet& symbols) {
  auto out = with_symbolic_weights(inst, symbols);
  for (int e = 0; e < inst.quiver.edge_count(); ++e) {
    auto& m = out.rep.matrices[static_cast<std::size_t>(e)];
    const std::string& id = inst.quiver.edge(e).id;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = 0; j < m.cols(); ++j) {
        std::string name = "u" + id;
        if (m.rows() * m.cols() > 1) name += "_" + std::to_string(i + 1) + std::to_string(j + 1);
        m(i, j) = MultiPoly::variable(symbols.add(name));
      }
    }
  }
  return out;
}

MultiPoly sym(IndeterminateSet& s, const std::string& name) { return MultiPoly::variable(s.index_of(name)); }

void oracle_equivalence(Outcome& o) {
  const std::vector<std::pair<std::string, std::function<G(const TwistedLaplacian<G>&)>>> methods = {
      {"perm-traces", [](const auto& l) { return det_perm_traces(l.matrix.base()); }},
      {"block-perm", [](const auto& l) { return det_block_perm(l.matrix); }},
      {"trace-formal", [](const auto& l) { return det_trace_formal(l.matrix); }},
      {"block-cycles", [](const auto& l) { return det_scalar_diag(l.matrix); }},
      {"integral", [](const auto& l) { return det_scalar_diag_integral(l.matrix); }},
      {"cycles", [](const auto& l) { return det_laplacian_cycles(l); }},
      {"vector-fields", [](const auto& l) { return det_vector_fields(l); }},
      {"sigma-prime", [](const auto& l) { return det_vector_fields_variant(l, VectorFieldVariant::SigmaPrime); }},
      {"beta", [](const auto& l) { return det_vector_fields_variant(l, VectorFieldVariant::Beta); }},
  };
  int checks = 0;
  int nonzero = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    auto lap = build_laplacian(gen_random(cover_spec(seed)));
    G want = det_oracle(lap.matrix.base());
    nonzero += want.is_zero() ? 0 : 1;
    for (const auto& [name, fn] : methods) {
      try {
        G got = fn(lap);
        ++checks;
        if (!(got == want)) o.fail("seed " + std::to_string(seed) + " " + name);
      } catch (const InvariantError& e) {
        if (name == "integral") ++g_integral_violations;
        o.fail("seed " + std::to_string(seed) + " " + name + ": " + e.what());
      } catch (const RefusalError& e) {
        o.fail("seed " + std::to_string(seed) + " " + name + " refused: " + e.what());
      }
    }
  }
  o.detail << "100 instances (p=4, <=6 edges, n_a<=3, sum n<=7), " << checks << " method checks, " << nonzero
           << " nonzero determinants ";
}

void symbolic_master(Outcome& o) {
  int checks = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    IndeterminateSet symbols;
    int p = seed % 2 == 0 ? 4 : 3;
    auto lap = build_laplacian(with_symbolic_weights(gen_random(cover_spec(1000 + seed, p, 6, 2, 6)), symbols));
    MultiPoly want = det_oracle(lap.matrix.base());
    if (!(det_laplacian_cycles(lap) == want)) o.fail("seed " + std::to_string(seed) + " cycles");
    if (!(det_vector_fields(lap) == want)) o.fail("seed " + std::to_string(seed) + " vector-fields");
    checks += 2;
  }
  o.detail << "20 instances with x_e indeterminates, " << checks << " coefficientwise comparisons ";
}

void golden_examples(Outcome& o) {
  {
    IndeterminateSet s;
    auto lap = build_laplacian(fully_symbolic(gen_example("acyclic"), s));
    if (!det_oracle(lap.matrix.base()).is_zero()) o.fail("acyclic oracle nonzero");
    if (!laplacian_candidates(lap, nullptr).cycles.empty()) o.fail("acyclic expansion not empty");
    if (!det_laplacian_cycles(lap).is_zero()) o.fail("acyclic cycles nonzero");
    if (!det_vector_fields(lap).is_zero()) o.fail("acyclic vector fields nonzero");
  }
  {
    IndeterminateSet s;
    auto base = gen_example("unicyclic");
    auto lap = build_laplacian(fully_symbolic(base, s));
    const Quiver& q = lap.quiver();
    MultiPoly closed(G(1));
    for (int e = 0; e < q.edge_count(); ++e) {
      for (int k = 0; k < lap.ranks()[static_cast<std::size_t>(q.src(e))]; ++k) closed = closed * lap.instance.weights[static_cast<std::size_t>(e)];
    }
    auto hol = holonomy(lap.instance.rep, GCycle::from_edges(q, {0, 1, 2}));
    closed = closed * det_oracle(Matrix<MultiPoly>::identity(hol.rows()) - hol);
    MultiPoly want = det_oracle(lap.matrix.base());
    if (!(closed == want)) o.fail("unicyclic closed form");
    if (!(det_laplacian_cycles(lap) == want)) o.fail("unicyclic cycles");
    if (!(det_vector_fields(lap) == want)) o.fail("unicyclic vector fields");
    if (!(det_euler_finite(lap) == want)) o.fail("unicyclic euler");
  }
  {
    IndeterminateSet s;
    auto lap = build_laplacian(fully_symbolic(gen_example("figure5"), s));
    auto x = [&](const std::string& id) { return sym(s, "x" + id); };
    auto u = [&](const std::string& id) { return sym(s, "u" + id); };
    MultiPoly one(G(1));
    MultiPoly zn(G(1));
    for (const auto& za : lap.z) zn = zn * za;
    MultiPoly denom = (x("23") + x("25")) * (x("34") + x("36"));
    MultiPoly h1 = u("12") * u("23") * u("34") * u("41");
    MultiPoly h2 = u("56") * u("67") * u("78") * u("85");
    // z^n det(I - p(c1) hol c1) det(I - hol c2), cleared of the denominator of p(c1).
    MultiPoly rhs = zn * (denom - x("23") * x("34") * h1) * (one - h2);
    MultiPoly want = det_oracle(lap.matrix.base());
    if (!(want * denom == rhs)) o.fail("figure5 product formula");
    if (!(det_laplacian_cycles(lap) == want)) o.fail("figure5 cycles");
    if (!(det_vector_fields(lap) == want)) o.fail("figure5 vector fields");
    if (!(det_euler_finite(lap) == want)) o.fail("figure5 euler");
  }
  o.detail << "acyclic, unicyclic and figure5 with symbolic weights and matrices ";
}

void charpolys(Outcome& o) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    auto lap = build_laplacian(gen_random(cover_spec(2000 + seed)));
    std::vector<std::size_t> t(lap.ranks().size(), 0);
    auto want = charpoly_oracle(lap.matrix.base());
    for (int which = 0; which < 2; ++which) {
      auto poly = which == 0 ? charpoly_block(lap.matrix, t) : charpoly_laplacian(lap, t);
      auto got = collapse_by_degree(poly, {0});
      got.resize(want.size());
      for (std::size_t k = 0; k < want.size(); ++k) {
        if (!(got[k] == MultiPoly(want[k]))) {
          o.fail("seed " + std::to_string(seed) + (which == 0 ? " block" : " laplacian") + " degree " + std::to_string(k));
        }
      }
    }
  }
  o.detail << "50 instances, block and quiver expansions vs Faddeev-LeVerrier ";
}

void wilson(Outcome& o) {
  int checks = 0;
  auto run = [&](const Instance<G>& inst, const Matrix<G>& a, const Matrix<G>& b, const std::string& tag) {
    RepresentationLaw law;
    for (int e = 0; e < inst.quiver.edge_count(); ++e) {
      law[e].outcomes = {{BigRational(1, 2), a}, {BigRational(1, 2), b}};
    }
    for (int k = 1; k <= 2; ++k) {
      auto m = wilson_moment(inst, law, k);
      ++checks;
      if (!(m.lhs == m.rhs)) o.fail(tag + " k=" + std::to_string(k));
    }
  };
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto inst = gen_random(cover_spec(3000 + seed, 3, 5, 1, 0));
    run(inst, Matrix<G>{{1}}, Matrix<G>{{-1}}, "rank 1 seed " + std::to_string(seed));
  }
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    auto inst = gen_random(cover_spec(3100 + seed, 2 + static_cast<int>(seed % 2), 4, 2, 0));
    for (auto& r : inst.rep.ranks) r = 2;
    for (auto& m : inst.rep.matrices) m = Matrix<G>::identity(2);
    run(inst, Matrix<G>::identity(2), Matrix<G>{{1, 0}, {0, -1}}, "rank 2 seed " + std::to_string(seed));
  }
  o.detail << checks << " exact moment identities (signs in rank 1, {I, diag(1,-1)} in rank 2, k=1,2) ";
}

void euler_truncated(Outcome& o) {
  int truncated = 0;
  double worst = 0.0;
  double worst_ratio = 0.0;
  const double eps = std::numeric_limits<double>::epsilon();
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    std::vector<double> kappa;
    auto inst = testing_support::sub_markov_instance(4000 + seed, 3.0, kappa);
    auto lap = build_laplacian(inst);
    auto r = det_euler_truncated(lap, kappa);
    ComplexFloat want = det_oracle(testing_support::shifted(lap, kappa));
    double err = std::abs(r.value - want);
    // Allowance for the rounding of the LU reference itself.
    double oracle_rounding = 64.0 * eps * std::abs(want) * lap.size();
    truncated += r.exact_product ? 0 : 1;
    worst = std::max(worst, err);
    if (r.certified_error_bound > 0) worst_ratio = std::max(worst_ratio, err / (r.certified_error_bound + oracle_rounding));
    if (err > r.certified_error_bound + oracle_rounding) o.fail("seed " + std::to_string(seed) + " exceeds certified bound");
    if (err > 1e-8) o.fail("seed " + std::to_string(seed) + " error above 1e-8");
    if (!r.reached_tol) o.fail("seed " + std::to_string(seed) + " tolerance not reached");
  }
  o.detail << "50 sub-Markov instances (" << truncated << " truncated), max error " << worst
           << ", max error/bound " << worst_ratio << " ";
}

void unitary(Outcome& o) {
  int trials = 0;
  int checks = 0;
  double min_ratio = 1e300;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto base = testing_support::symmetric_bidirected(5000 + seed, 3 + static_cast<int>(seed % 3), 8);
    int N = 1 + static_cast<int>(seed % 3);
    auto rep = unitary_comparison_check(base, N, {0.0, 0.1, 1.0, 10.0}, 10, seed);
    trials += rep.trials;
    checks += rep.checks;
    min_ratio = std::min(min_ratio, rep.min_ratio);
    if (!rep.holds()) o.fail("seed " + std::to_string(seed) + ": " + std::to_string(rep.failures) + " failures");
  }
  o.detail << trials << " unitary trials, " << checks << " inequalities, min det(t+D)/det(t+D0)^N " << min_ratio << " ";
}

void counting(Outcome& o) {
  int shapes = 0;
  int fibres = 0;
  std::vector<std::vector<int>> all;
  for (int p = 1; p <= 3; ++p) {
    std::vector<int> r(static_cast<std::size_t>(p), 1);
    for (;;) {
      int total = 0;
      for (int x : r) total += x;
      if (total <= 6) all.push_back(r);
      std::size_t k = 0;
      while (k < r.size() && ++r[k] > 6) r[k++] = 1;
      if (k == r.size()) break;
    }
  }
  for (const auto& r : all) {
    ++shapes;
    int total = 0;
    long long rfact = 1;
    for (int x : r) {
      total += x;
      rfact *= oracle::fact(x);
    }
    auto got = oracle::kinematic_fibres(r);
    auto targets = oracle::exact_multisets(oracle::cyclic_walks(static_cast<int>(r.size()), total), r);
    if (got.size() != targets.size()) o.fail("projection not onto for a shape");
    for (auto ms : targets) {
      std::sort(ms.begin(), ms.end());
      long long val = 1;
      for (const auto& w : ms) val *= oracle::stabiliser(w);
      auto it = got.find(ms);
      if (it == got.end() || it->second * oracle::multiplicity_factorial(ms) * val != rfact) o.fail("fibre size");
      ++fibres;
    }
  }
  // Integrality over every multiset of walks within the block sizes used above.
  for (int p = 2; p <= 4; ++p) {
    std::vector<int> n(static_cast<std::size_t>(p), 1);
    for (;;) {
      int total = 0;
      for (int x : n) total += x;
      if (total <= 7) {
        WalkMultisetStream stream(p, n);
        std::vector<int> vals;
        for (const auto& w : stream.cycles()) vals.push_back(valuation(w));
        stream.for_each([&](const CycleMultiset& c) {
          ++g_integral_checks;
          try {
            integral_coefficient(n, c, vals);
          } catch (const InvariantError&) {
            ++g_integral_violations;
          }
        });
      }
      std::size_t k = 0;
      while (k < n.size() && ++n[k] > 3) n[k++] = 1;
      if (k == n.size()) break;
    }
  }
  if (g_integral_violations != 0) o.fail(std::to_string(g_integral_violations) + " non-integral coefficients");
  o.detail << shapes << " shapes, " << fibres << " fibres checked by brute force; " << g_integral_checks
           << " integer coefficients, " << g_integral_violations << " violations ";
}

void gauge(Outcome& o) {
  std::mt19937_64 rng(6000);
  int compared = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    auto inst = gen_random(cover_spec(6000 + seed, 4, 6, 3, 6));
    auto moved = oracle::gauge_transform(inst, rng);
    std::vector<std::string> skipped_a;
    std::vector<std::string> skipped_b;
    auto a = testing_support::all_methods(inst, &skipped_a);
    auto b = testing_support::all_methods(moved, &skipped_b);
    if (a.size() != b.size() || skipped_a != skipped_b) {
      o.fail("seed " + std::to_string(seed) + " method sets differ");
      continue;
    }
    G ref = det_oracle(build_laplacian(inst).matrix.base());
    if (!(det_oracle(build_laplacian(moved).matrix.base()) == ref)) o.fail("seed " + std::to_string(seed) + " oracle");
    for (std::size_t i = 0; i < a.size(); ++i) {
      ++compared;
      if (!(a[i].second == b[i].second)) o.fail("seed " + std::to_string(seed) + " " + a[i].first);
    }
  }
  o.detail << "50 random block-diagonal gauge transforms, " << compared << " method outputs unchanged ";
}

void tau_forest_report() {
  std::printf("[INFO] tau-forest check (reported, not asserted):\n");
  Instance<G> edge;
  edge.quiver = Quiver(2, {{"e", 0, 1}, {"f", 1, 0}}, {{0, 1}});
  edge.rep.ranks = {2, 2};
  edge.rep.matrices = {Matrix<G>::identity(2), Matrix<G>::identity(2)};
  edge.weights = {1, 1};
  auto r = tau_forest_check(build_laplacian(edge));
  std::printf("  single edge pair, N=2, U=I, x=1: det_tau=%s forest sum=%s det=%s\n", r.lhs.to_string().c_str(),
              r.rhs.to_string().c_str(), r.oracle.to_string().c_str());
  int agree_lhs = 0;
  int agree_rhs = 0;
  const int total = 20;
  for (std::uint64_t seed = 1; seed <= total; ++seed) {
    RandomSpec spec;
    spec.seed = 7000 + seed;
    spec.p = 3;
    spec.max_edges = 6;
    spec.max_rank = 2;
    spec.cover = true;
    auto inst = gen_random(spec);
    for (auto& n : inst.rep.ranks) n = 2;
    std::mt19937_64 rng(seed);
    for (auto& m : inst.rep.matrices) {
      m = Matrix<G>(2, 2);
      for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) m(i, j) = random_gaussian_rational(rng);
      }
    }
    auto rep = tau_forest_check(build_laplacian(inst));
    agree_lhs += rep.lhs_equals_oracle ? 1 : 0;
    agree_rhs += rep.lhs_equals_rhs ? 1 : 0;
  }
  std::printf("  %d random N=2 instances: det_tau = det in %d, det_tau = forest sum in %d\n", total, agree_lhs, agree_rhs);
}

}  // namespace

int main() {
  auto start = std::chrono::steady_clock::now();
  criterion(1, "oracle equivalence (exact)", oracle_equivalence);
  criterion(2, "symbolic master identity", symbolic_master);
  criterion(3, "golden examples", golden_examples);
  criterion(4, "characteristic polynomials", charpolys);
  criterion(5, "Wilson moments", wilson);
  criterion(6, "truncated Euler product", euler_truncated);
  criterion(7, "unitary comparison", unitary);
  criterion(8, "fibre counts and integrality", counting);
  criterion(9, "gauge invariance", gauge);
  tau_forest_report();
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d of 9 criteria failed (%.1f s total)\n", g_failed, secs);
  return g_failed == 0 ? 0 : 1;
}
