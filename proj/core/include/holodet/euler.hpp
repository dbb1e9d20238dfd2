#pragma once

// Euler-product factorisations of det Delta over prime cycles.

#include <cstdint>
#include <string>
#include <vector>

#include "holodet/error.hpp"
#include "holodet/laplacian.hpp"
#include "holodet/walks.hpp"

namespace holodet {

// z^n prod_c det(I - p^{e(c)} hol(c)), p_e = x_e / z_{s(e)}, over the
// finitely many prime cycles. Each factor is expanded as
// sum_k x^{k e(c)} e_k(-hol c) prod_{a in c} z_a^{n_a - k}, so no division by
// a ring element is needed and symbolic weights are supported.
template <class S>
S det_euler_finite(const TwistedLaplacian<S>& lap, EvalStats* stats = nullptr) {
  const Quiver& q = lap.quiver();
  const auto& n = lap.ranks();
  auto fin = prime_finiteness(q);
  if (!fin.finite) {
    throw RefusalError("the quiver has infinitely many prime cycles; use euler-truncated with kappa > 0");
  }
  std::vector<char> on_cycle(n.size(), 0);
  S value = ScalarTraits<S>::one();
  for (const GCycle& c : fin.cycles) {
    bump(stats, &EvalStats::enumerated);
    auto verts = c.vertex_sequence(q);
    int kmax = n[static_cast<std::size_t>(verts.front())];
    for (int a : verts) {
      if (ScalarTraits<S>::is_zero(lap.z[static_cast<std::size_t>(a)])) {
        throw ValidationError("z is zero at vertex " + std::to_string(a + 1) + " on prime cycle " + c.to_string(q));
      }
      on_cycle[static_cast<std::size_t>(a)] = 1;
      kmax = std::min(kmax, n[static_cast<std::size_t>(a)]);
    }
    Matrix<S> hol = holonomy(lap.instance.rep, c);
    // ascending coefficients of det(tI - hol): coeff of t^{m-k} is e_k(-hol)
    auto cp = charpoly_oracle(-hol);
    const std::size_t m = hol.rows();
    S xc = edge_monomial(lap.instance.weights, c);
    S factor = ScalarTraits<S>::zero();
    S xk = ScalarTraits<S>::one();
    for (int k = 0; k <= kmax; ++k) {
      S term = xk * cp[m - static_cast<std::size_t>(k)];
      for (int a : verts) {
        auto ua = static_cast<std::size_t>(a);
        term = term * scalar_pow(lap.z[ua], static_cast<unsigned>(n[ua] - k));
      }
      factor = factor + term;
      xk = xk * xc;
    }
    bump(stats, &EvalStats::terms);
    value = value * factor;
  }
  for (std::size_t a = 0; a < n.size(); ++a) {
    if (!on_cycle[a]) value = value * scalar_pow(lap.z[a], static_cast<unsigned>(n[a]));
  }
  return value;
}

struct EulerTruncatedOptions {
  double tol = 1e-9;          // target absolute truncation error
  int max_len = 64;           // longest prime cycles considered
  std::uint64_t max_primes = 5'000'000;
};

struct EulerTruncatedResult {
  ComplexFloat value;
  double certified_error_bound = 0.0;  // truncation_bound + rounding_bound
  double truncation_bound = 0.0;       // |value| (exp(B) - 1)
  double rounding_bound = 0.0;         // 64 eps |value| (factors + n)
  double rho = 0.0;           // upper bound on the spectral radius of P
  double tail_log_bound = 0.0;
  int max_len = 0;            // longest prime length included
  std::uint64_t factors = 0;
  bool exact_product = false;  // finitely many primes: no truncation
  bool reached_tol = false;
};

// Upper bound on the spectral radius of the nonnegative matrix q: the
// Collatz-Wielandt ratio max_a (q w)_a / w_a for a positive w obtained by
// power iteration.
double collatz_wielandt_bound(const std::vector<std::vector<double>>& q, int iterations = 2000);

// Checks x_e >= 0 and kappa_a >= 0; the reachability assumption (every vertex
// reaches a vertex with kappa > 0 or without outgoing edges) and ||U_e||_2 <= 1
// are checked when `need_assumptions`. Returns the list of failures.
std::vector<std::string> sub_markov_violations(const TwistedLaplacian<ComplexFloat>& lap,
                                               const std::vector<double>& kappa, bool need_assumptions);

// (z+kappa)^n prod over prime cycles of length <= L of det(I - p^{e(c)} hol c),
// p_e = x_e / (z_{s(e)} + kappa_{s(e)}), with L increased until
// |value| (exp(B) - 1) < tol, B = n rho^{L+1} / ((L+1)(1-rho)). The
// certified bound adds a floating-point allowance for the factors.
// Target: det(diag(kappa) + Delta).
EulerTruncatedResult det_euler_truncated(const TwistedLaplacian<ComplexFloat>& lap, const std::vector<double>& kappa,
                                         const EulerTruncatedOptions& opts = {}, EvalStats* stats = nullptr);

struct UnitaryComparisonReport {
  int trials = 0;
  int checks = 0;
  int failures = 0;
  double min_ratio = 0.0;  // min over checks with det(t+Delta0)^N > 0
  std::vector<double> t_values;
  bool holds() const { return failures == 0; }
};

// det(t+Delta) >= det(t+Delta0)^N for random unitary representations with
// U_{e^-1} = U_e^{-1}, over every t in `t_values`.
UnitaryComparisonReport unitary_comparison_check(const Instance<ComplexFloat>& base, int N,
                                                 const std::vector<double>& t_values, int trials, std::uint64_t seed,
                                                 double slack = 1e-9);

}  // namespace holodet
