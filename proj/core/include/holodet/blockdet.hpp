#pragma once

// Determinant identities for block matrices: permutation-trace sums, the
// trace-determinant of A^box, the cycle-multiset expansion for matrices with
// scalar diagonal blocks, its integer-coefficient form, the characteristic
// polynomial, and the truncated block Euler product.

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "holodet/error.hpp"
#include "holodet/fold.hpp"
#include "holodet/linalg.hpp"
#include "holodet/multipoly.hpp"
#include "holodet/permutations.hpp"
#include "holodet/stats.hpp"
#include "holodet/taudet.hpp"
#include "holodet/walks.hpp"

namespace holodet {

inline constexpr int kPermMaxSize = 8;

inline void refuse_above(int n, int limit, const std::string& what) {
  if (n > limit) {
    throw RefusalError(what + " limited to total size " + std::to_string(limit) + ", got " + std::to_string(n));
  }
}

// (1/n!) sum_sigma eps(sigma) prod_{cycles c} Tr(M^{|c|}).
template <class S>
S det_perm_traces(const Matrix<S>& m, EvalStats* stats = nullptr) {
  if (!m.is_square()) throw ValidationError("determinant of a non-square matrix");
  const int n = static_cast<int>(m.rows());
  refuse_above(n, kPermMaxSize, "permutation-trace determinant");
  if (n == 0) return ScalarTraits<S>::one();
  std::vector<S> power_traces(static_cast<std::size_t>(n) + 1, ScalarTraits<S>::zero());
  Matrix<S> power = m;
  for (int k = 1; k <= n; ++k) {
    power_traces[static_cast<std::size_t>(k)] = power.trace();
    if (k < n) power = power * m;
  }
  S total = ScalarTraits<S>::zero();
  for_each_permutation(n, [&](const std::vector<int>& sigma, int sign) {
    bump(stats, &EvalStats::enumerated);
    S prod = ScalarTraits<S>::one();
    for (const auto& c : permutation_cycles(sigma)) prod = prod * power_traces[c.size()];
    total = sign > 0 ? total + prod : total - prod;
  });
  bump(stats, &EvalStats::terms, static_cast<std::uint64_t>(factorial(n)));
  return int_div(total, factorial(n));
}

// (1/prod n_a!) sum_sigma eps(sigma) prod_{cycles} Tr(A[bl(i1) bl(i2)] ... A[bl(ir) bl(i1)]).
template <class S>
S det_block_perm(const BlockMatrix<S>& a, EvalStats* stats = nullptr) {
  const int n = a.size();
  refuse_above(n, kPermMaxSize, "block permutation-trace determinant");
  std::map<std::vector<int>, S> memo;  // by canonical rotation of the block word
  S total = ScalarTraits<S>::zero();
  for_each_permutation(n, [&](const std::vector<int>& sigma, int sign) {
    bump(stats, &EvalStats::enumerated);
    S prod = ScalarTraits<S>::one();
    for (const auto& c : permutation_cycles(sigma)) {
      std::vector<int> blocks;
      int i = c.front();
      for (std::size_t k = 0; k < c.size(); ++k, i = sigma[static_cast<std::size_t>(i)]) blocks.push_back(a.bl(i));
      auto key = min_rotation(blocks);
      auto it = memo.find(key);
      if (it == memo.end()) it = memo.emplace(key, block_holonomy(a, std::span<const int>(key)).trace()).first;
      prod = prod * it->second;
      if (ScalarTraits<S>::is_zero(prod)) break;
    }
    if (ScalarTraits<S>::is_zero(prod)) return;
    bump(stats, &EvalStats::terms);
    total = sign > 0 ? total + prod : total - prod;
  });
  long long denom = 1;
  for (int na : a.partition()) denom *= factorial(na);
  return int_div(total, denom);
}

// det_Tr(A^box) / prod n_a!, with det_Tr evaluated by the generic
// tau-determinant.
template <class S>
S det_trace_formal(const BlockMatrix<S>& a, EvalStats* stats = nullptr) {
  refuse_above(a.size(), kTauDetMaxSize, "trace-determinant of A^box");
  auto [array, ctx] = box_array(a);
  S value = det_tau(array, ctx, stats);
  long long denom = 1;
  for (int na : a.partition()) denom *= factorial(na);
  return int_div(value, denom);
}

// Diagonal scalars z_a of a block matrix whose diagonal blocks are z_a I.
// Throws ValidationError naming the first offending block otherwise.
template <class S>
std::vector<S> scalar_diagonal(const BlockMatrix<S>& a) {
  std::vector<S> z;
  for (int b = 0; b < a.block_count(); ++b) {
    Matrix<S> d = a.block(b, b);
    S zb = d(0, 0);
    for (std::size_t i = 0; i < d.rows(); ++i) {
      for (std::size_t j = 0; j < d.cols(); ++j) {
        S want = i == j ? zb : ScalarTraits<S>::zero();
        bool ok = false;
        if constexpr (ScalarTraits<S>::kind == ScalarKind::Float) {
          ok = std::abs(d(i, j) - want) <= 1e-12 * std::abs(zb);
        } else {
          ok = ScalarTraits<S>::equal(d(i, j), want);
        }
        if (!ok) {
          throw ValidationError("diagonal block " + std::to_string(b + 1) + " is not a scalar multiple of the identity");
        }
      }
    }
    z.push_back(zb);
  }
  return z;
}

// Cyclic walks within the block sizes with W(-A, c) != 0, and those values.
template <class S>
struct WalkCandidates {
  std::vector<CyclicWalk> walks;
  std::vector<S> minus_w;  // -W(-A, c)
  std::vector<int> valuations;
};

template <class S>
WalkCandidates<S> walk_candidates(const BlockMatrix<S>& a, EvalStats* stats = nullptr) {
  const BlockMatrix<S> neg = -a;
  WalkCandidates<S> out;
  auto all = cyclic_walks_within(a.block_count(), a.partition());
  bump(stats, &EvalStats::candidates, all.size());
  for (auto& w : all) {
    S value = -walk_trace(neg, w);
    if (ScalarTraits<S>::is_zero(value)) continue;
    out.valuations.push_back(valuation(w));
    out.minus_w.push_back(std::move(value));
    out.walks.push_back(std::move(w));
  }
  return out;
}

// Powers z_a^k for 0 <= k <= n_a.
template <class S>
std::vector<std::vector<S>> power_table(const std::vector<S>& z, const std::vector<int>& n) {
  std::vector<std::vector<S>> t;
  for (std::size_t a = 0; a < z.size(); ++a) {
    std::vector<S> row{ScalarTraits<S>::one()};
    for (int k = 1; k <= n[a]; ++k) row.push_back(row.back() * z[a]);
    t.push_back(std::move(row));
  }
  return t;
}

// sum over multisets C of zfactor[a][n_a - v_a(C)] * prod_{c in C} weight(c)^m / C!.
// Shared by every cycle-multiset expansion; zfactor holds either plain
// powers z_a^k or shifted powers (z_a + t_a)^k.
template <class T>
T multiset_expansion(const MultisetEnumerator& en, const std::vector<int>& n, const std::vector<T>& weight,
                     const std::vector<std::vector<T>>& zfactor, const FoldOptions& opts, EvalStats* stats) {
  return fold_multisets<T>(
      en, opts,
      [&](const CycleMultiset& c, T& acc) {
        T term = ScalarTraits<T>::one();
        for (const auto& [i, m] : c.entries) {
          term = term * scalar_pow(weight[static_cast<std::size_t>(i)], static_cast<unsigned>(m));
        }
        for (std::size_t b = 0; b < n.size() && !ScalarTraits<T>::is_zero(term); ++b) {
          term = term * zfactor[b][static_cast<std::size_t>(n[b] - c.visits[b])];
        }
        if (ScalarTraits<T>::is_zero(term)) return false;
        acc = acc + int_div(term, c.factorial());
        return true;
      },
      stats);
}

// Shifted powers (z_b + t_b)^m for 0 <= m <= n_b, expanded binomially as
// sum_k binom(m,k) t_b^k z_b^{m-k}.
std::vector<std::vector<MultiPoly>> shifted_powers(const std::vector<MultiPoly>& z, const std::vector<int>& n,
                                                   const std::vector<std::size_t>& t_indices);

// sum over C in CMS_{<=n} of z^{n-v(C)}/C! prod_{c in C} (-W(-A,c))/val(c).
template <class S>
S det_scalar_diag(const BlockMatrix<S>& a, const FoldOptions& opts = {}, EvalStats* stats = nullptr) {
  const std::vector<S> z = scalar_diagonal(a);
  const auto& n = a.partition();
  auto cand = walk_candidates(a, stats);
  std::vector<S> weight;
  for (std::size_t i = 0; i < cand.walks.size(); ++i) weight.push_back(int_div(cand.minus_w[i], cand.valuations[i]));
  auto zpow = power_table(z, n);
  WalkMultisetStream stream(a.block_count(), n, cand.walks);
  return multiset_expansion<S>(stream.enumerator(), n, weight, zpow, opts, stats);
}

// Integer coefficient prod n_a! / (C! prod val), checked for integrality.
long long integral_coefficient(const std::vector<int>& n, const CycleMultiset& c, const std::vector<int>& valuations);

// prod n_a! det A = sum_C [prod n_a!/(C! prod val)] z^{n-v(C)} prod(-W(-A,c));
// evaluates the right side without any division and returns det A.
template <class S>
S det_scalar_diag_integral(const BlockMatrix<S>& a, const FoldOptions& opts = {}, EvalStats* stats = nullptr) {
  const std::vector<S> z = scalar_diagonal(a);
  const auto& n = a.partition();
  auto cand = walk_candidates(a, stats);
  auto zpow = power_table(z, n);
  WalkMultisetStream stream(a.block_count(), n, cand.walks);
  S scaled = fold_multisets<S>(
      stream.enumerator(), opts,
      [&](const CycleMultiset& c, S& acc) {
        long long coeff = integral_coefficient(n, c, cand.valuations);
        S term = ScalarTraits<S>::from_int(coeff);
        for (std::size_t b = 0; b < n.size(); ++b) {
          term = term * zpow[b][static_cast<std::size_t>(n[b] - c.visits[b])];
        }
        for (const auto& [i, m] : c.entries) term = term * scalar_pow(cand.minus_w[static_cast<std::size_t>(i)], m);
        if (ScalarTraits<S>::is_zero(term)) return false;
        acc = acc + term;
        return true;
      },
      stats);
  long long denom = 1;
  for (int na : n) denom *= factorial(na);
  return int_div(scaled, denom);
}

// det(T + A) with T = diag(t_a I), as a polynomial in the indeterminates
// t_indices[a]: each multiset contributes prod_a (z_a + t_a)^{n_a - v_a}
// in place of z^{n-v}, expanded binomially.
template <class S>
MultiPoly charpoly_block(const BlockMatrix<S>& a, const std::vector<std::size_t>& t_indices,
                         const FoldOptions& opts = {}, EvalStats* stats = nullptr) {
  static_assert(ScalarTraits<S>::exact, "charpoly_block needs exact scalars");
  const auto& n = a.partition();
  if (t_indices.size() != n.size()) throw ValidationError("one t symbol per block is required");
  const std::vector<S> z = scalar_diagonal(a);
  auto cand = walk_candidates(a, stats);
  std::vector<MultiPoly> weight;
  for (std::size_t i = 0; i < cand.walks.size(); ++i) weight.push_back(to_poly(int_div(cand.minus_w[i], cand.valuations[i])));
  std::vector<MultiPoly> zpoly;
  for (const auto& zb : z) zpoly.push_back(to_poly(zb));
  auto shifted = shifted_powers(zpoly, n, t_indices);
  WalkMultisetStream stream(a.block_count(), n, cand.walks);
  return multiset_expansion<MultiPoly>(stream.enumerator(), n, weight, shifted, opts, stats);
}

template <class S>
struct BlockEulerResult {
  S value;
  bool converged = false;
  double last_change = 0.0;  // relative change contributed by the longest walks
  int factors = 0;
};

// z^n prod over prime cyclic walks pi with |pi| <= max_total_visits of
// det(I - z^{-v(pi)} hol(-A, pi)), hol based at the first block of the
// canonical rotation.
template <class S>
  requires(ScalarTraits<S>::kind != ScalarKind::Polynomial)
BlockEulerResult<S> block_euler_truncated(const BlockMatrix<S>& a, int max_total_visits, double tol = 1e-9) {
  const std::vector<S> z = scalar_diagonal(a);
  for (std::size_t b = 0; b < z.size(); ++b) {
    if (ScalarTraits<S>::is_zero(z[b])) {
      throw ValidationError("diagonal scalar of block " + std::to_string(b + 1) + " is zero; it must be invertible");
    }
  }
  const BlockMatrix<S> neg = -a;
  BlockEulerResult<S> out;
  S value = ScalarTraits<S>::one();
  for (std::size_t b = 0; b < z.size(); ++b) value = value * scalar_pow(z[b], static_cast<unsigned>(a.block_size(static_cast<int>(b))));
  auto primes = prime_walks_within(a.block_count(), max_total_visits);
  S before_longest = value;
  std::size_t longest = primes.empty() ? 0 : primes.back().length();
  for (std::size_t k = 0; k < primes.size(); ++k) {
    const CyclicWalk& pi = primes[k];
    if (pi.length() == longest && (k == 0 || primes[k - 1].length() < longest)) before_longest = value;
    Matrix<S> hol = block_holonomy(neg, std::span<const int>(pi.seq()));
    S scale = ScalarTraits<S>::one();
    for (int b : pi.seq()) scale = scale / z[static_cast<std::size_t>(b)];
    Matrix<S> factor = Matrix<S>::identity(hol.rows()) - hol.scaled(scale);
    value = value * det_oracle(factor);
    ++out.factors;
  }
  double mag = std::max(ScalarTraits<S>::magnitude(value), 1e-300);
  out.last_change = primes.empty() ? 0.0 : ScalarTraits<S>::magnitude(value - before_longest) / mag;
  out.converged = out.last_change <= tol;
  out.value = value;
  return out;
}

}  // namespace holodet
