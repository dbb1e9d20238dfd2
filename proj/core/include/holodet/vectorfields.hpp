#pragma once

// Expansions of det Delta over stacks of edges (one outgoing edge per slot)
// and the permutations of slots that are well chained with respect to them.

#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "holodet/error.hpp"
#include "holodet/laplacian.hpp"
#include "holodet/permutations.hpp"
#include "holodet/stats.hpp"

namespace holodet {

enum class VectorFieldVariant { Sigma, SigmaPrime, Beta };

struct VectorFieldOptions {
  double budget = 1e7;  // elementary terms allowed, estimated before enumeration
};

// prod_a outdeg(a)^{n_a} * n!, times prod_a n_a! for the beta variant.
double vector_fields_term_estimate(const Quiver& q, const std::vector<int>& ranks, VectorFieldVariant variant);

void check_vector_fields_budget(const Quiver& q, const std::vector<int>& ranks, VectorFieldVariant variant,
                                const VectorFieldOptions& opts);

// Calls visit(xi) for every stack xi: [n] -> E with s(xi(i)) = bl(i).
void for_each_stack(const Quiver& q, const std::vector<int>& block_of, const std::function<void(const std::vector<int>&)>& visit);

// Calls visit(sigma) for every sigma in Sigma(xi): sigma(i) = i or
// t(xi(i)) = bl(sigma(i)).
void for_each_well_chained(const Quiver& q, const std::vector<int>& block_of, const std::vector<int>& xi,
                           const std::function<void(const std::vector<int>&)>& visit);

// Calls visit(sigma) for every sigma in Sigma'(xi): each cycle stays in one
// block, or every step i -> sigma(i) follows xi(i) into block bl(sigma(i)).
void for_each_sigma_prime(const Quiver& q, const std::vector<int>& block_of, const std::vector<int>& xi,
                          const std::function<void(const std::vector<int>&)>& visit);

// Induced block permutation P(sigma): on each block, the first-return map of
// sigma restricted to the slots of that block that sigma moves; slots fixed
// by sigma stay fixed.
std::vector<int> induced_block_permutation(const std::vector<int>& block_of, const std::vector<int>& sigma);

// beta in B = prod S_{n_a} dominates sigma when beta agrees with P(sigma) on
// every slot moved by sigma.
bool dominates(const std::vector<int>& beta, const std::vector<int>& sigma, const std::vector<int>& p_sigma);

// All elements of B as permutations of [n], in lexicographic order.
std::vector<std::vector<int>> block_permutations(const std::vector<int>& ranks);

namespace detail {

template <class S>
class CycleTraceCache {
 public:
  explicit CycleTraceCache(const Representation<S>& rep) : rep_(rep) {}

  // -Tr(U_{xi(i1)} ... U_{xi(ir)}) along the cycle of sigma through i1.
  const S& minus_trace(const std::vector<int>& edge_seq) {
    auto key = min_rotation(edge_seq);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    Matrix<S> prod = rep_.matrices[static_cast<std::size_t>(key.front())];
    for (std::size_t k = 1; k < key.size(); ++k) prod = prod * rep_.matrices[static_cast<std::size_t>(key[k])];
    return memo_.emplace(std::move(key), -prod.trace()).first->second;
  }

 private:
  const Representation<S>& rep_;
  std::map<std::vector<int>, S> memo_;
};

// Product of -Tr hol over the cycles of sigma that visit at least two blocks.
template <class S>
S cinematic_weight(const std::vector<int>& block_of, const std::vector<int>& xi, const std::vector<int>& sigma,
                   CycleTraceCache<S>& cache) {
  S w = ScalarTraits<S>::one();
  for (const auto& cyc : permutation_cycles(sigma)) {
    if (cyc.size() < 2) continue;
    std::vector<int> edges;
    bool single_block = true;
    int i = cyc.front();
    for (std::size_t k = 0; k < cyc.size(); ++k, i = sigma[static_cast<std::size_t>(i)]) {
      edges.push_back(xi[static_cast<std::size_t>(i)]);
      single_block = single_block && block_of[static_cast<std::size_t>(i)] == block_of[static_cast<std::size_t>(cyc.front())];
    }
    if (single_block) continue;
    w = w * cache.minus_trace(edges);
    if (ScalarTraits<S>::is_zero(w)) break;
  }
  return w;
}

template <class S>
S stack_monomial(const EdgeWeights<S>& x, const std::vector<int>& xi) {
  S m = ScalarTraits<S>::one();
  for (int e : xi) m = m * x[static_cast<std::size_t>(e)];
  return m;
}

inline std::vector<int> slot_blocks(const std::vector<int>& ranks) {
  std::vector<int> out;
  for (std::size_t a = 0; a < ranks.size(); ++a) {
    for (int k = 0; k < ranks[a]; ++k) out.push_back(static_cast<int>(a));
  }
  return out;
}

}  // namespace detail

// (1/prod n_a!) sum_xi x^xi sum_{sigma in Sigma(xi)} prod_a (n_a - v_a(sigma))! prod_{c in C(sigma)} (-Tr hol c).
template <class S>
S det_vector_fields(const TwistedLaplacian<S>& lap, const VectorFieldOptions& opts = {}, EvalStats* stats = nullptr) {
  const Quiver& q = lap.quiver();
  const auto& ranks = lap.ranks();
  check_vector_fields_budget(q, ranks, VectorFieldVariant::Sigma, opts);
  const auto block_of = detail::slot_blocks(ranks);
  detail::CycleTraceCache<S> cache(lap.instance.rep);
  S total = ScalarTraits<S>::zero();
  for_each_stack(q, block_of, [&](const std::vector<int>& xi) {
    S inner = ScalarTraits<S>::zero();
    for_each_well_chained(q, block_of, xi, [&](const std::vector<int>& sigma) {
      bump(stats, &EvalStats::enumerated);
      S w = detail::cinematic_weight(block_of, xi, sigma, cache);
      if (ScalarTraits<S>::is_zero(w)) return;
      std::vector<int> moved(ranks.size(), 0);
      for (std::size_t i = 0; i < sigma.size(); ++i) {
        if (sigma[i] != static_cast<int>(i)) ++moved[static_cast<std::size_t>(block_of[i])];
      }
      long long f = 1;
      for (std::size_t a = 0; a < ranks.size(); ++a) f *= factorial(ranks[a] - moved[a]);
      bump(stats, &EvalStats::terms);
      inner = inner + scale_int(w, f);
    });
    if (!ScalarTraits<S>::is_zero(inner)) total = total + detail::stack_monomial(lap.instance.weights, xi) * inner;
  });
  long long denom = 1;
  for (int na : ranks) denom *= factorial(na);
  return int_div(total, denom);
}

// The two reformulations of the factorial weight: a sum over Sigma'(xi)
// with weight prod over multi-block cycles, or a sum over pairs (beta,
// sigma) with beta dominating sigma.
template <class S>
S det_vector_fields_variant(const TwistedLaplacian<S>& lap, VectorFieldVariant variant,
                            const VectorFieldOptions& opts = {}, EvalStats* stats = nullptr) {
  if (variant == VectorFieldVariant::Sigma) return det_vector_fields(lap, opts, stats);
  const Quiver& q = lap.quiver();
  const auto& ranks = lap.ranks();
  check_vector_fields_budget(q, ranks, variant, opts);
  const auto block_of = detail::slot_blocks(ranks);
  detail::CycleTraceCache<S> cache(lap.instance.rep);
  const auto betas = variant == VectorFieldVariant::Beta ? block_permutations(ranks) : std::vector<std::vector<int>>{};
  S total = ScalarTraits<S>::zero();
  for_each_stack(q, block_of, [&](const std::vector<int>& xi) {
    S inner = ScalarTraits<S>::zero();
    if (variant == VectorFieldVariant::SigmaPrime) {
      for_each_sigma_prime(q, block_of, xi, [&](const std::vector<int>& sigma) {
        bump(stats, &EvalStats::enumerated);
        S w = detail::cinematic_weight(block_of, xi, sigma, cache);
        if (ScalarTraits<S>::is_zero(w)) return;
        bump(stats, &EvalStats::terms);
        inner = inner + w;
      });
    } else {
      for_each_well_chained(q, block_of, xi, [&](const std::vector<int>& sigma) {
        S w = detail::cinematic_weight(block_of, xi, sigma, cache);
        if (ScalarTraits<S>::is_zero(w)) return;
        auto p_sigma = induced_block_permutation(block_of, sigma);
        for (const auto& beta : betas) {
          bump(stats, &EvalStats::enumerated);
          if (!dominates(beta, sigma, p_sigma)) continue;
          bump(stats, &EvalStats::terms);
          inner = inner + w;
        }
      });
    }
    if (!ScalarTraits<S>::is_zero(inner)) total = total + detail::stack_monomial(lap.instance.weights, xi) * inner;
  });
  long long denom = 1;
  for (int na : ranks) denom *= factorial(na);
  return int_div(total, denom);
}

// sum over F with exactly one edge out of each vertex of
// x^F prod_{cycles c of F} (1 - hol(c)); all ranks must be 1.
template <class S>
S det_forman_classic(const TwistedLaplacian<S>& lap, EvalStats* stats = nullptr) {
  const Quiver& q = lap.quiver();
  for (std::size_t a = 0; a < lap.ranks().size(); ++a) {
    if (lap.ranks()[a] != 1) {
      throw RefusalError("the classical vector-field sum needs rank 1 at every vertex; vertex " +
                         std::to_string(a + 1) + " has rank " + std::to_string(lap.ranks()[a]));
    }
  }
  const auto& x = lap.instance.weights;
  const auto& u = lap.instance.rep.matrices;
  const int p = q.vertex_count();
  std::vector<int> choice(static_cast<std::size_t>(p), -1);
  S total = ScalarTraits<S>::zero();
  std::function<void(int)> pick = [&](int v) {
    if (v == p) {
      bump(stats, &EvalStats::enumerated);
      S term = ScalarTraits<S>::one();
      for (int e : choice) term = term * x[static_cast<std::size_t>(e)];
      // Cycles of the functional graph v -> t(choice[v]).
      std::vector<int> state(static_cast<std::size_t>(p), 0);  // 0 new, 1 on path, 2 done
      for (int s = 0; s < p && !ScalarTraits<S>::is_zero(term); ++s) {
        std::vector<int> path;
        int w = s;
        while (state[static_cast<std::size_t>(w)] == 0) {
          state[static_cast<std::size_t>(w)] = 1;
          path.push_back(w);
          w = q.tgt(choice[static_cast<std::size_t>(w)]);
        }
        if (state[static_cast<std::size_t>(w)] == 1) {
          S hol = ScalarTraits<S>::one();
          int y = w;
          do {
            int e = choice[static_cast<std::size_t>(y)];
            hol = hol * u[static_cast<std::size_t>(e)](0, 0);
            y = q.tgt(e);
          } while (y != w);
          term = term * (ScalarTraits<S>::one() - hol);
        }
        for (int y : path) state[static_cast<std::size_t>(y)] = 2;
      }
      if (ScalarTraits<S>::is_zero(term)) return;
      bump(stats, &EvalStats::terms);
      total = total + term;
      return;
    }
    for (int e : q.out_edges(v)) {
      choice[static_cast<std::size_t>(v)] = e;
      pick(v + 1);
    }
  };
  pick(0);
  return total;
}

}  // namespace holodet
