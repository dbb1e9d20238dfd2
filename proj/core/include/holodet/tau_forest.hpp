#pragma once

// det_tau of the p x p array of Laplacian blocks with tau = matrix trace
// (so tau(1) = N), against the sum over maps F choosing one outgoing edge
// per vertex of x^F prod_{cycles c of F} (1 - Tr hol c).

#include <functional>

#include "holodet/laplacian.hpp"
#include "holodet/taudet.hpp"

namespace holodet {

template <class S>
struct TauForestReport {
  int N = 0;
  S lhs;     // det_tau of the block array
  S rhs;     // forest sum
  S oracle;  // det Delta
  bool lhs_equals_rhs = false;
  bool lhs_equals_oracle = false;
  bool rhs_equals_oracle = false;
};

// Entry (a,b) of the array: z_a times the unit word on the diagonal, and
// -sum_{e: a->b} x_e U_e off it (letter id = edge index).
template <class S>
std::pair<TauArray<S>, TauContext<S>> laplacian_tau_array(const TwistedLaplacian<S>& lap) {
  const Quiver& q = lap.quiver();
  const auto p = static_cast<std::size_t>(q.vertex_count());
  TauArray<S> m(p, std::vector<TauEntry<S>>(p));
  for (std::size_t a = 0; a < p; ++a) m[a][a].push_back(TauTerm<S>{lap.z[a], {}});
  for (int e = 0; e < q.edge_count(); ++e) {
    auto s = static_cast<std::size_t>(q.src(e));
    auto t = static_cast<std::size_t>(q.tgt(e));
    m[s][t].push_back(TauTerm<S>{-lap.instance.weights[static_cast<std::size_t>(e)], {e}});
  }
  return {std::move(m), TauContext<S>(lap.instance.rep.matrices, ScalarTraits<S>::from_int(lap.ranks().front()))};
}

// sum over F in U of x^F prod_c (1 - Tr hol c); 0 when some vertex has no
// outgoing edge.
template <class S>
S forest_trace_sum(const TwistedLaplacian<S>& lap) {
  const Quiver& q = lap.quiver();
  const int p = q.vertex_count();
  std::vector<int> choice(static_cast<std::size_t>(p), -1);
  S total = ScalarTraits<S>::zero();
  std::function<void(int)> pick = [&](int v) {
    if (v == p) {
      S term = ScalarTraits<S>::one();
      for (int e : choice) term = term * lap.instance.weights[static_cast<std::size_t>(e)];
      std::vector<int> state(static_cast<std::size_t>(p), 0);
      for (int s = 0; s < p; ++s) {
        std::vector<int> path;
        int w = s;
        while (state[static_cast<std::size_t>(w)] == 0) {
          state[static_cast<std::size_t>(w)] = 1;
          path.push_back(w);
          w = q.tgt(choice[static_cast<std::size_t>(w)]);
        }
        if (state[static_cast<std::size_t>(w)] == 1) {
          std::vector<int> edges;
          int y = w;
          do {
            edges.push_back(choice[static_cast<std::size_t>(y)]);
            y = q.tgt(edges.back());
          } while (y != w);
          Matrix<S> hol = holonomy(lap.instance.rep, GCycle::from_edges(q, edges));
          term = term * (ScalarTraits<S>::one() - hol.trace());
        }
        for (int y : path) state[static_cast<std::size_t>(y)] = 2;
      }
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

// Reports the three values without asserting a relation between them.
// Requires every rank equal to N.
template <class S>
TauForestReport<S> tau_forest_check(const TwistedLaplacian<S>& lap) {
  const auto& ranks = lap.ranks();
  for (int r : ranks) {
    if (r != ranks.front()) throw ValidationError("the tau-forest check needs equal ranks at every vertex");
  }
  TauForestReport<S> rep;
  rep.N = ranks.front();
  auto [arr, ctx] = laplacian_tau_array(lap);
  rep.lhs = det_tau(arr, ctx);
  rep.rhs = forest_trace_sum(lap);
  rep.oracle = det_oracle(lap.matrix.base());
  rep.lhs_equals_rhs = ScalarTraits<S>::equal(rep.lhs, rep.rhs);
  rep.lhs_equals_oracle = ScalarTraits<S>::equal(rep.lhs, rep.oracle);
  rep.rhs_equals_oracle = ScalarTraits<S>::equal(rep.rhs, rep.oracle);
  return rep;
}

}  // namespace holodet
