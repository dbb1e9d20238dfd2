#pragma once

// The twisted Laplacian of a weighted quiver representation and its cycle
// expansions: determinant, characteristic polynomial, Wilson-loop moments,
// and the Cauchy-Binet splitting over edge index selections.

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "holodet/blockdet.hpp"
#include "holodet/error.hpp"
#include "holodet/fold.hpp"
#include "holodet/linalg.hpp"
#include "holodet/quiver.hpp"
#include "holodet/stats.hpp"
#include "holodet/walks.hpp"

namespace holodet {

template <class S>
struct TwistedLaplacian {
  Instance<S> instance;
  VertexWeights<S> z;
  BlockMatrix<S> matrix;

  const Quiver& quiver() const { return instance.quiver; }
  const std::vector<int>& ranks() const { return instance.rep.ranks; }
  int size() const { return matrix.size(); }
};

// Delta with diagonal blocks z_a I and off-diagonal blocks
// Delta[u v] = -sum_{e: u -> v} x_e U_e.
template <class S>
TwistedLaplacian<S> build_laplacian(const Instance<S>& inst) {
  require_valid(inst);
  const Quiver& q = inst.quiver;
  const auto& ranks = inst.rep.ranks;
  int n = inst.total_rank();
  std::vector<int> offset;
  int acc = 0;
  for (int r : ranks) {
    offset.push_back(acc);
    acc += r;
  }
  auto z = vertex_z(q, inst.weights);
  Matrix<S> m(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (int a = 0; a < q.vertex_count(); ++a) {
    for (int i = 0; i < ranks[static_cast<std::size_t>(a)]; ++i) {
      auto k = static_cast<std::size_t>(offset[static_cast<std::size_t>(a)] + i);
      m(k, k) = z[static_cast<std::size_t>(a)];
    }
  }
  for (int e = 0; e < q.edge_count(); ++e) {
    const auto& u = inst.rep.matrices[static_cast<std::size_t>(e)];
    const S& x = inst.weights[static_cast<std::size_t>(e)];
    auto r0 = static_cast<std::size_t>(offset[static_cast<std::size_t>(q.src(e))]);
    auto c0 = static_cast<std::size_t>(offset[static_cast<std::size_t>(q.tgt(e))]);
    for (std::size_t i = 0; i < u.rows(); ++i) {
      for (std::size_t j = 0; j < u.cols(); ++j) m(r0 + i, c0 + j) = m(r0 + i, c0 + j) - x * u(i, j);
    }
  }
  TwistedLaplacian<S> lap;
  lap.instance = inst;
  lap.z = std::move(z);
  lap.matrix = BlockMatrix<S>(std::move(m), ranks);
  return lap;
}

// hol(c) = U_{e1} ... U_{ek}, based at s(e1).
template <class S>
Matrix<S> holonomy(const Representation<S>& rep, const GCycle& c) {
  Matrix<S> prod = rep.matrices[static_cast<std::size_t>(c.edges().front())];
  for (std::size_t i = 1; i < c.edges().size(); ++i) prod = prod * rep.matrices[static_cast<std::size_t>(c.edges()[i])];
  return prod;
}

// x^{e(c)} = prod of the weights along c, with multiplicity.
template <class S>
S edge_monomial(const EdgeWeights<S>& w, const GCycle& c) {
  S prod = ScalarTraits<S>::one();
  for (int e : c.edges()) prod = prod * w[static_cast<std::size_t>(e)];
  return prod;
}

template <class S>
struct CycleCandidates {
  std::vector<GCycle> cycles;
  std::vector<S> weight;  // -x^{e(c)} Tr hol(c) / val(c)
};

template <class S>
CycleCandidates<S> laplacian_candidates(const TwistedLaplacian<S>& lap, EvalStats* stats) {
  CycleCandidates<S> out;
  const auto& inst = lap.instance;
  auto all = gcycles_within(inst.quiver, inst.rep.ranks);
  bump(stats, &EvalStats::candidates, all.size());
  for (auto& c : all) {
    S value = -(edge_monomial(inst.weights, c) * holonomy(inst.rep, c).trace());
    if (ScalarTraits<S>::is_zero(value)) continue;
    out.weight.push_back(int_div(value, valuation(c)));
    out.cycles.push_back(std::move(c));
  }
  return out;
}

// sum over C in CMS(G)_{<=n} of z^{n-v(C)}/C! prod_{c in C} (-x^{e(c)} Tr hol(c))/val(c).
template <class S>
S det_laplacian_cycles(const TwistedLaplacian<S>& lap, const FoldOptions& opts = {}, EvalStats* stats = nullptr) {
  auto cand = laplacian_candidates(lap, stats);
  const auto& n = lap.ranks();
  auto zpow = power_table(lap.z, n);
  GCycleMultisetStream stream(lap.quiver(), n, cand.cycles);
  return multiset_expansion<S>(stream.enumerator(), n, cand.weight, zpow, opts, stats);
}

// det(T + Delta) with T = diag(t_a I), t_a the indeterminates t_indices[a].
template <class S>
MultiPoly charpoly_laplacian(const TwistedLaplacian<S>& lap, const std::vector<std::size_t>& t_indices,
                             const FoldOptions& opts = {}, EvalStats* stats = nullptr) {
  static_assert(ScalarTraits<S>::exact, "charpoly_laplacian needs exact scalars");
  const auto& n = lap.ranks();
  if (t_indices.size() != n.size()) throw ValidationError("one t symbol per vertex is required");
  auto cand = laplacian_candidates(lap, stats);
  std::vector<MultiPoly> weight;
  for (const auto& w : cand.weight) weight.push_back(to_poly(w));
  std::vector<MultiPoly> zpoly;
  for (const auto& zb : lap.z) zpoly.push_back(to_poly(zb));
  auto shifted = shifted_powers(zpoly, n, t_indices);
  GCycleMultisetStream stream(lap.quiver(), n, cand.cycles);
  return multiset_expansion<MultiPoly>(stream.enumerator(), n, weight, shifted, opts, stats);
}

// Finite-support law of a random representation: independent edges, each
// either fixed (absent from the map) or drawn from a list of
// (probability, matrix) pairs.
struct EdgeLaw {
  std::vector<std::pair<BigRational, Matrix<GaussianRational>>> outcomes;
};
using RepresentationLaw = std::map<int, EdgeLaw>;  // by edge index

struct MomentTableRow {
  std::vector<CycleMultiset> tuple;  // (C_1, ..., C_k)
  GaussianRational weight;            // prod_j z^{n-v(C_j)}/C_j! prod_{c} (-x^{e(c)})/val(c)
  GaussianRational expectation;       // E[prod_j prod_{c in C_j} Tr hol(c)]
};

struct MomentResult {
  GaussianRational lhs;  // E[(det Delta)^k] by enumeration of the support
  GaussianRational rhs;  // sum over k-tuples of weight * expectation
  std::vector<GCycle> cycles;  // candidate cycles indexing the table entries
  std::vector<MomentTableRow> table;  // rows with nonzero contribution
  std::uint64_t support_size = 0;
};

// Checks the law (probabilities positive, summing to 1, shapes matching).
void validate_law(const Instance<GaussianRational>& inst, const RepresentationLaw& law);

MomentResult wilson_moment(const Instance<GaussianRational>& inst, const RepresentationLaw& law, int k);

struct MonteCarloSide {
  double mean_re = 0;
  double mean_im = 0;
  double stderr_abs = 0;
};

struct MonteCarloResult {
  MonteCarloSide lhs;  // samples of det(Delta)^k by the dense oracle
  MonteCarloSide rhs;  // samples of (cycle expansion)^k
  int samples = 0;
};

// Every edge matrix resampled as a Haar-like unitary; needs square U_e.
MonteCarloResult wilson_moment_monte_carlo(const Instance<ComplexFloat>& inst, int k, int samples,
                                           std::uint64_t seed);

template <class S>
struct CauchyBinetTerm {
  std::vector<std::vector<int>> index_sets;  // I_e per edge index, 0-based
  S value;
};

inline constexpr int kCauchyBinetMaxSize = 6;

// Selections {I_e subset of [n_{s(e)}]} with sum_{s(e)=a} |I_e| = n_a, each
// term det(D P_S d) where d f(e) = f(s(e)) - U_e f(t(e)) and
// D w(v) = sum_{s(e)=v} x_e w(e), so that Delta = D d.
template <class S>
std::vector<CauchyBinetTerm<S>> cauchy_binet_decompose(const TwistedLaplacian<S>& lap) {
  const auto& inst = lap.instance;
  const Quiver& q = inst.quiver;
  const auto& ranks = inst.rep.ranks;
  const int n = lap.size();
  if (n > kCauchyBinetMaxSize) {
    throw RefusalError("Cauchy-Binet decomposition limited to total rank " + std::to_string(kCauchyBinetMaxSize) +
                       ", got " + std::to_string(n));
  }
  std::vector<int> voff;
  int acc = 0;
  for (int r : ranks) {
    voff.push_back(acc);
    acc += r;
  }
  std::vector<int> eoff;
  int edim = 0;
  for (int e = 0; e < q.edge_count(); ++e) {
    eoff.push_back(edim);
    edim += ranks[static_cast<std::size_t>(q.src(e))];
  }
  const auto N = static_cast<std::size_t>(n);
  const auto E = static_cast<std::size_t>(edim);
  Matrix<S> d(E, N);
  Matrix<S> del(N, E);
  for (int e = 0; e < q.edge_count(); ++e) {
    auto s = static_cast<std::size_t>(q.src(e));
    auto t = static_cast<std::size_t>(q.tgt(e));
    const auto& u = inst.rep.matrices[static_cast<std::size_t>(e)];
    for (int i = 0; i < ranks[s]; ++i) {
      auto row = static_cast<std::size_t>(eoff[static_cast<std::size_t>(e)] + i);
      auto vi = static_cast<std::size_t>(voff[s] + i);
      d(row, vi) = d(row, vi) + ScalarTraits<S>::one();
      for (std::size_t j = 0; j < u.cols(); ++j) {
        auto col = static_cast<std::size_t>(voff[t]) + j;
        d(row, col) = d(row, col) - u(static_cast<std::size_t>(i), j);
      }
      del(vi, row) = inst.weights[static_cast<std::size_t>(e)];
    }
  }
  // Per vertex: all tuples of subsets (one per out-edge) with sizes summing to n_a.
  std::vector<std::vector<std::vector<int>>> per_vertex(static_cast<std::size_t>(q.vertex_count()));
  for (int a = 0; a < q.vertex_count(); ++a) {
    const auto& outs = q.out_edges(a);
    const int na = ranks[static_cast<std::size_t>(a)];
    std::vector<int> masks(outs.size(), 0);
    std::function<void(std::size_t, int)> choose = [&](std::size_t k, int remaining) {
      if (k == outs.size()) {
        if (remaining == 0) per_vertex[static_cast<std::size_t>(a)].push_back(masks);
        return;
      }
      for (int mask = 0; mask < (1 << na); ++mask) {
        int size = __builtin_popcount(static_cast<unsigned>(mask));
        if (size > remaining) continue;
        masks[k] = mask;
        choose(k + 1, remaining - size);
      }
    };
    choose(0, na);
  }
  std::vector<CauchyBinetTerm<S>> out;
  std::vector<int> edge_mask(static_cast<std::size_t>(q.edge_count()), 0);
  std::function<void(int)> over_vertices = [&](int a) {
    if (a == q.vertex_count()) {
      Matrix<S> proj(E, E);
      CauchyBinetTerm<S> term;
      for (int e = 0; e < q.edge_count(); ++e) {
        std::vector<int> idx;
        for (int i = 0; i < ranks[static_cast<std::size_t>(q.src(e))]; ++i) {
          if (edge_mask[static_cast<std::size_t>(e)] & (1 << i)) {
            idx.push_back(i);
            auto r = static_cast<std::size_t>(eoff[static_cast<std::size_t>(e)] + i);
            proj(r, r) = ScalarTraits<S>::one();
          }
        }
        term.index_sets.push_back(std::move(idx));
      }
      term.value = det_oracle(del * proj * d);
      out.push_back(std::move(term));
      return;
    }
    const auto& outs = q.out_edges(a);
    for (const auto& masks : per_vertex[static_cast<std::size_t>(a)]) {
      for (std::size_t k = 0; k < outs.size(); ++k) edge_mask[static_cast<std::size_t>(outs[k])] = masks[k];
      over_vertices(a + 1);
    }
  };
  over_vertices(0);
  return out;
}

}  // namespace holodet
