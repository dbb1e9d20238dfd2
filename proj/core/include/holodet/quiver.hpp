#pragma once

// Quivers, representations and edge weights, plus the generators for the
// example families used throughout the tests.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "holodet/error.hpp"
#include "holodet/linalg.hpp"
#include "holodet/multipoly.hpp"
#include "holodet/ring.hpp"

namespace holodet {

// Vertices are 0-based here; files and text output use 1-based numbering.
struct Edge {
  std::string id;
  int src = 0;
  int tgt = 0;
};

class Quiver {
 public:
  Quiver() = default;
  // Stores the data as given; use validate() to check it. Out-of-range
  // endpoints are kept but left out of the adjacency lists.
  Quiver(int vertex_count, std::vector<Edge> edges, std::vector<std::pair<int, int>> involution = {});

  int vertex_count() const { return vertex_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int e) const { return edges_.at(static_cast<std::size_t>(e)); }
  int src(int e) const { return edges_[static_cast<std::size_t>(e)].src; }
  int tgt(int e) const { return edges_[static_cast<std::size_t>(e)].tgt; }

  // Edge index for an id; throws ValidationError if absent.
  int edge_index(const std::string& id) const;
  std::optional<int> find_edge(const std::string& id) const;

  const std::vector<int>& out_edges(int v) const { return out_[static_cast<std::size_t>(v)]; }
  const std::vector<int>& in_edges(int v) const { return in_[static_cast<std::size_t>(v)]; }

  // Pairs of edge indices (e, e^-1); empty if the quiver is not bidirected.
  const std::vector<std::pair<int, int>>& involution() const { return involution_; }
  bool has_involution() const { return !involution_.empty(); }
  int inverse_edge(int e) const;  // -1 when unpaired

 private:
  int vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
  std::vector<std::pair<int, int>> involution_;
  std::vector<int> inverse_;
};

template <class S>
struct Representation {
  std::vector<int> ranks;          // n_a per vertex
  std::vector<Matrix<S>> matrices;  // U_e per edge index, n_src x n_tgt
};

template <class S>
using EdgeWeights = std::vector<S>;  // x_e per edge index

template <class S>
using VertexWeights = std::vector<S>;  // z_a per vertex

template <class S>
struct Instance {
  Quiver quiver;
  Representation<S> rep;
  EdgeWeights<S> weights;

  int total_rank() const {
    int n = 0;
    for (int r : rep.ranks) n += r;
    return n;
  }
};

struct Violation {
  std::string kind;  // "self-loop", "shape mismatch", ...
  std::string where;  // "edge e1", "vertex 3", ...
  std::string message;
};

// Structural checks that do not depend on the scalar type.
std::vector<Violation> validate_structure(const Quiver& q, const std::vector<int>& ranks,
                                          const std::vector<std::pair<std::size_t, std::size_t>>& shapes,
                                          std::size_t weight_count);

template <class S>
std::vector<Violation> validate(const Quiver& q, const Representation<S>& r, const EdgeWeights<S>& w) {
  std::vector<std::pair<std::size_t, std::size_t>> shapes;
  shapes.reserve(r.matrices.size());
  for (const auto& m : r.matrices) shapes.emplace_back(m.rows(), m.cols());
  return validate_structure(q, r.ranks, shapes, w.size());
}

template <class S>
std::vector<Violation> validate(const Instance<S>& inst) {
  return validate(inst.quiver, inst.rep, inst.weights);
}

// Throws ValidationError listing every violation.
void raise_violations(const std::vector<Violation>& violations);

template <class S>
void require_valid(const Instance<S>& inst) {
  raise_violations(validate(inst));
}

template <class S>
VertexWeights<S> vertex_z(const Quiver& q, const EdgeWeights<S>& w) {
  VertexWeights<S> z(static_cast<std::size_t>(q.vertex_count()), ScalarTraits<S>::zero());
  for (int e = 0; e < q.edge_count(); ++e) {
    auto s = static_cast<std::size_t>(q.src(e));
    z[s] = z[s] + w[static_cast<std::size_t>(e)];
  }
  return z;
}

// Converts every scalar of an instance.
template <class T, class S, class F>
Instance<T> map_instance(const Instance<S>& inst, F&& f) {
  Instance<T> out;
  out.quiver = inst.quiver;
  out.rep.ranks = inst.rep.ranks;
  for (const auto& m : inst.rep.matrices) out.rep.matrices.push_back(m.template map<T>(f));
  for (const auto& x : inst.weights) out.weights.push_back(f(x));
  return out;
}

Instance<ComplexFloat> to_float(const Instance<GaussianRational>& inst);
Instance<MultiPoly> to_poly(const Instance<GaussianRational>& inst);

// Replaces every weight by the indeterminate x<id>, registered in `symbols`.
Instance<MultiPoly> with_symbolic_weights(const Instance<GaussianRational>& inst, IndeterminateSet& symbols);

// Numeric materialisation of a parsed instance; throws ValidationError if a
// symbol is left.
Instance<GaussianRational> to_exact(const Instance<MultiPoly>& inst, const IndeterminateSet& symbols);

struct RandomSpec {
  std::uint64_t seed = 1;
  int p = 3;
  int max_edges = 5;
  int max_rank = 2;
  int max_total_rank = 0;  // 0: no cap
  bool bidirected = false;
  // Every vertex gets an outgoing edge (plain) or the pairs start with a
  // spanning tree (bidirected). Needs max_edges >= p, resp. 2(p-1).
  bool cover = false;
};

// "acyclic", "unicyclic", "figure5", "two_cycle".
Instance<GaussianRational> gen_example(const std::string& name);
Instance<GaussianRational> gen_random(const RandomSpec& spec);
std::vector<std::string> example_names();

// Haar-like unitary: Gram-Schmidt on a complex Gaussian matrix, with the
// phases of the diagonal of R fixed to 1.
Matrix<ComplexFloat> haar_like_unitary(int n, std::mt19937_64& rng);

// Small random Gaussian rational with real and imaginary parts in [-3,3]
// over denominators {1,2,3}.
GaussianRational random_gaussian_rational(std::mt19937_64& rng, bool allow_imaginary = true);
// Random positive rational in [1/3, 5].
BigRational random_positive_rational(std::mt19937_64& rng);

// Rank check for a float unitary: max |U*U - I|.
double unitarity_defect(const Matrix<ComplexFloat>& u);

}  // namespace holodet
