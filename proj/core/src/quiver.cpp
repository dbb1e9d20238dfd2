#include "holodet/quiver.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

namespace holodet {

Quiver::Quiver(int vertex_count, std::vector<Edge> edges, std::vector<std::pair<int, int>> involution)
    : vertex_count_(vertex_count), edges_(std::move(edges)), involution_(std::move(involution)) {
  const auto p = static_cast<std::size_t>(std::max(vertex_count_, 0));
  out_.assign(p, {});
  in_.assign(p, {});
  for (int e = 0; e < edge_count(); ++e) {
    const Edge& ed = edges_[static_cast<std::size_t>(e)];
    bool src_ok = ed.src >= 0 && ed.src < vertex_count_;
    bool tgt_ok = ed.tgt >= 0 && ed.tgt < vertex_count_;
    if (src_ok && tgt_ok) {
      out_[static_cast<std::size_t>(ed.src)].push_back(e);
      in_[static_cast<std::size_t>(ed.tgt)].push_back(e);
    }
  }
  inverse_.assign(edges_.size(), -1);
  for (auto [a, b] : involution_) {
    if (a >= 0 && a < edge_count() && b >= 0 && b < edge_count()) {
      inverse_[static_cast<std::size_t>(a)] = b;
      inverse_[static_cast<std::size_t>(b)] = a;
    }
  }
}

std::optional<int> Quiver::find_edge(const std::string& id) const {
  for (int e = 0; e < edge_count(); ++e) {
    if (edges_[static_cast<std::size_t>(e)].id == id) return e;
  }
  return std::nullopt;
}

int Quiver::edge_index(const std::string& id) const {
  if (auto e = find_edge(id)) return *e;
  throw ValidationError("unknown edge id '" + id + "'");
}

int Quiver::inverse_edge(int e) const { return inverse_.at(static_cast<std::size_t>(e)); }

std::vector<Violation> validate_structure(const Quiver& q, const std::vector<int>& ranks,
                                          const std::vector<std::pair<std::size_t, std::size_t>>& shapes,
                                          std::size_t weight_count) {
  std::vector<Violation> out;
  const int p = q.vertex_count();
  if (p < 1) out.push_back({"vertex count", "quiver", "vertex count must be at least 1"});
  if (ranks.size() != static_cast<std::size_t>(std::max(p, 0))) {
    out.push_back({"rank count", "representation",
                   "expected " + std::to_string(p) + " ranks, got " + std::to_string(ranks.size())});
  }
  for (std::size_t a = 0; a < ranks.size(); ++a) {
    if (ranks[a] < 1) {
      out.push_back({"rank", "vertex " + std::to_string(a + 1), "rank must be at least 1"});
    }
  }
  std::set<std::string> seen;
  for (int e = 0; e < q.edge_count(); ++e) {
    const Edge& ed = q.edge(e);
    const std::string where = "edge " + ed.id;
    if (!seen.insert(ed.id).second) out.push_back({"duplicate edge id", where, "edge id used twice"});
    bool in_range = true;
    for (int v : {ed.src, ed.tgt}) {
      if (v < 0 || v >= p) {
        out.push_back({"vertex out of range", where, "endpoint " + std::to_string(v + 1) + " outside 1.." +
                                                         std::to_string(p)});
        in_range = false;
      }
    }
    if (ed.src == ed.tgt) out.push_back({"self-loop", where, "source equals target"});
    const auto ei = static_cast<std::size_t>(e);
    if (ei >= shapes.size()) {
      out.push_back({"missing matrix", where, "no matrix for edge"});
    } else if (in_range && ranks.size() == static_cast<std::size_t>(p)) {
      auto want_r = static_cast<std::size_t>(ranks[static_cast<std::size_t>(ed.src)]);
      auto want_c = static_cast<std::size_t>(ranks[static_cast<std::size_t>(ed.tgt)]);
      if (shapes[ei].first != want_r || shapes[ei].second != want_c) {
        out.push_back({"shape mismatch", where,
                       "matrix is " + std::to_string(shapes[ei].first) + "x" + std::to_string(shapes[ei].second) +
                           ", expected " + std::to_string(want_r) + "x" + std::to_string(want_c)});
      }
    }
    if (ei >= weight_count) out.push_back({"missing weight", where, "no weight for edge"});
  }
  if (shapes.size() > static_cast<std::size_t>(q.edge_count())) {
    out.push_back({"extra matrix", "representation", "more matrices than edges"});
  }
  for (auto [a, b] : q.involution()) {
    if (a < 0 || a >= q.edge_count() || b < 0 || b >= q.edge_count()) {
      out.push_back({"involution", "involution", "pairs an unknown edge"});
      continue;
    }
    if (q.src(a) != q.tgt(b) || q.tgt(a) != q.src(b)) {
      out.push_back({"involution", "edge " + q.edge(a).id, "paired edge " + q.edge(b).id + " is not its reverse"});
    }
  }
  return out;
}

void raise_violations(const std::vector<Violation>& violations) {
  if (violations.empty()) return;
  std::string msg = "invalid instance:";
  for (const auto& v : violations) msg += " [" + v.kind + " at " + v.where + ": " + v.message + "]";
  throw ValidationError(msg);
}

Instance<ComplexFloat> to_float(const Instance<GaussianRational>& inst) {
  return map_instance<ComplexFloat>(inst, [](const GaussianRational& g) { return g.to_complex(); });
}

Instance<MultiPoly> to_poly(const Instance<GaussianRational>& inst) {
  return map_instance<MultiPoly>(inst, [](const GaussianRational& g) { return MultiPoly(g); });
}

Instance<MultiPoly> with_symbolic_weights(const Instance<GaussianRational>& inst, IndeterminateSet& symbols) {
  Instance<MultiPoly> out = to_poly(inst);
  for (int e = 0; e < inst.quiver.edge_count(); ++e) {
    out.weights[static_cast<std::size_t>(e)] = MultiPoly::variable(symbols.add("x" + inst.quiver.edge(e).id));
  }
  return out;
}

Instance<GaussianRational> to_exact(const Instance<MultiPoly>& inst, const IndeterminateSet& symbols) {
  return map_instance<GaussianRational>(inst, [&](const MultiPoly& p) {
    if (!p.is_constant()) {
      std::size_t w = p.width();
      std::string name = w > 0 && w - 1 < symbols.size() ? symbols.name(w - 1) : "?";
      throw ValidationError("symbol '" + name + "' needs a numeric value in this mode");
    }
    return p.constant_term();
  });
}

namespace {

Matrix<GaussianRational> scalar_matrix(const GaussianRational& v) { return Matrix<GaussianRational>(1, 1, {v}); }

Instance<GaussianRational> make_instance(int p, std::vector<Edge> edges, std::vector<int> ranks,
                                         std::vector<Matrix<GaussianRational>> mats,
                                         std::vector<GaussianRational> weights) {
  Instance<GaussianRational> inst;
  inst.quiver = Quiver(p, std::move(edges));
  inst.rep.ranks = std::move(ranks);
  inst.rep.matrices = std::move(mats);
  inst.weights = std::move(weights);
  return inst;
}

Instance<GaussianRational> two_cycle() {
  return make_instance(2, {{"1", 0, 1}, {"2", 1, 0}}, {1, 1},
                       {scalar_matrix(BigRational(1, 2)), scalar_matrix(3)}, {2, 3});
}

Instance<GaussianRational> acyclic() {
  std::vector<Edge> edges = {{"12", 0, 1}, {"13", 0, 2}, {"24", 1, 3}, {"34", 2, 3}};
  std::vector<Matrix<GaussianRational>> mats = {
      scalar_matrix(2), scalar_matrix(GaussianRational(1, 1)), scalar_matrix(BigRational(-1, 2)), scalar_matrix(3)};
  return make_instance(4, std::move(edges), {1, 1, 1, 1}, std::move(mats), {1, 2, 3, 4});
}

// Triangle 1->2->3->1 with trees 4->1, 5->4, 6->2; vertex 1 has rank 2.
Instance<GaussianRational> unicyclic() {
  std::vector<Edge> edges = {{"12", 0, 1}, {"23", 1, 2}, {"31", 2, 0}, {"41", 3, 0}, {"54", 4, 3}, {"62", 5, 1}};
  std::vector<int> ranks = {2, 2, 1, 1, 1, 1};
  std::vector<Matrix<GaussianRational>> mats = {
      Matrix<GaussianRational>{{1, 2}, {0, GaussianRational(0, 1)}},
      Matrix<GaussianRational>{{BigRational(1, 2)}, {1}},
      Matrix<GaussianRational>{{1, -1}},
      Matrix<GaussianRational>{{2, 1}},
      scalar_matrix(BigRational(3, 2)),
      Matrix<GaussianRational>{{1, 1}},
  };
  return make_instance(6, std::move(edges), std::move(ranks), std::move(mats), {1, 2, 3, 2, 5, 1});
}

// Two 4-cycles joined by the chords 2->5 and 3->6.
Instance<GaussianRational> figure5() {
  std::vector<Edge> edges = {{"12", 0, 1}, {"23", 1, 2}, {"34", 2, 3}, {"41", 3, 0}, {"56", 4, 5},
                             {"67", 5, 6}, {"78", 6, 7}, {"85", 7, 4}, {"25", 1, 4}, {"36", 2, 5}};
  std::vector<Matrix<GaussianRational>> mats = {
      scalar_matrix(2), scalar_matrix(GaussianRational(0, 1)), scalar_matrix(BigRational(1, 3)), scalar_matrix(-1),
      scalar_matrix(3), scalar_matrix(BigRational(1, 2)), scalar_matrix(GaussianRational(1, -1)), scalar_matrix(2),
      scalar_matrix(5), scalar_matrix(-2)};
  return make_instance(8, std::move(edges), std::vector<int>(8, 1), std::move(mats), {1, 2, 3, 1, 2, 1, 4, 3, 1, 2});
}

}  // namespace

std::vector<std::string> example_names() { return {"acyclic", "unicyclic", "figure5", "two_cycle"}; }

Instance<GaussianRational> gen_example(const std::string& name) {
  if (name == "acyclic") return acyclic();
  if (name == "unicyclic") return unicyclic();
  if (name == "figure5") return figure5();
  if (name == "two_cycle") return two_cycle();
  throw ValidationError("unknown example family '" + name + "'");
}

GaussianRational random_gaussian_rational(std::mt19937_64& rng, bool allow_imaginary) {
  std::uniform_int_distribution<int> num(-3, 3);
  std::uniform_int_distribution<int> den(1, 3);
  std::uniform_int_distribution<int> coin(0, 1);
  BigRational re(num(rng), den(rng));
  BigRational im;
  if (allow_imaginary && coin(rng) == 1) im = BigRational(num(rng), den(rng));
  return {re, im};
}

BigRational random_positive_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(1, 5);
  std::uniform_int_distribution<int> den(1, 3);
  return {num(rng), den(rng)};
}

Instance<GaussianRational> gen_random(const RandomSpec& spec) {
  if (spec.p < 1 || spec.max_rank < 1 || spec.max_edges < 0) throw ValidationError("invalid random parameters");
  if (spec.max_total_rank != 0 && spec.max_total_rank < spec.p) {
    throw ValidationError("total rank cap below vertex count");
  }
  std::mt19937_64 rng(spec.seed);
  std::vector<int> ranks(static_cast<std::size_t>(spec.p));
  std::uniform_int_distribution<int> rank_dist(1, spec.max_rank);
  for (;;) {
    int total = 0;
    for (auto& r : ranks) {
      r = rank_dist(rng);
      total += r;
    }
    if (spec.max_total_rank == 0 || total <= spec.max_total_rank) break;
  }
  std::vector<Edge> edges;
  std::vector<std::pair<int, int>> involution;
  if (spec.p >= 2) {
    std::uniform_int_distribution<int> vertex(0, spec.p - 1);
    std::uniform_int_distribution<int> count(1, std::max(spec.max_edges, 1));
    int m = spec.max_edges == 0 ? 0 : count(rng);
    if (spec.bidirected) m = std::max(m / 2, spec.max_edges == 0 ? 0 : 1);
    const int forced = !spec.cover ? 0 : spec.bidirected ? spec.p - 1 : spec.p;
    if (forced > 0) {
      if ((spec.bidirected ? 2 * forced : forced) > spec.max_edges) throw ValidationError("max_edges too small to cover every vertex");
      m = std::max(m, forced);
    }
    for (int k = 0; k < m; ++k) {
      int s = vertex(rng);
      int t = vertex(rng);
      if (k < forced) {
        if (spec.bidirected) {
          s = k + 1;
          t = std::uniform_int_distribution<int>(0, k)(rng);
        } else {
          s = k;
        }
      }
      while (t == s) t = vertex(rng);
      int idx = static_cast<int>(edges.size());
      edges.push_back({"e" + std::to_string(idx + 1), s, t});
      if (spec.bidirected) {
        edges.push_back({"e" + std::to_string(idx + 2), t, s});
        involution.emplace_back(idx, idx + 1);
      }
    }
  }
  std::vector<Matrix<GaussianRational>> mats;
  std::vector<GaussianRational> weights;
  for (const auto& e : edges) {
    auto r = static_cast<std::size_t>(ranks[static_cast<std::size_t>(e.src)]);
    auto c = static_cast<std::size_t>(ranks[static_cast<std::size_t>(e.tgt)]);
    Matrix<GaussianRational> u(r, c);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < c; ++j) u(i, j) = random_gaussian_rational(rng);
    }
    mats.push_back(std::move(u));
    weights.emplace_back(random_positive_rational(rng));
  }
  Instance<GaussianRational> inst;
  inst.quiver = Quiver(spec.p, std::move(edges), std::move(involution));
  inst.rep.ranks = std::move(ranks);
  inst.rep.matrices = std::move(mats);
  inst.weights = std::move(weights);
  return inst;
}

Matrix<ComplexFloat> haar_like_unitary(int n, std::mt19937_64& rng) {
  if (n < 1) throw ValidationError("unitary size must be at least 1");
  std::normal_distribution<double> gauss(0.0, 1.0);
  const auto N = static_cast<std::size_t>(n);
  Matrix<ComplexFloat> q(N, N);
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = 0; j < N; ++j) q(i, j) = {gauss(rng), gauss(rng)};
  }
  // Modified Gram-Schmidt on columns; r_jj is made real positive.
  for (std::size_t j = 0; j < N; ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      ComplexFloat dot{};
      for (std::size_t i = 0; i < N; ++i) dot += std::conj(q(i, k)) * q(i, j);
      for (std::size_t i = 0; i < N; ++i) q(i, j) -= dot * q(i, k);
    }
    double norm = 0;
    for (std::size_t i = 0; i < N; ++i) norm += std::norm(q(i, j));
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < N; ++i) q(i, j) /= norm;
  }
  return q;
}

double unitarity_defect(const Matrix<ComplexFloat>& u) {
  Matrix<ComplexFloat> g = u.conjugate_transpose() * u;
  double worst = 0;
  for (std::size_t i = 0; i < g.rows(); ++i) {
    for (std::size_t j = 0; j < g.cols(); ++j) {
      ComplexFloat want = i == j ? ComplexFloat{1.0, 0.0} : ComplexFloat{};
      worst = std::max(worst, std::abs(g(i, j) - want));
    }
  }
  return worst;
}

}  // namespace holodet
