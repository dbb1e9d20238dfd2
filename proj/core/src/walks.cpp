#include "holodet/walks.hpp"

#include <algorithm>
#include <functional>

#include "holodet/error.hpp"
#include "holodet/quiver.hpp"

namespace holodet {

std::vector<int> min_rotation(std::span<const int> seq) {
  const std::size_t k = seq.size();
  std::size_t best = 0;
  for (std::size_t r = 1; r < k; ++r) {
    for (std::size_t i = 0; i < k; ++i) {
      int a = seq[(r + i) % k];
      int b = seq[(best + i) % k];
      if (a != b) {
        if (a < b) best = r;
        break;
      }
    }
  }
  std::vector<int> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.push_back(seq[(best + i) % k]);
  return out;
}

int rotation_valuation(std::span<const int> seq) {
  const std::size_t k = seq.size();
  if (k == 0) return 1;
  for (std::size_t d = 1; d <= k; ++d) {
    if (k % d != 0) continue;
    bool periodic = true;
    for (std::size_t i = 0; i + d < k && periodic; ++i) periodic = seq[i] == seq[i + d];
    if (periodic) return static_cast<int>(k / d);
  }
  return 1;
}

namespace {

bool is_canonical(std::span<const int> seq) {
  auto rot = min_rotation(seq);
  return std::equal(rot.begin(), rot.end(), seq.begin());
}

std::string join_one_based(const std::vector<int>& seq) {
  std::string out;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(seq[i] + 1);
  }
  return out;
}

}  // namespace

CyclicWalk CyclicWalk::from_sequence(std::vector<int> seq) {
  if (seq.size() < 2) throw ValidationError("a cyclic walk needs at least two entries");
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (seq[i] < 0) throw ValidationError("negative vertex in cyclic walk");
    if (seq[i] == seq[(i + 1) % seq.size()]) {
      throw ValidationError("successive entries of a cyclic walk must differ: <<" + join_one_based(seq) + ">>");
    }
  }
  CyclicWalk w;
  w.seq_ = min_rotation(seq);
  return w;
}

VisitVector CyclicWalk::visits(int vertex_count) const {
  VisitVector v(static_cast<std::size_t>(vertex_count), 0);
  for (int a : seq_) ++v.at(static_cast<std::size_t>(a));
  return v;
}

std::string CyclicWalk::to_string() const { return "<<" + join_one_based(seq_) + ">>"; }

GCycle GCycle::from_edges(const Quiver& q, std::vector<int> edges) {
  if (edges.empty()) throw ValidationError("a cycle needs at least one edge");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    int e = edges[i];
    int f = edges[(i + 1) % edges.size()];
    if (e < 0 || e >= q.edge_count() || f < 0 || f >= q.edge_count()) {
      throw ValidationError("cycle refers to an unknown edge");
    }
    if (q.tgt(e) != q.src(f)) {
      throw ValidationError("edges " + q.edge(e).id + " and " + q.edge(f).id + " are not chained");
    }
  }
  GCycle c;
  c.edges_ = min_rotation(edges);
  return c;
}

std::vector<int> GCycle::vertex_sequence(const Quiver& q) const {
  std::vector<int> out;
  out.reserve(edges_.size());
  for (int e : edges_) out.push_back(q.src(e));
  return out;
}

CyclicWalk GCycle::project(const Quiver& q) const { return CyclicWalk::from_sequence(vertex_sequence(q)); }

VisitVector GCycle::visits(const Quiver& q) const {
  VisitVector v(static_cast<std::size_t>(q.vertex_count()), 0);
  for (int e : edges_) ++v[static_cast<std::size_t>(q.src(e))];
  return v;
}

EdgeVector GCycle::edge_counts(const Quiver& q) const {
  EdgeVector c(static_cast<std::size_t>(q.edge_count()), 0);
  for (int e : edges_) ++c[static_cast<std::size_t>(e)];
  return c;
}

std::string GCycle::to_string(const Quiver& q) const {
  std::string out = "(";
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (i > 0) out += ",";
    out += q.edge(edges_[i]).id;
  }
  return out + ")";
}

int valuation(const CyclicWalk& c) { return rotation_valuation(c.seq()); }
int valuation(const GCycle& c) { return rotation_valuation(c.edges()); }

namespace {

std::vector<int> repeat(const std::vector<int>& seq, int m) {
  if (m < 1) throw ValidationError("power exponent must be at least 1");
  std::vector<int> out;
  out.reserve(seq.size() * static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) out.insert(out.end(), seq.begin(), seq.end());
  return out;
}

}  // namespace

CyclicWalk power(const CyclicWalk& c, int m) { return CyclicWalk::from_sequence(repeat(c.seq(), m)); }
GCycle power(const Quiver& q, const GCycle& c, int m) { return GCycle::from_edges(q, repeat(c.edges(), m)); }

CyclicWalk prime_root(const CyclicWalk& c) {
  auto len = c.length() / static_cast<std::size_t>(valuation(c));
  return CyclicWalk::from_sequence(std::vector<int>(c.seq().begin(), c.seq().begin() + static_cast<long>(len)));
}

GCycle prime_root(const Quiver& q, const GCycle& c) {
  auto len = c.length() / static_cast<std::size_t>(valuation(c));
  return GCycle::from_edges(q, std::vector<int>(c.edges().begin(), c.edges().begin() + static_cast<long>(len)));
}

namespace {

// Canonical cyclic walks on [p] with per-vertex visits <= bound and total
// length <= cap. Canonical sequences start at their minimum, so every
// entry is >= the first one.
std::vector<CyclicWalk> walks_dfs(int p, const VisitVector& bound, int cap, bool primes_only) {
  std::vector<CyclicWalk> out;
  std::vector<int> seq;
  VisitVector used(static_cast<std::size_t>(p), 0);
  std::function<void()> extend = [&]() {
    const int first = seq.front();
    if (seq.size() >= 2 && seq.back() != first && is_canonical(seq) &&
        (!primes_only || rotation_valuation(seq) == 1)) {
      CyclicWalk w = CyclicWalk::from_sequence(seq);
      out.push_back(std::move(w));
    }
    if (static_cast<int>(seq.size()) >= cap) return;
    for (int a = first; a < p; ++a) {
      if (a == seq.back() || used[static_cast<std::size_t>(a)] >= bound[static_cast<std::size_t>(a)]) continue;
      seq.push_back(a);
      ++used[static_cast<std::size_t>(a)];
      extend();
      --used[static_cast<std::size_t>(a)];
      seq.pop_back();
    }
  };
  for (int s = 0; s < p; ++s) {
    if (bound[static_cast<std::size_t>(s)] < 1) continue;
    seq = {s};
    used[static_cast<std::size_t>(s)] = 1;
    extend();
    used[static_cast<std::size_t>(s)] = 0;
  }
  std::sort(out.begin(), out.end(), [](const CyclicWalk& a, const CyclicWalk& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    return a.seq() < b.seq();
  });
  return out;
}

// Canonical cycles on q. Edges after the first have larger index than the
// first (canonical rotations start at their smallest edge). If `scc` is
// given, edges stay inside the component of the first edge's source.
std::vector<GCycle> cycles_dfs(const Quiver& q, const VisitVector* bound, int min_len, int max_len,
                               bool primes_only, const std::vector<int>* scc) {
  std::vector<GCycle> out;
  std::vector<int> seq;
  VisitVector used(static_cast<std::size_t>(q.vertex_count()), 0);
  auto allowed_vertex = [&](int v) {
    return bound == nullptr || used[static_cast<std::size_t>(v)] < (*bound)[static_cast<std::size_t>(v)];
  };
  std::function<void()> extend = [&]() {
    const int e0 = seq.front();
    const int head = q.tgt(seq.back());
    const int len = static_cast<int>(seq.size());
    if (head == q.src(e0) && len >= min_len && is_canonical(seq) && (!primes_only || rotation_valuation(seq) == 1)) {
      out.push_back(GCycle::from_edges(q, seq));
    }
    if (len >= max_len || !allowed_vertex(head)) return;
    for (int f : q.out_edges(head)) {
      if (f < e0) continue;
      if (scc != nullptr && (*scc)[static_cast<std::size_t>(q.tgt(f))] != (*scc)[static_cast<std::size_t>(q.src(e0))]) {
        continue;
      }
      seq.push_back(f);
      ++used[static_cast<std::size_t>(head)];
      extend();
      --used[static_cast<std::size_t>(head)];
      seq.pop_back();
    }
  };
  for (int e0 = 0; e0 < q.edge_count(); ++e0) {
    int s = q.src(e0);
    if (s == q.tgt(e0) || !allowed_vertex(s)) continue;
    if (scc != nullptr && (*scc)[static_cast<std::size_t>(s)] != (*scc)[static_cast<std::size_t>(q.tgt(e0))]) continue;
    seq = {e0};
    ++used[static_cast<std::size_t>(s)];
    extend();
    --used[static_cast<std::size_t>(s)];
  }
  std::sort(out.begin(), out.end(), [](const GCycle& a, const GCycle& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    return a.edges() < b.edges();
  });
  return out;
}

int total(const VisitVector& v) {
  int t = 0;
  for (int x : v) t += x;
  return t;
}

}  // namespace

std::vector<CyclicWalk> cyclic_walks_within(int p, const VisitVector& bound) {
  if (bound.size() != static_cast<std::size_t>(p)) throw ValidationError("bound length differs from vertex count");
  return walks_dfs(p, bound, total(bound), false);
}

std::vector<GCycle> gcycles_within(const Quiver& q, const VisitVector& bound) {
  if (bound.size() != static_cast<std::size_t>(q.vertex_count())) {
    throw ValidationError("bound length differs from vertex count");
  }
  return cycles_dfs(q, &bound, 1, total(bound), false, nullptr);
}

std::size_t CycleMultiset::cardinality() const {
  std::size_t n = 0;
  for (const auto& [i, m] : entries) n += static_cast<std::size_t>(m);
  return n;
}

long long CycleMultiset::factorial() const {
  long long f = 1;
  for (const auto& [i, m] : entries) {
    for (int k = 2; k <= m; ++k) f *= k;
  }
  return f;
}

MultisetEnumerator::MultisetEnumerator(std::vector<VisitVector> item_visits, VisitVector bound)
    : items_(std::move(item_visits)), bound_(std::move(bound)) {
  for (const auto& v : items_) {
    if (v.size() != bound_.size()) throw ValidationError("visit vector length differs from bound");
  }
}

std::uint64_t MultisetEnumerator::count() const {
  std::uint64_t n = 0;
  for_each([&](const CycleMultiset&) { ++n; });
  return n;
}

namespace {

std::vector<VisitVector> walk_visits(int p, const std::vector<CyclicWalk>& walks) {
  std::vector<VisitVector> out;
  out.reserve(walks.size());
  for (const auto& w : walks) out.push_back(w.visits(p));
  return out;
}

std::vector<VisitVector> cycle_visits(const Quiver& q, const std::vector<GCycle>& cycles) {
  std::vector<VisitVector> out;
  out.reserve(cycles.size());
  for (const auto& c : cycles) out.push_back(c.visits(q));
  return out;
}

}  // namespace

WalkMultisetStream::WalkMultisetStream(int p, VisitVector bound)
    : WalkMultisetStream(p, bound, cyclic_walks_within(p, bound)) {}

WalkMultisetStream::WalkMultisetStream(int p, VisitVector bound, std::vector<CyclicWalk> candidates)
    : cycles_(std::move(candidates)), enumerator_(walk_visits(p, cycles_), std::move(bound)) {}

GCycleMultisetStream::GCycleMultisetStream(const Quiver& q, VisitVector bound)
    : GCycleMultisetStream(q, bound, gcycles_within(q, bound)) {}

GCycleMultisetStream::GCycleMultisetStream(const Quiver& q, VisitVector bound, std::vector<GCycle> candidates)
    : cycles_(std::move(candidates)), enumerator_(cycle_visits(q, cycles_), std::move(bound)) {}

EdgeVector edge_counts(const Quiver& q, const std::vector<GCycle>& cycles, const CycleMultiset& c) {
  EdgeVector out(static_cast<std::size_t>(q.edge_count()), 0);
  for (const auto& [i, m] : c.entries) {
    for (int e : cycles[static_cast<std::size_t>(i)].edges()) out[static_cast<std::size_t>(e)] += m;
  }
  return out;
}

std::vector<GCycle> prime_cycles(const Quiver& q, int max_len) {
  auto scc = strongly_connected_components(q);
  return cycles_dfs(q, nullptr, 1, max_len, true, &scc);
}

std::vector<GCycle> prime_cycles_of_length(const Quiver& q, int len) {
  auto scc = strongly_connected_components(q);
  return cycles_dfs(q, nullptr, len, len, true, &scc);
}

std::vector<CyclicWalk> prime_walks_within(int p, int max_total_visits) {
  return walks_dfs(p, VisitVector(static_cast<std::size_t>(p), max_total_visits), max_total_visits, true);
}

std::vector<int> strongly_connected_components(const Quiver& q, int* component_count) {
  const int p = q.vertex_count();
  std::vector<int> index(static_cast<std::size_t>(p), -1);
  std::vector<int> low(static_cast<std::size_t>(p), 0);
  std::vector<int> comp(static_cast<std::size_t>(p), -1);
  std::vector<bool> on_stack(static_cast<std::size_t>(p), false);
  std::vector<int> stack;
  int counter = 0;
  int ncomp = 0;
  std::function<void(int)> connect = [&](int v) {
    auto vi = static_cast<std::size_t>(v);
    index[vi] = low[vi] = counter++;
    stack.push_back(v);
    on_stack[vi] = true;
    for (int e : q.out_edges(v)) {
      int w = q.tgt(e);
      auto wi = static_cast<std::size_t>(w);
      if (index[wi] < 0) {
        connect(w);
        low[vi] = std::min(low[vi], low[wi]);
      } else if (on_stack[wi]) {
        low[vi] = std::min(low[vi], index[wi]);
      }
    }
    if (low[vi] == index[vi]) {
      int w = -1;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[static_cast<std::size_t>(w)] = false;
        comp[static_cast<std::size_t>(w)] = ncomp;
      } while (w != v);
      ++ncomp;
    }
  };
  for (int v = 0; v < p; ++v) {
    if (index[static_cast<std::size_t>(v)] < 0) connect(v);
  }
  if (component_count != nullptr) *component_count = ncomp;
  return comp;
}

PrimeFiniteness prime_finiteness(const Quiver& q) {
  int ncomp = 0;
  auto comp = strongly_connected_components(q, &ncomp);
  PrimeFiniteness result;
  result.finite = true;
  std::vector<std::vector<int>> members(static_cast<std::size_t>(ncomp));
  for (int v = 0; v < q.vertex_count(); ++v) members[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])].push_back(v);
  for (const auto& vs : members) {
    if (vs.size() < 2) continue;
    // Strongly connected and every vertex has exactly one out-edge inside
    // the component: the component is one simple cycle.
    std::vector<int> next_edge;
    for (int v : vs) {
      int inside = 0;
      int chosen = -1;
      for (int e : q.out_edges(v)) {
        if (comp[static_cast<std::size_t>(q.tgt(e))] == comp[static_cast<std::size_t>(v)]) {
          ++inside;
          chosen = e;
        }
      }
      if (inside != 1) {
        result.finite = false;
        result.cycles.clear();
        return result;
      }
      next_edge.push_back(chosen);
    }
    std::vector<int> edges;
    int v = vs.front();
    do {
      auto pos = static_cast<std::size_t>(std::find(vs.begin(), vs.end(), v) - vs.begin());
      edges.push_back(next_edge[pos]);
      v = q.tgt(next_edge[pos]);
    } while (v != vs.front());
    result.cycles.push_back(GCycle::from_edges(q, edges));
  }
  std::sort(result.cycles.begin(), result.cycles.end());
  return result;
}

}  // namespace holodet
