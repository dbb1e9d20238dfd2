#pragma once

// Cyclic walks on a vertex set, cycles on a quiver, and multisets of either.
//
// Both kinds of cycle are stored in their lexicographically minimal rotation,
// so two sequences describe the same cycle iff their canonical forms are
// equal. Indices are 0-based internally; text output is 1-based.

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace holodet {

class Quiver;

using VisitVector = std::vector<int>;
using EdgeVector = std::vector<int>;

// Lexicographically minimal rotation of `seq`.
std::vector<int> min_rotation(std::span<const int> seq);

// Order of the rotation stabiliser: |seq| divided by its smallest period.
int rotation_valuation(std::span<const int> seq);

class CyclicWalk {
 public:
  CyclicWalk() = default;

  // Validates (length >= 2, successive entries distinct including the wrap
  // pair) and canonicalises. Throws ValidationError otherwise.
  static CyclicWalk from_sequence(std::vector<int> seq);

  const std::vector<int>& seq() const { return seq_; }
  std::size_t length() const { return seq_.size(); }
  VisitVector visits(int vertex_count) const;
  std::string to_string() const;  // "<<1,2,1,3>>" with 1-based vertices

  friend bool operator==(const CyclicWalk&, const CyclicWalk&) = default;
  friend auto operator<=>(const CyclicWalk& a, const CyclicWalk& b) { return a.seq_ <=> b.seq_; }

 private:
  std::vector<int> seq_;
};

// A cycle on a quiver: edge indices e_1..e_k with t(e_i) = s(e_{i+1})
// cyclically, canonical rotation by edge index.
class GCycle {
 public:
  GCycle() = default;

  static GCycle from_edges(const Quiver& q, std::vector<int> edges);

  const std::vector<int>& edges() const { return edges_; }
  std::size_t length() const { return edges_.size(); }
  // Sequence of source vertices s(e_1), ..., s(e_k).
  std::vector<int> vertex_sequence(const Quiver& q) const;
  CyclicWalk project(const Quiver& q) const;
  VisitVector visits(const Quiver& q) const;
  EdgeVector edge_counts(const Quiver& q) const;
  std::string to_string(const Quiver& q) const;  // "(e1,g1)" by edge id

  friend bool operator==(const GCycle&, const GCycle&) = default;
  friend auto operator<=>(const GCycle& a, const GCycle& b) { return a.edges_ <=> b.edges_; }

 private:
  std::vector<int> edges_;
};

int valuation(const CyclicWalk& c);
int valuation(const GCycle& c);

CyclicWalk power(const CyclicWalk& c, int m);
GCycle power(const Quiver& q, const GCycle& c, int m);

// The unique prime cycle r with c = r^valuation(c).
CyclicWalk prime_root(const CyclicWalk& c);
GCycle prime_root(const Quiver& q, const GCycle& c);

// All canonical cyclic walks on [p] with visit vector <= bound.
std::vector<CyclicWalk> cyclic_walks_within(int p, const VisitVector& bound);

// All canonical cycles of q with visit vector <= bound.
std::vector<GCycle> gcycles_within(const Quiver& q, const VisitVector& bound);

// A multiset over an indexed candidate list, with derived bookkeeping.
struct CycleMultiset {
  std::vector<std::pair<int, int>> entries;  // (candidate index, multiplicity >= 1), indices increasing
  VisitVector visits;                        // v(C), multiplicities included

  bool empty() const { return entries.empty(); }
  std::size_t cardinality() const;  // with multiplicity
  long long factorial() const;      // C! = product of multiplicity factorials
};

// Every multiset of items whose summed visit vectors stay within `bound`,
// each exactly once, the empty multiset first. Items are combined in
// nondecreasing index order, so no deduplication is needed.
class MultisetEnumerator {
 public:
  MultisetEnumerator(std::vector<VisitVector> item_visits, VisitVector bound);

  template <class Visitor>
  void for_each(Visitor&& visit) const {
    CycleMultiset current;
    current.visits.assign(bound_.size(), 0);
    visit(static_cast<const CycleMultiset&>(current));
    extend(current, 0, visit);
  }

  // Restricts enumeration to multisets whose first (smallest) item index is
  // `first`; `first == -1` selects only the empty multiset. The union over
  // first in {-1, 0, ..., n-1} is the whole stream. Used to partition work.
  template <class Visitor>
  void for_each_with_first(int first, Visitor&& visit) const {
    CycleMultiset current;
    current.visits.assign(bound_.size(), 0);
    if (first < 0) {
      visit(static_cast<const CycleMultiset&>(current));
      return;
    }
    if (!fits(current, first)) return;
    push(current, first);
    visit(static_cast<const CycleMultiset&>(current));
    extend(current, first, visit);
    pop(current, first);
  }

  std::size_t item_count() const { return items_.size(); }
  std::uint64_t count() const;

 private:
  bool fits(const CycleMultiset& c, int item) const {
    const auto& v = items_[static_cast<std::size_t>(item)];
    for (std::size_t a = 0; a < v.size(); ++a) {
      if (c.visits[a] + v[a] > bound_[a]) return false;
    }
    return true;
  }
  void push(CycleMultiset& c, int item) const {
    const auto& v = items_[static_cast<std::size_t>(item)];
    for (std::size_t a = 0; a < v.size(); ++a) c.visits[a] += v[a];
    if (!c.entries.empty() && c.entries.back().first == item) {
      ++c.entries.back().second;
    } else {
      c.entries.emplace_back(item, 1);
    }
  }
  void pop(CycleMultiset& c, int item) const {
    const auto& v = items_[static_cast<std::size_t>(item)];
    for (std::size_t a = 0; a < v.size(); ++a) c.visits[a] -= v[a];
    if (--c.entries.back().second == 0) c.entries.pop_back();
  }
  template <class Visitor>
  void extend(CycleMultiset& c, int start, Visitor& visit) const {
    for (int j = start; j < static_cast<int>(items_.size()); ++j) {
      if (!fits(c, j)) continue;
      push(c, j);
      visit(static_cast<const CycleMultiset&>(c));
      extend(c, j, visit);
      pop(c, j);
    }
  }

  std::vector<VisitVector> items_;
  VisitVector bound_;
};

// Lazily enumerated multisets of cyclic walks on [p] with v(C) <= bound.
class WalkMultisetStream {
 public:
  WalkMultisetStream(int p, VisitVector bound);
  // Uses a caller-supplied candidate subset (each canonical, within bound).
  WalkMultisetStream(int p, VisitVector bound, std::vector<CyclicWalk> candidates);

  const std::vector<CyclicWalk>& cycles() const { return cycles_; }
  const MultisetEnumerator& enumerator() const { return enumerator_; }
  template <class Visitor>
  void for_each(Visitor&& visit) const {
    enumerator_.for_each(std::forward<Visitor>(visit));
  }
  std::uint64_t count() const { return enumerator_.count(); }

 private:
  std::vector<CyclicWalk> cycles_;
  MultisetEnumerator enumerator_;
};

// Lazily enumerated multisets of cycles on q with v(C) <= bound.
class GCycleMultisetStream {
 public:
  GCycleMultisetStream(const Quiver& q, VisitVector bound);
  GCycleMultisetStream(const Quiver& q, VisitVector bound, std::vector<GCycle> candidates);

  const std::vector<GCycle>& cycles() const { return cycles_; }
  const MultisetEnumerator& enumerator() const { return enumerator_; }
  template <class Visitor>
  void for_each(Visitor&& visit) const {
    enumerator_.for_each(std::forward<Visitor>(visit));
  }
  std::uint64_t count() const { return enumerator_.count(); }

 private:
  std::vector<GCycle> cycles_;
  MultisetEnumerator enumerator_;
};

// Per-edge traversal counts e(C) of a multiset over `cycles`.
EdgeVector edge_counts(const Quiver& q, const std::vector<GCycle>& cycles, const CycleMultiset& c);

// Cycles of valuation 1 with length <= max_len, canonical, in increasing
// (length, edge sequence) order.
std::vector<GCycle> prime_cycles(const Quiver& q, int max_len);

// Prime cycles of length exactly `len`.
std::vector<GCycle> prime_cycles_of_length(const Quiver& q, int len);

// Prime cyclic walks on the complete graph on [p] with total visits <= cap.
std::vector<CyclicWalk> prime_walks_within(int p, int max_total_visits);

struct PrimeFiniteness {
  bool finite = false;
  std::vector<GCycle> cycles;  // all prime cycles when finite
};

// Finite iff every strongly connected component is a single vertex or a
// single simple directed cycle.
PrimeFiniteness prime_finiteness(const Quiver& q);

// Strongly connected components (Tarjan); component id per vertex.
std::vector<int> strongly_connected_components(const Quiver& q, int* component_count = nullptr);

}  // namespace holodet
