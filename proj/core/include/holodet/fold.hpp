#pragma once

// Sums over multiset streams, optionally split across threads by the first
// chosen candidate. Each part is summed sequentially and the parts are added
// in index order, so the result does not depend on scheduling.

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

#include "holodet/ring.hpp"
#include "holodet/stats.hpp"
#include "holodet/walks.hpp"

namespace holodet {

struct FoldOptions {
  bool parallel = false;
  unsigned threads = 0;  // 0: hardware concurrency
};

// `term(c, acc)` adds the contribution of multiset c to acc and returns
// true if it was nonzero.
template <class S, class Term>
S fold_multisets(const MultisetEnumerator& en, const FoldOptions& opts, Term&& term, EvalStats* stats) {
  const int parts = static_cast<int>(en.item_count()) + 1;
  auto run_part = [&](int first, S& acc, std::uint64_t& visited, std::uint64_t& nonzero) {
    en.for_each_with_first(first, [&](const CycleMultiset& c) {
      ++visited;
      if (term(c, acc)) ++nonzero;
    });
  };
  if (!opts.parallel || parts <= 1) {
    S acc = ScalarTraits<S>::zero();
    std::uint64_t visited = 0;
    std::uint64_t nonzero = 0;
    for (int first = -1; first < parts - 1; ++first) run_part(first, acc, visited, nonzero);
    bump(stats, &EvalStats::enumerated, visited);
    bump(stats, &EvalStats::terms, nonzero);
    return acc;
  }
  std::vector<S> partial(static_cast<std::size_t>(parts), ScalarTraits<S>::zero());
  std::vector<std::uint64_t> visited(static_cast<std::size_t>(parts), 0);
  std::vector<std::uint64_t> nonzero(static_cast<std::size_t>(parts), 0);
  std::atomic<int> next{0};
  unsigned nthreads = opts.threads != 0 ? opts.threads : std::max(1U, std::thread::hardware_concurrency());
  nthreads = std::min<unsigned>(nthreads, static_cast<unsigned>(parts));
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  for (unsigned t = 0; t < nthreads; ++t) {
    pool.emplace_back([&] {
      for (int k = next++; k < parts; k = next++) {
        auto i = static_cast<std::size_t>(k);
        try {
          run_part(k - 1, partial[i], visited[i], nonzero[i]);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  S acc = ScalarTraits<S>::zero();
  for (std::size_t i = 0; i < partial.size(); ++i) {
    acc = acc + partial[i];
    bump(stats, &EvalStats::enumerated, visited[i]);
    bump(stats, &EvalStats::terms, nonzero[i]);
  }
  return acc;
}

}  // namespace holodet
