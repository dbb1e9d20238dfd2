#pragma once

// Determinants of square arrays whose entries are formal combinations of
// words in matrix-valued letters, contracted by a central map tau. A cycle
// (i1 ... ir) of a permutation contributes tau(M_{i1 i2} ... M_{ir i1}).

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "holodet/error.hpp"
#include "holodet/linalg.hpp"
#include "holodet/permutations.hpp"
#include "holodet/stats.hpp"

namespace holodet {

using TauWord = std::vector<int>;  // letter ids; the empty word is the unit

template <class S>
struct TauTerm {
  S coefficient;
  TauWord word;
};

// A formal linear combination of words; no terms means the zero entry.
template <class S>
using TauEntry = std::vector<TauTerm<S>>;

template <class S>
using TauArray = std::vector<std::vector<TauEntry<S>>>;

// tau = matrix trace on products of the letters; products whose shapes do
// not chain to a square matrix evaluate to 0, the empty word to tau_one.
template <class S>
class TauContext {
 public:
  TauContext(std::vector<Matrix<S>> letters, S tau_one) : letters_(std::move(letters)), tau_one_(std::move(tau_one)) {}

  const S& tau_one() const { return tau_one_; }
  const std::vector<Matrix<S>>& letters() const { return letters_; }

  // Memoised by canonical rotation, which is sound because tau is central.
  S tau(const TauWord& w) const {
    if (w.empty()) return tau_one_;
    TauWord key = min_rotation(w);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    S value = evaluate(key);
    memo_.emplace(std::move(key), value);
    return value;
  }

  S evaluate(const TauWord& w) const {
    const Matrix<S>* first = &letter(w.front());
    Matrix<S> prod = *first;
    for (std::size_t i = 1; i < w.size(); ++i) {
      const Matrix<S>& next = letter(w[i]);
      if (prod.cols() != next.rows()) return ScalarTraits<S>::zero();
      prod = prod * next;
    }
    if (!prod.is_square()) return ScalarTraits<S>::zero();
    return prod.trace();
  }

 private:
  const Matrix<S>& letter(int id) const {
    if (id < 0 || static_cast<std::size_t>(id) >= letters_.size()) throw ValidationError("unknown tau letter");
    return letters_[static_cast<std::size_t>(id)];
  }

  std::vector<Matrix<S>> letters_;
  S tau_one_;
  mutable std::map<TauWord, S> memo_;
};

inline constexpr int kTauDetMaxSize = 7;

namespace detail {

// tau of a product of entries, expanded multilinearly.
template <class S>
S tau_of_cycle(const TauArray<S>& m, const std::vector<int>& cycle, const TauContext<S>& ctx) {
  S total = ScalarTraits<S>::zero();
  TauWord word;
  S coeff = ScalarTraits<S>::one();
  std::function<void(std::size_t, const S&)> expand = [&](std::size_t k, const S& c) {
    if (k == cycle.size()) {
      total = total + c * ctx.tau(word);
      return;
    }
    auto i = static_cast<std::size_t>(cycle[k]);
    auto j = static_cast<std::size_t>(cycle[(k + 1) % cycle.size()]);
    for (const auto& t : m[i][j]) {
      if (ScalarTraits<S>::is_zero(t.coefficient)) continue;
      std::size_t mark = word.size();
      word.insert(word.end(), t.word.begin(), t.word.end());
      expand(k + 1, c * t.coefficient);
      word.resize(mark);
    }
  };
  expand(0, coeff);
  return total;
}

}  // namespace detail

template <class S>
S det_tau(const TauArray<S>& m, const TauContext<S>& ctx, EvalStats* stats = nullptr) {
  const auto n = static_cast<int>(m.size());
  for (const auto& row : m) {
    if (row.size() != m.size()) throw ValidationError("tau-determinant needs a square array");
  }
  if (n > kTauDetMaxSize) {
    throw RefusalError("tau-determinant limited to size " + std::to_string(kTauDetMaxSize) + ", got " +
                       std::to_string(n));
  }
  // tau of each cycle depends only on its vertex sequence; cache by it.
  std::map<std::vector<int>, S> cycle_memo;
  S total = ScalarTraits<S>::zero();
  for_each_permutation(n, [&](const std::vector<int>& sigma, int sign) {
    bump(stats, &EvalStats::enumerated);
    S prod = ScalarTraits<S>::one();
    for (const auto& cyc : permutation_cycles(sigma)) {
      std::vector<int> ordered;
      ordered.reserve(cyc.size());
      for (int i = cyc.front(), k = 0; k < static_cast<int>(cyc.size()); ++k, i = sigma[static_cast<std::size_t>(i)]) {
        ordered.push_back(i);
      }
      auto it = cycle_memo.find(ordered);
      if (it == cycle_memo.end()) it = cycle_memo.emplace(ordered, detail::tau_of_cycle(m, ordered, ctx)).first;
      if (ScalarTraits<S>::is_zero(it->second)) {
        prod = ScalarTraits<S>::zero();
        break;
      }
      prod = prod * it->second;
    }
    if (ScalarTraits<S>::is_zero(prod)) return;
    bump(stats, &EvalStats::terms);
    total = sign > 0 ? total + prod : total - prod;
  });
  return total;
}

// The array A^box: entry (i,j) is the single letter A[bl(i) bl(j)], with
// letter id bl(i)*p + bl(j).
template <class S>
std::pair<TauArray<S>, TauContext<S>> box_array(const BlockMatrix<S>& a) {
  const int p = a.block_count();
  std::vector<Matrix<S>> letters;
  for (int u = 0; u < p; ++u) {
    for (int v = 0; v < p; ++v) letters.push_back(a.block(u, v));
  }
  const auto n = static_cast<std::size_t>(a.size());
  TauArray<S> m(n, std::vector<TauEntry<S>>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      int id = a.bl(static_cast<int>(i)) * p + a.bl(static_cast<int>(j));
      m[i][j] = {TauTerm<S>{ScalarTraits<S>::one(), {id}}};
    }
  }
  return {std::move(m), TauContext<S>(std::move(letters), ScalarTraits<S>::one())};
}

}  // namespace holodet
