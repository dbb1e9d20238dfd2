#include "holodet/vectorfields.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace holodet {

double vector_fields_term_estimate(const Quiver& q, const std::vector<int>& ranks, VectorFieldVariant variant) {
  double est = 1.0;
  int n = 0;
  for (std::size_t a = 0; a < ranks.size(); ++a) {
    est *= std::pow(static_cast<double>(q.out_edges(static_cast<int>(a)).size()), ranks[a]);
    n += ranks[a];
  }
  est *= std::tgamma(n + 1.0);
  if (variant == VectorFieldVariant::Beta) {
    for (int na : ranks) est *= std::tgamma(na + 1.0);
  }
  return est;
}

void check_vector_fields_budget(const Quiver& q, const std::vector<int>& ranks, VectorFieldVariant variant,
                                const VectorFieldOptions& opts) {
  double est = vector_fields_term_estimate(q, ranks, variant);
  if (est > opts.budget) {
    std::ostringstream msg;
    msg << "vector-field expansion needs about " << est << " terms, budget is " << opts.budget;
    throw RefusalError(msg.str());
  }
}

void for_each_stack(const Quiver& q, const std::vector<int>& block_of,
                    const std::function<void(const std::vector<int>&)>& visit) {
  const std::size_t n = block_of.size();
  std::vector<int> xi(n, -1);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      visit(xi);
      return;
    }
    for (int e : q.out_edges(block_of[i])) {
      xi[i] = e;
      rec(i + 1);
    }
  };
  rec(0);
}

void for_each_well_chained(const Quiver& q, const std::vector<int>& block_of, const std::vector<int>& xi,
                           const std::function<void(const std::vector<int>&)>& visit) {
  const std::size_t n = block_of.size();
  std::vector<int> sigma(n, -1);
  std::vector<char> used(n, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      visit(sigma);
      return;
    }
    int target_block = q.tgt(xi[i]);
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j]) continue;
      if (j != i && block_of[j] != target_block) continue;
      used[j] = 1;
      sigma[i] = static_cast<int>(j);
      rec(i + 1);
      used[j] = 0;
    }
  };
  rec(0);
}

void for_each_sigma_prime(const Quiver& q, const std::vector<int>& block_of, const std::vector<int>& xi,
                          const std::function<void(const std::vector<int>&)>& visit) {
  const std::size_t n = block_of.size();
  std::vector<int> sigma(n, -1);
  std::vector<char> used(n, 0);
  auto admissible = [&]() {
    for (const auto& cyc : permutation_cycles(sigma)) {
      bool stationary = true;
      bool cinematic = true;
      for (int i : cyc) {
        auto ui = static_cast<std::size_t>(i);
        int next_block = block_of[static_cast<std::size_t>(sigma[ui])];
        stationary = stationary && next_block == block_of[ui];
        cinematic = cinematic && next_block != block_of[ui] && q.tgt(xi[ui]) == next_block;
      }
      if (!stationary && !cinematic) return false;
    }
    return true;
  };
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      if (admissible()) visit(sigma);
      return;
    }
    int target_block = q.tgt(xi[i]);
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j]) continue;
      if (block_of[j] != block_of[i] && block_of[j] != target_block) continue;
      used[j] = 1;
      sigma[i] = static_cast<int>(j);
      rec(i + 1);
      used[j] = 0;
    }
  };
  rec(0);
}

std::vector<int> induced_block_permutation(const std::vector<int>& block_of, const std::vector<int>& sigma) {
  const std::size_t n = sigma.size();
  std::vector<int> out(n);
  std::iota(out.begin(), out.end(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (sigma[i] == static_cast<int>(i)) continue;
    int j = sigma[i];
    while (block_of[static_cast<std::size_t>(j)] != block_of[i]) j = sigma[static_cast<std::size_t>(j)];
    out[i] = j;
  }
  return out;
}

bool dominates(const std::vector<int>& beta, const std::vector<int>& sigma, const std::vector<int>& p_sigma) {
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (sigma[i] != static_cast<int>(i) && beta[i] != p_sigma[i]) return false;
  }
  return true;
}

std::vector<std::vector<int>> block_permutations(const std::vector<int>& ranks) {
  std::vector<std::vector<int>> out{{}};
  int offset = 0;
  for (int na : ranks) {
    std::vector<int> local(static_cast<std::size_t>(na));
    std::iota(local.begin(), local.end(), offset);
    std::vector<std::vector<int>> next;
    for (const auto& prefix : out) {
      auto perm = local;
      do {
        auto joined = prefix;
        joined.insert(joined.end(), perm.begin(), perm.end());
        next.push_back(std::move(joined));
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
    out = std::move(next);
    offset += na;
  }
  return out;
}

}  // namespace holodet
