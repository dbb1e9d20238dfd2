#include "holodet/laplacian.hpp"

#include <cmath>
#include <random>

namespace holodet {

void validate_law(const Instance<GaussianRational>& inst, const RepresentationLaw& law) {
  const Quiver& q = inst.quiver;
  const auto& ranks = inst.rep.ranks;
  for (const auto& [e, edge_law] : law) {
    if (e < 0 || e >= q.edge_count()) throw ValidationError("distribution refers to an unknown edge");
    const std::string where = "edge " + q.edge(e).id;
    if (edge_law.outcomes.empty()) throw RefusalError("distribution for " + where + " has empty support");
    BigRational total;
    for (const auto& [prob, m] : edge_law.outcomes) {
      if (prob.sign() <= 0) throw ValidationError("distribution for " + where + " has a nonpositive probability");
      total += prob;
      auto want_r = static_cast<std::size_t>(ranks[static_cast<std::size_t>(q.src(e))]);
      auto want_c = static_cast<std::size_t>(ranks[static_cast<std::size_t>(q.tgt(e))]);
      if (m.rows() != want_r || m.cols() != want_c) {
        throw ValidationError("distribution for " + where + " has a matrix of the wrong shape");
      }
    }
    if (!(total == BigRational(1))) {
      throw ValidationError("probabilities for " + where + " sum to " + total.to_string() + ", not 1");
    }
  }
}

namespace {

struct Outcome {
  BigRational prob;
  Representation<GaussianRational> rep;
};

std::vector<Outcome> support(const Instance<GaussianRational>& inst, const RepresentationLaw& law) {
  std::vector<Outcome> out{{BigRational(1), inst.rep}};
  for (const auto& [e, edge_law] : law) {
    std::vector<Outcome> next;
    for (const auto& o : out) {
      for (const auto& [prob, m] : edge_law.outcomes) {
        Outcome extended = o;
        extended.prob *= prob;
        extended.rep.matrices[static_cast<std::size_t>(e)] = m;
        next.push_back(std::move(extended));
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace

MomentResult wilson_moment(const Instance<GaussianRational>& inst, const RepresentationLaw& law, int k) {
  if (k < 1) throw ValidationError("moment order must be at least 1");
  require_valid(inst);
  validate_law(inst, law);
  const Quiver& q = inst.quiver;
  const auto& n = inst.rep.ranks;
  auto outcomes = support(inst, law);
  MomentResult result;
  result.support_size = outcomes.size();

  for (const auto& o : outcomes) {
    Instance<GaussianRational> sample = inst;
    sample.rep = o.rep;
    GaussianRational det = det_oracle(build_laplacian(sample).matrix.base());
    result.lhs += GaussianRational(o.prob) * scalar_pow(det, static_cast<unsigned>(k));
  }

  // Candidate cycles: all cycles within the ranks with a nonzero weight
  // monomial; traces are random so they cannot be used for pruning.
  std::vector<GaussianRational> coef;
  for (auto& c : gcycles_within(q, n)) {
    GaussianRational x = edge_monomial(inst.weights, c);
    if (x.is_zero()) continue;
    coef.push_back(int_div(-x, valuation(c)));
    result.cycles.push_back(std::move(c));
  }
  std::vector<std::vector<GaussianRational>> traces(outcomes.size());
  for (std::size_t w = 0; w < outcomes.size(); ++w) {
    for (const auto& c : result.cycles) traces[w].push_back(holonomy(outcomes[w].rep, c).trace());
  }
  auto zpow = power_table(vertex_z(q, inst.weights), n);

  struct Entry {
    CycleMultiset c;
    GaussianRational weight;
    std::vector<GaussianRational> hol;  // prod Tr hol per outcome
  };
  std::vector<Entry> entries;
  GCycleMultisetStream stream(q, n, result.cycles);
  stream.for_each([&](const CycleMultiset& c) {
    GaussianRational weight(1);
    for (std::size_t b = 0; b < n.size(); ++b) weight *= zpow[b][static_cast<std::size_t>(n[b] - c.visits[b])];
    for (const auto& [i, m] : c.entries) weight *= scalar_pow(coef[static_cast<std::size_t>(i)], static_cast<unsigned>(m));
    if (weight.is_zero()) return;
    weight = int_div(weight, c.factorial());
    Entry entry{c, weight, {}};
    for (std::size_t w = 0; w < outcomes.size(); ++w) {
      GaussianRational h(1);
      for (const auto& [i, m] : c.entries) h *= scalar_pow(traces[w][static_cast<std::size_t>(i)], static_cast<unsigned>(m));
      entry.hol.push_back(std::move(h));
    }
    entries.push_back(std::move(entry));
  });

  std::vector<std::size_t> pick;
  std::function<void(int)> tuples = [&](int depth) {
    if (depth == k) {
      MomentTableRow row;
      row.weight = GaussianRational(1);
      for (auto i : pick) {
        row.weight *= entries[i].weight;
        row.tuple.push_back(entries[i].c);
      }
      for (std::size_t w = 0; w < outcomes.size(); ++w) {
        GaussianRational h(outcomes[w].prob);
        for (auto i : pick) h *= entries[i].hol[w];
        row.expectation += h;
      }
      GaussianRational contribution = row.weight * row.expectation;
      if (contribution.is_zero()) return;
      result.rhs += contribution;
      result.table.push_back(std::move(row));
      return;
    }
    for (std::size_t i = 0; i < entries.size(); ++i) {
      pick.push_back(i);
      tuples(depth + 1);
      pick.pop_back();
    }
  };
  tuples(0);
  return result;
}

namespace {

MonteCarloSide summarize(const std::vector<ComplexFloat>& xs) {
  MonteCarloSide s;
  ComplexFloat mean{};
  for (const auto& x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double var = 0;
  for (const auto& x : xs) var += std::norm(x - mean);
  if (xs.size() > 1) var /= static_cast<double>(xs.size() - 1);
  s.mean_re = mean.real();
  s.mean_im = mean.imag();
  s.stderr_abs = std::sqrt(var / static_cast<double>(xs.size()));
  return s;
}

}  // namespace

MonteCarloResult wilson_moment_monte_carlo(const Instance<ComplexFloat>& inst, int k, int samples,
                                           std::uint64_t seed) {
  if (k < 1) throw ValidationError("moment order must be at least 1");
  if (samples < 1) throw ValidationError("sample count must be at least 1");
  require_valid(inst);
  const Quiver& q = inst.quiver;
  for (int e = 0; e < q.edge_count(); ++e) {
    if (inst.rep.ranks[static_cast<std::size_t>(q.src(e))] != inst.rep.ranks[static_cast<std::size_t>(q.tgt(e))]) {
      throw RefusalError("Monte Carlo sampling needs square edge matrices (equal ranks at both ends)");
    }
  }
  std::mt19937_64 rng(seed);
  std::vector<ComplexFloat> lhs;
  std::vector<ComplexFloat> rhs;
  for (int s = 0; s < samples; ++s) {
    Instance<ComplexFloat> sample = inst;
    for (int e = 0; e < q.edge_count(); ++e) {
      sample.rep.matrices[static_cast<std::size_t>(e)] =
          haar_like_unitary(inst.rep.ranks[static_cast<std::size_t>(q.src(e))], rng);
    }
    auto lap = build_laplacian(sample);
    lhs.push_back(std::pow(det_oracle(lap.matrix.base()), k));
    rhs.push_back(std::pow(det_laplacian_cycles(lap), k));
  }
  MonteCarloResult out;
  out.lhs = summarize(lhs);
  out.rhs = summarize(rhs);
  out.samples = samples;
  return out;
}

}  // namespace holodet
