#include "holodet/euler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace holodet {

double collatz_wielandt_bound(const std::vector<std::vector<double>>& q, int iterations) {
  const std::size_t p = q.size();
  if (p == 0) return 0.0;
  double qmax = 0.0;
  for (const auto& row : q) {
    for (double v : row) qmax = std::max(qmax, v);
  }
  if (qmax == 0.0) return 0.0;
  // A small uniform shift keeps w strictly positive on reducible matrices.
  const double eta = 1e-9 * qmax;
  std::vector<double> w(p, 1.0), next(p);
  auto ratio_bound = [&](const std::vector<double>& v) {
    double r = 0.0;
    for (std::size_t a = 0; a < p; ++a) {
      double s = 0.0;
      for (std::size_t b = 0; b < p; ++b) s += q[a][b] * v[b];
      r = std::max(r, s / v[a]);
    }
    return r;
  };
  double best = ratio_bound(w);
  for (int it = 0; it < iterations; ++it) {
    double norm = 0.0;
    for (std::size_t a = 0; a < p; ++a) {
      double s = 0.0;
      for (std::size_t b = 0; b < p; ++b) s += (q[a][b] + eta) * w[b];
      next[a] = s;
      norm = std::max(norm, s);
    }
    for (std::size_t a = 0; a < p; ++a) w[a] = next[a] / norm;
    if (it % 16 == 15) best = std::min(best, ratio_bound(w));
  }
  return std::min(best, ratio_bound(w));
}

namespace {

bool is_nonnegative_real(const ComplexFloat& x) {
  return x.real() >= 0.0 && std::abs(x.imag()) <= 1e-12 * std::max(1.0, std::abs(x.real()));
}

std::vector<char> leaky_reachability(const Quiver& q, const std::vector<double>& kappa) {
  // Backward search from vertices with kappa > 0 or no outgoing edge.
  const int p = q.vertex_count();
  std::vector<char> ok(static_cast<std::size_t>(p), 0);
  std::vector<int> stack;
  for (int a = 0; a < p; ++a) {
    if (kappa[static_cast<std::size_t>(a)] > 0.0 || q.out_edges(a).empty()) {
      ok[static_cast<std::size_t>(a)] = 1;
      stack.push_back(a);
    }
  }
  while (!stack.empty()) {
    int b = stack.back();
    stack.pop_back();
    for (int e : q.in_edges(b)) {
      auto s = static_cast<std::size_t>(q.src(e));
      if (!ok[s]) {
        ok[s] = 1;
        stack.push_back(q.src(e));
      }
    }
  }
  return ok;
}

}  // namespace

std::vector<std::string> sub_markov_violations(const TwistedLaplacian<ComplexFloat>& lap,
                                               const std::vector<double>& kappa, bool need_assumptions) {
  const Quiver& q = lap.quiver();
  std::vector<std::string> out;
  if (kappa.size() != static_cast<std::size_t>(q.vertex_count())) {
    out.push_back("kappa needs one value per vertex (" + std::to_string(q.vertex_count()) + "), got " +
                  std::to_string(kappa.size()));
    return out;
  }
  for (std::size_t a = 0; a < kappa.size(); ++a) {
    if (!(kappa[a] >= 0.0) || !std::isfinite(kappa[a])) out.push_back("kappa at vertex " + std::to_string(a + 1) + " is not a nonnegative real");
  }
  for (int e = 0; e < q.edge_count(); ++e) {
    if (!is_nonnegative_real(lap.instance.weights[static_cast<std::size_t>(e)])) {
      out.push_back("weight of edge " + q.edge(e).id + " is not a nonnegative real");
    }
  }
  if (!need_assumptions) return out;
  auto ok = leaky_reachability(q, kappa);
  for (std::size_t a = 0; a < ok.size(); ++a) {
    if (!ok[a]) out.push_back("vertex " + std::to_string(a + 1) + " reaches no vertex with kappa > 0 (reachability assumption)");
  }
  for (int e = 0; e < q.edge_count(); ++e) {
    double norm = operator_norm2(lap.instance.rep.matrices[static_cast<std::size_t>(e)]);
    if (norm > 1.0 + 1e-10) {
      std::ostringstream msg;
      msg << "||U_" << q.edge(e).id << "||_2 = " << norm << " exceeds 1 (norm assumption)";
      out.push_back(msg.str());
    }
  }
  return out;
}

EulerTruncatedResult det_euler_truncated(const TwistedLaplacian<ComplexFloat>& lap, const std::vector<double>& kappa,
                                         const EulerTruncatedOptions& opts, EvalStats* stats) {
  const Quiver& q = lap.quiver();
  const auto& n = lap.ranks();
  const auto fin = prime_finiteness(q);
  auto violations = sub_markov_violations(lap, kappa, !fin.finite);
  if (!violations.empty()) {
    std::string msg = "sub-Markov preconditions fail:";
    for (const auto& v : violations) msg += " " + v + ";";
    msg.pop_back();
    throw RefusalError(msg);
  }
  EulerTruncatedResult out;
  const std::size_t p = n.size();
  std::vector<double> denom(p);
  int total_rank = 0;
  for (std::size_t a = 0; a < p; ++a) {
    denom[a] = lap.z[a].real() + kappa[a];
    total_rank += n[a];
  }
  ComplexFloat value = 1.0;
  for (std::size_t a = 0; a < p; ++a) value *= std::pow(ComplexFloat(denom[a]), n[a]);
  if (value == 0.0) {
    // A vertex with z + kappa = 0 has an identically zero block row.
    out.value = 0.0;
    out.exact_product = true;
    out.reached_tol = true;
    return out;
  }
  std::vector<double> pe(static_cast<std::size_t>(q.edge_count()));
  for (int e = 0; e < q.edge_count(); ++e) {
    pe[static_cast<std::size_t>(e)] = lap.instance.weights[static_cast<std::size_t>(e)].real() / denom[static_cast<std::size_t>(q.src(e))];
  }
  auto factor = [&](const GCycle& c) {
    double pc = 1.0;
    for (int e : c.edges()) pc *= pe[static_cast<std::size_t>(e)];
    Matrix<ComplexFloat> hol = holonomy(lap.instance.rep, c);
    Matrix<ComplexFloat> f = Matrix<ComplexFloat>::identity(hol.rows()) - hol.scaled(ComplexFloat(pc));
    bump(stats, &EvalStats::terms);
    return det_oracle(f);
  };
  const double eps = std::numeric_limits<double>::epsilon();
  if (fin.finite) {
    for (const GCycle& c : fin.cycles) {
      value *= factor(c);
      ++out.factors;
      out.max_len = std::max(out.max_len, static_cast<int>(c.length()));
    }
    out.value = value;
    out.exact_product = true;
    out.reached_tol = true;
    out.rounding_bound = 64.0 * eps * std::abs(value) * static_cast<double>(out.factors + static_cast<std::uint64_t>(total_rank));
    out.certified_error_bound = out.rounding_bound;
    return out;
  }
  std::vector<std::vector<double>> qm(p, std::vector<double>(p, 0.0));
  for (int e = 0; e < q.edge_count(); ++e) {
    qm[static_cast<std::size_t>(q.src(e))][static_cast<std::size_t>(q.tgt(e))] += pe[static_cast<std::size_t>(e)];
  }
  const double rho = collatz_wielandt_bound(qm);
  out.rho = rho;
  if (rho >= 1.0) {
    std::ostringstream msg;
    msg << "spectral radius bound " << rho << " >= 1: the reachability and norm assumptions do not give convergence";
    throw RefusalError(msg.str());
  }
  for (int len = 2; len <= opts.max_len; ++len) {
    auto primes = prime_cycles_of_length(q, len);
    bump(stats, &EvalStats::enumerated, primes.size());
    if (out.factors + primes.size() > opts.max_primes) {
      throw RefusalError("truncated Euler product needs more than " + std::to_string(opts.max_primes) +
                         " prime cycles before reaching the tolerance (length " + std::to_string(len) + ")");
    }
    for (const GCycle& c : primes) value *= factor(c);
    out.factors += primes.size();
    out.max_len = len;
    double tail = total_rank * std::pow(rho, len + 1) / ((len + 1) * (1.0 - rho));
    out.tail_log_bound = tail;
    out.truncation_bound = std::abs(value) * std::expm1(tail);
    out.rounding_bound = 64.0 * eps * std::abs(value) * static_cast<double>(out.factors + static_cast<std::uint64_t>(total_rank));
    out.certified_error_bound = out.truncation_bound + out.rounding_bound;
    if (out.truncation_bound < opts.tol) {
      out.reached_tol = true;
      break;
    }
  }
  out.value = value;
  return out;
}

UnitaryComparisonReport unitary_comparison_check(const Instance<ComplexFloat>& base, int N,
                                                 const std::vector<double>& t_values, int trials, std::uint64_t seed,
                                                 double slack) {
  const Quiver& q = base.quiver;
  if (N < 1) throw ValidationError("N must be at least 1");
  if (!q.has_involution()) throw RefusalError("unitary comparison needs a bidirected quiver (involution table)");
  for (int e = 0; e < q.edge_count(); ++e) {
    int f = q.inverse_edge(e);
    if (f < 0) throw RefusalError("edge " + q.edge(e).id + " has no inverse edge");
    const auto& xe = base.weights[static_cast<std::size_t>(e)];
    const auto& xf = base.weights[static_cast<std::size_t>(f)];
    if (!(xe.real() > 0.0) || std::abs(xe.imag()) > 1e-12 * xe.real() || std::abs(xe - xf) > 1e-12 * std::abs(xe)) {
      throw RefusalError("weights must be positive reals with x_e = x_{e^-1} (edge " + q.edge(e).id + ")");
    }
  }
  int components = 0;
  strongly_connected_components(q, &components);
  if (components != 1) throw RefusalError("unitary comparison needs a connected graph");
  for (double t : t_values) {
    if (!(t >= 0.0)) throw ValidationError("t values must be nonnegative");
  }

  const int p = q.vertex_count();
  auto with_rank = [&](int r, const std::vector<Matrix<ComplexFloat>>& mats) {
    Instance<ComplexFloat> inst;
    inst.quiver = q;
    inst.rep.ranks.assign(static_cast<std::size_t>(p), r);
    inst.rep.matrices = mats;
    inst.weights = base.weights;
    return build_laplacian(inst);
  };
  auto shifted_det = [](const Matrix<ComplexFloat>& m, double t) {
    return det_oracle(m + Matrix<ComplexFloat>::identity(m.rows()).scaled(ComplexFloat(t))).real();
  };
  std::vector<Matrix<ComplexFloat>> ones(static_cast<std::size_t>(q.edge_count()), Matrix<ComplexFloat>::identity(1));
  auto lap0 = with_rank(1, ones);
  auto z = vertex_z(q, base.weights);

  UnitaryComparisonReport rep;
  rep.trials = trials;
  rep.t_values = t_values;
  rep.min_ratio = std::numeric_limits<double>::infinity();
  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < trials; ++trial) {
    std::vector<Matrix<ComplexFloat>> mats(static_cast<std::size_t>(q.edge_count()));
    for (const auto& [e, f] : q.involution()) {
      mats[static_cast<std::size_t>(e)] = haar_like_unitary(N, rng);
      mats[static_cast<std::size_t>(f)] = mats[static_cast<std::size_t>(e)].conjugate_transpose();
    }
    auto lap = with_rank(N, mats);
    for (double t : t_values) {
      double lhs = shifted_det(lap.matrix.base(), t);
      double rhs = std::pow(shifted_det(lap0.matrix.base(), t), N);
      double scale = 1.0;
      for (const auto& za : z) scale *= std::pow(za.real() + t, N);
      ++rep.checks;
      if (lhs < rhs - slack * std::max(std::abs(rhs), scale)) ++rep.failures;
      if (rhs > 1e-12 * scale) rep.min_ratio = std::min(rep.min_ratio, lhs / rhs);
    }
  }
  return rep;
}

}  // namespace holodet
