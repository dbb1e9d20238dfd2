#include "cli.hpp"

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "holodet/blockdet.hpp"
#include "holodet/euler.hpp"
#include "holodet/laplacian.hpp"
#include "holodet/quiver_io.hpp"
#include "holodet/vectorfields.hpp"

namespace holodet::cli {

using nlohmann::ordered_json;

namespace {

const std::vector<std::string> kDetMethods = {
    "oracle",        "perm",          "block-perm",  "trace-formal",   "block-cycles",
    "integral",      "cycles",        "vector-fields", "vector-fields-sigma-prime",
    "vector-fields-beta", "forman",   "euler-finite", "euler-truncated", "cauchy-binet"};

// Methods `compare` runs; euler-truncated targets det(diag(kappa) + Delta)
// and is left out.
const std::vector<std::string> kCompareMethods = {
    "oracle",        "perm",          "block-perm",  "trace-formal",   "block-cycles",
    "integral",      "cycles",        "vector-fields", "vector-fields-sigma-prime",
    "vector-fields-beta", "forman",   "euler-finite", "cauchy-binet"};

struct Common {
  std::string input;
  std::string mode;  // float | exact | symbolic; empty: symbolic iff the file has symbols
  std::string format = "text";
  bool no_timing = false;
  bool parallel = false;
  double budget = 0.0;  // 0: environment or default
  std::vector<double> kappa;
  double tol = 1e-9;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double resolve_budget(const Common& c) {
  if (c.budget > 0) return c.budget;
  if (const char* env = std::getenv("HOLODET_BUDGET"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0)) throw ValidationError("HOLODET_BUDGET must be a positive number");
    return v;
  }
  return VectorFieldOptions{}.budget;
}

template <class S>
struct Loaded {
  Instance<S> inst;
  IndeterminateSet symbols;
  std::string mode;
};

std::string resolve_mode(const Common& c, const InstanceDocument& doc) {
  std::string mode = c.mode.empty() ? (doc.has_symbols() ? "symbolic" : "exact") : c.mode;
  if (mode != "float" && mode != "exact" && mode != "symbolic") throw UsageError("unknown mode '" + mode + "'");
  return mode;
}

// Calls f(Loaded<S>&) for the scalar type selected by the mode.
template <class F>
auto with_mode(const Common& c, F&& f) {
  InstanceDocument doc = read_instance_file(c.input);
  std::string mode = resolve_mode(c, doc);
  if (mode == "float") {
    Loaded<ComplexFloat> l{to_float(doc.exact()), doc.symbols, mode};
    return f(l);
  }
  if (mode == "exact") {
    Loaded<GaussianRational> l{doc.exact(), doc.symbols, mode};
    return f(l);
  }
  Loaded<MultiPoly> l{doc.instance, doc.symbols, mode};
  for (int e = 0; e < l.inst.quiver.edge_count(); ++e) {
    auto& w = l.inst.weights[static_cast<std::size_t>(e)];
    if (w.is_constant()) w = MultiPoly::variable(l.symbols.add("x" + l.inst.quiver.edge(e).id));
  }
  return f(l);
}

template <class S>
ordered_json value_json(const S& v, const IndeterminateSet& symbols) {
  if constexpr (std::is_same_v<S, ComplexFloat>) {
    (void)symbols;
    return ordered_json{{"re", v.real()}, {"im", v.imag()}};
  } else if constexpr (std::is_same_v<S, MultiPoly>) {
    return to_string(v, &symbols);
  } else {
    (void)symbols;
    return ScalarTraits<S>::to_string(v);
  }
}

template <class S>
struct Evaluation {
  S value;
  EvalStats stats;
  double ms = 0.0;
  ordered_json extra = ordered_json::object();
};

template <class S>
Evaluation<S> evaluate(const std::string& method, const TwistedLaplacian<S>& lap, const Common& c,
                       const std::string& mode) {
  Evaluation<S> ev;
  EvalStats* st = &ev.stats;
  FoldOptions fold;
  fold.parallel = c.parallel && mode != "float";
  VectorFieldOptions vf;
  vf.budget = resolve_budget(c);
  auto start = std::chrono::steady_clock::now();
  const auto& base = lap.matrix.base();
  if (method == "oracle") {
    ev.value = det_oracle(base);
  } else if (method == "perm") {
    ev.value = det_perm_traces(base, st);
  } else if (method == "block-perm") {
    ev.value = det_block_perm(lap.matrix, st);
  } else if (method == "trace-formal") {
    ev.value = det_trace_formal(lap.matrix, st);
  } else if (method == "block-cycles") {
    ev.value = det_scalar_diag(lap.matrix, fold, st);
  } else if (method == "integral") {
    if (mode == "float") throw RefusalError("the integer-coefficient form needs exact or symbolic mode");
    ev.value = det_scalar_diag_integral(lap.matrix, fold, st);
  } else if (method == "cycles") {
    ev.value = det_laplacian_cycles(lap, fold, st);
  } else if (method == "vector-fields") {
    ev.value = det_vector_fields(lap, vf, st);
  } else if (method == "vector-fields-sigma-prime") {
    ev.value = det_vector_fields_variant(lap, VectorFieldVariant::SigmaPrime, vf, st);
  } else if (method == "vector-fields-beta") {
    ev.value = det_vector_fields_variant(lap, VectorFieldVariant::Beta, vf, st);
  } else if (method == "forman") {
    ev.value = det_forman_classic(lap, st);
  } else if (method == "euler-finite") {
    ev.value = det_euler_finite(lap, st);
  } else if (method == "cauchy-binet") {
    auto terms = cauchy_binet_decompose(lap);
    ev.value = ScalarTraits<S>::zero();
    for (const auto& t : terms) ev.value = ev.value + t.value;
    ev.stats.terms = terms.size();
  } else if (method == "euler-truncated") {
    if constexpr (std::is_same_v<S, ComplexFloat>) {
      std::vector<double> kappa = c.kappa;
      const auto p = static_cast<std::size_t>(lap.quiver().vertex_count());
      if (kappa.empty()) kappa.assign(p, 0.0);
      if (kappa.size() == 1 && p > 1) kappa.assign(p, kappa.front());
      EulerTruncatedOptions eo;
      eo.tol = c.tol;
      auto r = det_euler_truncated(lap, kappa, eo, st);
      ev.value = r.value;
      ev.extra["target"] = "det(diag(kappa) + Delta)";
      ev.extra["kappa"] = kappa;
      ev.extra["certified_error_bound"] = r.certified_error_bound;
      ev.extra["truncation_bound"] = r.truncation_bound;
      ev.extra["rho_bound"] = r.rho;
      ev.extra["max_prime_length"] = r.max_len;
      ev.extra["factors"] = r.factors;
      ev.extra["exact_product"] = r.exact_product;
      ev.extra["reached_tol"] = r.reached_tol;
    } else {
      throw RefusalError("euler-truncated needs --mode float");
    }
  } else {
    throw UsageError("unknown method '" + method + "'");
  }
  ev.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return ev;
}

void put_stats(ordered_json& j, const EvalStats& s) {
  j["terms"] = s.terms;
  j["candidates"] = s.candidates;
  j["enumerated"] = s.enumerated;
}

void emit(std::ostream& out, const Common& c, const ordered_json& report) {
  if (c.format == "json") {
    out << report.dump(2) << "\n";
    return;
  }
  std::function<void(const std::string&, const ordered_json&)> line = [&](const std::string& prefix,
                                                                         const ordered_json& v) {
    if (v.is_object()) {
      if (v.contains("re") && v.contains("im") && v.size() == 2) {
        out << prefix << ": " << std::setprecision(17) << v["re"].get<double>() << " "
            << (v["im"].get<double>() < 0 ? "-" : "+") << " " << std::abs(v["im"].get<double>()) << "i\n";
        return;
      }
      for (const auto& [k, x] : v.items()) line(prefix.empty() ? k : prefix + "." + k, x);
    } else if (v.is_array() && !v.empty() && (v.front().is_object() || v.front().is_array())) {
      for (std::size_t i = 0; i < v.size(); ++i) line(prefix + "[" + std::to_string(i) + "]", v[i]);
    } else if (v.is_string()) {
      out << prefix << ": " << v.get<std::string>() << "\n";
    } else {
      out << prefix << ": " << v.dump() << "\n";
    }
  };
  line("", report);
}

struct Runner {
  std::ostream& out;
  Common c;

  int det(const std::string& method) {
    return with_mode(c, [&](auto& l) {
      auto lap = build_laplacian(l.inst);
      auto ev = evaluate(method, lap, c, l.mode);
      ordered_json r;
      r["command"] = "det";
      r["method"] = method;
      r["mode"] = l.mode;
      r["value"] = value_json(ev.value, l.symbols);
      put_stats(r, ev.stats);
      for (const auto& [k, v] : ev.extra.items()) r[k] = v;
      if (!c.no_timing) r["timing_ms"] = ev.ms;
      emit(out, c, r);
      return kOk;
    });
  }

  int compare() {
    return with_mode(c, [&](auto& l) {
      using S = typename std::decay_t<decltype(l.inst.weights)>::value_type;
      auto lap = build_laplacian(l.inst);
      ordered_json r;
      r["command"] = "compare";
      r["mode"] = l.mode;
      ordered_json methods = ordered_json::array();
      std::vector<std::pair<std::string, S>> values;
      for (const auto& m : kCompareMethods) {
        ordered_json jm;
        jm["method"] = m;
        try {
          auto ev = evaluate(m, lap, c, l.mode);
          jm["value"] = value_json(ev.value, l.symbols);
          put_stats(jm, ev.stats);
          if (!c.no_timing) jm["timing_ms"] = ev.ms;
          values.emplace_back(m, ev.value);
        } catch (const RefusalError& e) {
          jm["skipped"] = e.what();
        }
        methods.push_back(std::move(jm));
      }
      double max_disc = 0.0;
      bool agree = true;
      ordered_json mismatches = ordered_json::array();
      for (std::size_t i = 0; i < values.size(); ++i) {
        for (std::size_t j = i + 1; j < values.size(); ++j) {
          max_disc = std::max(max_disc, ScalarTraits<S>::magnitude(values[i].second - values[j].second));
          if (!ScalarTraits<S>::equal(values[i].second, values[j].second)) {
            agree = false;
            mismatches.push_back(ordered_json::array({values[i].first, values[j].first}));
          }
        }
      }
      r["methods"] = std::move(methods);
      r["evaluated"] = values.size();
      r["max_discrepancy"] = max_disc;
      r["agree"] = agree;
      if (!agree) r["mismatches"] = std::move(mismatches);
      emit(out, c, r);
      return agree ? kOk : kInvariant;
    });
  }

  int charpoly(const std::string& method) {
    return with_mode(c, [&](auto& l) {
      using S = typename std::decay_t<decltype(l.inst.weights)>::value_type;
      auto lap = build_laplacian(l.inst);
      ordered_json r;
      r["command"] = "charpoly";
      r["method"] = method;
      r["mode"] = l.mode;
      EvalStats st;
      FoldOptions fold;
      fold.parallel = c.parallel && l.mode != "float";
      auto start = std::chrono::steady_clock::now();
      ordered_json coeffs = ordered_json::array();
      if (method == "oracle") {
        for (const auto& v : charpoly_oracle(lap.matrix.base())) coeffs.push_back(value_json(v, l.symbols));
      } else if (method == "block" || method == "laplacian") {
        if constexpr (std::is_same_v<S, ComplexFloat>) {
          throw RefusalError("the cycle-expansion characteristic polynomial needs exact or symbolic mode");
        } else {
          IndeterminateSet symbols = l.symbols;
          std::vector<std::size_t> t_idx;
          for (int a = 0; a < lap.quiver().vertex_count(); ++a) {
            std::string name = "t" + std::to_string(a + 1);
            while (symbols.contains(name)) name = "_" + name;
            t_idx.push_back(symbols.add(name));
          }
          MultiPoly poly = method == "block" ? charpoly_block(lap.matrix, t_idx, fold, &st)
                                             : charpoly_laplacian(lap, t_idx, fold, &st);
          for (const auto& k : collapse_by_degree(poly, t_idx)) {
            if constexpr (std::is_same_v<S, MultiPoly>) {
              coeffs.push_back(to_string(k, &symbols));
            } else {
              if (!k.is_constant()) throw InvariantError("charpoly coefficient is not a constant");
              coeffs.push_back(ScalarTraits<GaussianRational>::to_string(k.constant_term()));
            }
          }
        }
      } else {
        throw UsageError("unknown charpoly method '" + method + "'");
      }
      r["coefficients"] = std::move(coeffs);
      r["convention"] = "ascending coefficients of det(t I + Delta)";
      put_stats(r, st);
      if (!c.no_timing) {
        r["timing_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      }
      emit(out, c, r);
      return kOk;
    });
  }

  int primes(int max_len) {
    InstanceDocument doc = read_instance_file(c.input);
    const Quiver& q = doc.instance.quiver;
    auto fin = prime_finiteness(q);
    auto cycles = fin.finite ? fin.cycles : prime_cycles(q, max_len);
    ordered_json r;
    r["command"] = "primes";
    r["finite"] = fin.finite;
    if (!fin.finite) r["max_len"] = max_len;
    ordered_json list = ordered_json::array();
    for (const auto& cyc : cycles) {
      list.push_back(ordered_json{{"edges", cyc.to_string(q)},
                                  {"walk", cyc.project(q).to_string()},
                                  {"length", cyc.length()}});
    }
    r["count"] = cycles.size();
    r["cycles"] = std::move(list);
    emit(out, c, r);
    return kOk;
  }

  int moments(int k, int mc_samples, std::uint64_t seed) {
    InstanceDocument doc = read_instance_file(c.input);
    ordered_json r;
    r["command"] = "moments";
    r["k"] = k;
    if (k < 1) throw ValidationError("k must be at least 1");
    auto start = std::chrono::steady_clock::now();
    if (mc_samples > 0) {
      auto res = wilson_moment_monte_carlo(to_float(doc.exact()), k, mc_samples, seed);
      auto side = [](const MonteCarloSide& s) {
        return ordered_json{{"mean", {{"re", s.mean_re}, {"im", s.mean_im}}}, {"stderr", s.stderr_abs}};
      };
      r["estimator"] = "monte-carlo";
      r["samples"] = res.samples;
      r["seed"] = seed;
      r["lhs"] = side(res.lhs);
      r["rhs"] = side(res.rhs);
    } else {
      RepresentationLaw law = doc.distribution.value_or(RepresentationLaw{});
      auto res = wilson_moment(doc.exact(), law, k);
      r["estimator"] = "exact";
      r["lhs"] = ScalarTraits<GaussianRational>::to_string(res.lhs);
      r["rhs"] = ScalarTraits<GaussianRational>::to_string(res.rhs);
      r["equal"] = res.lhs == res.rhs;
      r["support_size"] = res.support_size;
      r["table_rows"] = res.table.size();
      if (!(res.lhs == res.rhs)) {
        emit(out, c, r);
        return kInvariant;
      }
    }
    if (!c.no_timing) {
      r["timing_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    emit(out, c, r);
    return kOk;
  }
};

void print_error(std::ostream& err, const std::string& kind, const std::string& message) {
  ordered_json j;
  j["error"] = {{"kind", kind}, {"message", message}};
  err << j.dump() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Determinants of twisted quiver Laplacians by cycle and vector-field expansions", "holodet"};
  app.require_subcommand(1);
  Common c;
  std::string method = "oracle";
  std::string charpoly_method = "laplacian";
  int max_len = 8;
  int k = 1;
  int mc_samples = 0;
  std::uint64_t seed = 1;
  RandomSpec spec;
  bool symbolic_out = false;
  std::string example_name;

  auto add_common = [&](CLI::App* sub, bool with_mode) {
    sub->add_option("input", c.input, "instance JSON file")->required();
    sub->add_option("--format", c.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    sub->add_flag("--no-timing", c.no_timing, "omit timings (byte-stable output)");
    if (with_mode) {
      sub->add_option("--mode", c.mode, "float, exact or symbolic")->check(CLI::IsMember({"float", "exact", "symbolic"}));
      sub->add_flag("--parallel", c.parallel, "parallel multiset folds (exact and symbolic modes)");
      sub->add_option("--budget", c.budget, "term budget for vector-field expansions (overrides HOLODET_BUDGET)");
    }
  };

  auto* det = app.add_subcommand("det", "determinant of the twisted Laplacian by one method");
  add_common(det, true);
  det->add_option("--method", method, "method")->check(CLI::IsMember(kDetMethods));
  det->add_option("--kappa", c.kappa, "per-vertex kappa for euler-truncated (one value broadcasts)")->delimiter(',');
  det->add_option("--tol", c.tol, "target certified error for euler-truncated");

  auto* cmp = app.add_subcommand("compare", "run every applicable method and report the largest discrepancy");
  add_common(cmp, true);

  auto* cp = app.add_subcommand("charpoly", "characteristic polynomial det(tI + Delta)");
  add_common(cp, true);
  cp->add_option("--method", charpoly_method, "oracle, block or laplacian")
      ->check(CLI::IsMember({"oracle", "block", "laplacian"}));

  auto* pr = app.add_subcommand("primes", "prime cycles of the quiver");
  add_common(pr, false);
  pr->add_option("--max-len", max_len, "length cap when the prime set is infinite")->check(CLI::Range(2, 64));

  auto* mo = app.add_subcommand("moments", "Wilson-loop moment identity E[(det Delta)^k]");
  add_common(mo, false);
  mo->add_option("--k", k, "moment order")->check(CLI::Range(1, 8));
  mo->add_option("--mc-samples", mc_samples, "Monte Carlo estimate with Haar-like unitaries instead");
  mo->add_option("--seed", seed, "Monte Carlo seed");

  auto* rnd = app.add_subcommand("random", "emit a random instance as JSON");
  rnd->add_option("--seed", spec.seed, "seed");
  rnd->add_option("--p", spec.p, "vertex count")->check(CLI::Range(1, 32));
  rnd->add_option("--max-edges", spec.max_edges, "edge cap");
  rnd->add_option("--max-rank", spec.max_rank, "rank cap")->check(CLI::Range(1, 8));
  rnd->add_option("--max-total-rank", spec.max_total_rank, "total rank cap (0: none)");
  rnd->add_flag("--bidirected", spec.bidirected, "add e^-1 for every edge");
  rnd->add_flag("--cover", spec.cover, "outgoing edge at every vertex (spanning tree if bidirected)");
  rnd->add_flag("--symbolic", symbolic_out, "weights as symbols x<id>");

  auto* exm = app.add_subcommand("example", "emit a named example instance as JSON");
  exm->add_option("name", example_name, "acyclic, unicyclic, figure5 or two_cycle")
      ->required()
      ->check(CLI::IsMember(example_names()));
  exm->add_flag("--symbolic", symbolic_out, "weights as symbols x<id>");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    print_error(err, "usage", e.what());
    return kValidation;
  }

  Runner runner{out, c};
  try {
    if (*det) return runner.det(method);
    if (*cmp) return runner.compare();
    if (*cp) return runner.charpoly(charpoly_method);
    if (*pr) return runner.primes(max_len);
    if (*mo) return runner.moments(k, mc_samples, seed);
    if (*rnd || *exm) {
      Instance<GaussianRational> inst = *rnd ? gen_random(spec) : gen_example(example_name);
      if (symbolic_out) {
        IndeterminateSet symbols;
        out << instance_to_json(with_symbolic_weights(inst, symbols), symbols) << "\n";
      } else {
        out << instance_to_json(inst) << "\n";
      }
      return kOk;
    }
  } catch (const UsageError& e) {
    print_error(err, "usage", e.what());
    return kValidation;
  } catch (const ValidationError& e) {
    print_error(err, "validation", e.what());
    return kValidation;
  } catch (const RefusalError& e) {
    print_error(err, "refusal", e.what());
    return kRefusal;
  } catch (const InvariantError& e) {
    print_error(err, "invariant", e.what());
    return kInvariant;
  } catch (const std::exception& e) {
    print_error(err, "internal", e.what());
    return kInvariant;
  }
  return kOk;
}

}  // namespace holodet::cli
