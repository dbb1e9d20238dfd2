#pragma once

#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "holodet/blockdet.hpp"
#include "holodet/error.hpp"
#include "holodet/euler.hpp"
#include "holodet/laplacian.hpp"
#include "holodet/linalg.hpp"
#include "holodet/multipoly.hpp"
#include "holodet/quiver.hpp"
#include "holodet/vectorfields.hpp"

namespace testing_support {

using namespace holodet;

template <class S>
bool same(const S& a, const S& b) {
  return ScalarTraits<S>::equal(a, b);
}

template <class S>
std::string str(const S& a) {
  return ScalarTraits<S>::to_string(a);
}

// Every expansion of det Delta that applies to the instance, by name.
// Refusals are dropped; `skipped` collects their names.
template <class S>
std::vector<std::pair<std::string, S>> all_methods(const Instance<S>& inst, std::vector<std::string>* skipped = nullptr) {
  auto lap = build_laplacian(inst);
  std::vector<std::pair<std::string, std::function<S()>>> methods = {
      {"perm-traces", [&] { return det_perm_traces(lap.matrix.base()); }},
      {"block-perm", [&] { return det_block_perm(lap.matrix); }},
      {"trace-formal", [&] { return det_trace_formal(lap.matrix); }},
      {"block-cycles", [&] { return det_scalar_diag(lap.matrix); }},
      {"integral", [&] { return det_scalar_diag_integral(lap.matrix); }},
      {"cycles", [&] { return det_laplacian_cycles(lap); }},
      {"vector-fields", [&] { return det_vector_fields(lap); }},
      {"sigma-prime", [&] { return det_vector_fields_variant(lap, VectorFieldVariant::SigmaPrime); }},
      {"beta", [&] { return det_vector_fields_variant(lap, VectorFieldVariant::Beta); }},
      {"forman", [&] { return det_forman_classic(lap); }},
      {"euler-finite", [&] { return det_euler_finite(lap); }},
  };
  std::vector<std::pair<std::string, S>> out;
  for (auto& [name, fn] : methods) {
    try {
      out.emplace_back(name, fn());
    } catch (const RefusalError&) {
      if (skipped != nullptr) skipped->push_back(name);
    }
  }
  return out;
}

inline RandomSpec cover_spec(std::uint64_t seed, int p = 4, int max_edges = 6, int max_rank = 3, int max_total = 7) {
  RandomSpec spec;
  spec.seed = seed;
  spec.p = p;
  spec.max_edges = max_edges;
  spec.max_rank = max_rank;
  spec.max_total_rank = max_total;
  spec.cover = true;
  return spec;
}

// Sub-Markov chain for the truncated Euler product: weights rescaled so
// that z_a + kappa_a = 1 with kappa_a = c / (1 + c), hence every row of P
// sums to 1 / (1 + c). Square edge matrices are unitary, rectangular ones
// have norm just below 1. Seeds whose quiver has finitely many prime
// cycles are skipped, so the product is always truncated.
inline Instance<ComplexFloat> sub_markov_instance(std::uint64_t seed, double c, std::vector<double>& kappa) {
  auto exact = gen_random(cover_spec(seed, 4, 7, 2, 0));
  while (prime_finiteness(exact.quiver).finite) exact = gen_random(cover_spec(seed += 1000003, 4, 7, 2, 0));
  auto inst = to_float(exact);
  std::mt19937_64 rng(seed * 7919 + 1);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int e = 0; e < inst.quiver.edge_count(); ++e) {
    auto& u = inst.rep.matrices[static_cast<std::size_t>(e)];
    if (u.is_square()) {
      u = haar_like_unitary(static_cast<int>(u.rows()), rng);
      continue;
    }
    for (std::size_t i = 0; i < u.rows(); ++i) {
      for (std::size_t j = 0; j < u.cols(); ++j) u(i, j) = {gauss(rng), gauss(rng)};
    }
    u = u.scaled(ComplexFloat((1.0 - 1e-6) / operator_norm2(u)));
  }
  auto z = vertex_z(inst.quiver, inst.weights);
  for (int e = 0; e < inst.quiver.edge_count(); ++e) {
    auto& x = inst.weights[static_cast<std::size_t>(e)];
    x = x / ((1.0 + c) * z[static_cast<std::size_t>(inst.quiver.src(e))].real());
  }
  kappa.assign(z.size(), c / (1.0 + c));
  return inst;
}

inline Matrix<ComplexFloat> shifted(const TwistedLaplacian<ComplexFloat>& lap, const std::vector<double>& kappa) {
  Matrix<ComplexFloat> m = lap.matrix.base();
  for (int i = 0; i < lap.size(); ++i) {
    auto ii = static_cast<std::size_t>(i);
    m(ii, ii) += kappa[static_cast<std::size_t>(lap.matrix.bl(i))];
  }
  return m;
}

// Bidirected, connected, x_e = x_{e^-1}, rank one placeholders.
inline Instance<ComplexFloat> symmetric_bidirected(std::uint64_t seed, int p, int max_edges) {
  RandomSpec spec;
  spec.seed = seed;
  spec.p = p;
  spec.max_edges = max_edges;
  spec.max_rank = 1;
  spec.bidirected = true;
  spec.cover = true;
  auto inst = to_float(gen_random(spec));
  for (const auto& [e, f] : inst.quiver.involution()) inst.weights[static_cast<std::size_t>(f)] = inst.weights[static_cast<std::size_t>(e)];
  return inst;
}

}  // namespace testing_support
