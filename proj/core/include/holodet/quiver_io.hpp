#pragma once

// JSON instance files.
//
//   {"p": 2, "ranks": [1, 1],
//    "edges": [{"id": "1", "src": 1, "tgt": 2, "weight": 2, "matrix": [[[0.5, 0]]]},
//              {"id": "2", "src": 2, "tgt": 1, "weight": {"sym": "x2"}, "matrix": [[{"sym": "v"}]]}],
//    "involution": [["1", "2"]],
//    "distribution": {"1": [{"prob": "1/2", "matrix": [[1]]}, {"prob": "1/2", "matrix": [[-1]]}]}}
//
// Vertices are 1-based. A scalar is a JSON number, a string ("3/4", "0.1"),
// a pair [re, im] of those, or {"sym": name}. Numbers are read exactly
// through their shortest round-trip decimal text.

#include <optional>
#include <string>

#include "holodet/laplacian.hpp"
#include "holodet/multipoly.hpp"
#include "holodet/quiver.hpp"

namespace holodet {

struct InstanceDocument {
  Instance<MultiPoly> instance;  // symbols become indeterminates
  IndeterminateSet symbols;      // weight symbols first, then matrix symbols, in file order
  std::optional<RepresentationLaw> distribution;

  bool has_symbols() const { return symbols.size() > 0; }
  // Throws ValidationError naming a symbol if any is present.
  Instance<GaussianRational> exact() const { return to_exact(instance, symbols); }
};

// Parse errors and structural violations raise ValidationError.
InstanceDocument parse_instance(const std::string& text);
InstanceDocument read_instance_file(const std::string& path);

// Serialises exactly: integers as JSON numbers, other rationals as "num/den"
// strings, complex entries as [re, im].
std::string instance_to_json(const Instance<GaussianRational>& inst, int indent = 2);

// Single-symbol weights and entries are written as {"sym": name}; other
// non-constant polynomials are rejected.
std::string instance_to_json(const Instance<MultiPoly>& inst, const IndeterminateSet& symbols, int indent = 2);

}  // namespace holodet
