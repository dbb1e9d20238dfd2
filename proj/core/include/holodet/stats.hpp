#pragma once

#include <cstdint>

namespace holodet {

// Work counters filled in by the expansion methods when requested.
struct EvalStats {
  std::uint64_t terms = 0;       // nonzero terms folded into the result
  std::uint64_t candidates = 0;  // cycles or walks considered
  std::uint64_t enumerated = 0;  // raw index objects visited (permutations, stacks, multisets)
};

inline void bump(EvalStats* s, std::uint64_t EvalStats::*field, std::uint64_t by = 1) {
  if (s != nullptr) s->*field += by;
}

}  // namespace holodet
