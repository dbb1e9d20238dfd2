#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace holodet::cli {

// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kInvariant = 1;  // also: `compare` found a disagreement
inline constexpr int kValidation = 2;
inline constexpr int kRefusal = 3;

// Runs one command line (args excludes the program name). Reports go to
// `out`, error JSON to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace holodet::cli
