#pragma once

// Replayable run traces: one JSON document per problem holding the input,
// the framed sequence, the per-step game records, the verdict and the
// witnesses needed to re-check the result offline.

#include <cstdint>
#include <string>
#include <vector>

#include "valmono/json_io.hpp"

namespace valmono {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int { kExitOk = 0, kExitSchema = 2, kExitAlgorithm = 3, kExitMismatch = 4 };

struct RunOptions {
  std::int64_t budget = 100000;
  bool auto_independence = true;
};

const std::vector<std::string>& algorithm_selectors();

/// "fnv1a64:<hex>" of the compact dump of `input`.
std::string input_digest(const Json& input);

/// Runs one problem. Never throws: schema and algorithm failures are
/// recorded in the verdict.
Json run_problem(const Json& problem, const RunOptions& opts);

/// Exit code recorded in a trace's verdict.
int trace_exit_code(const Json& trace);

struct VerifyReport {
  int exit_code = kExitOk;
  std::string message;
};

/// Replays and re-checks a trace; exit 4 with "trace mismatch at step k" on
/// the first disagreement.
VerifyReport verify_trace(const Json& trace);

}  // namespace valmono
