#pragma once

// Command implementations behind the valmono executable.

#include <iosfwd>
#include <string>

#include "valmono/trace.hpp"

namespace valmono {

/// Runs a problem or an array of problems; batch items go to `jobs` workers
/// and keep their input order.
Json run_batch(const Json& input, const RunOptions& opts, unsigned jobs);

/// Exit code of a trace or an array of traces (the largest one).
int batch_exit_code(const Json& traces);

/// `valmono run`: reads `path`, writes the trace(s) to `out_path` (stdout
/// when empty).
int cmd_run(const std::string& path, const std::string& out_path, const RunOptions& opts,
            unsigned jobs, std::ostream& out, std::ostream& err);

/// `valmono verify`: exit 0 iff every trace in the file re-verifies.
int cmd_verify(const std::string& path, unsigned jobs, std::ostream& out, std::ostream& err);

/// Full command line, as called from main.
int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace valmono
