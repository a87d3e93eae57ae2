#pragma once

#include <iosfwd>
#include <string>
#include <vector>

// Command-line front end.  Kept behind a function taking argv-style strings
// and explicit streams so the whole surface is testable in-process.

namespace orthocat::cli {

// Parses `args` (program name excluded) and runs the selected subcommand.
// Results are written to `out` (JSON unless an output file is requested),
// diagnostics to `err`.
//
// Exit status: 0 success; 1 a verification sweep found a violated property;
// 2 invalid arguments; 3 domain/solver errors (a JSON object with an "error"
// field naming the failure is still emitted).
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace orthocat::cli
