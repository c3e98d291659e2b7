#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hypdel::cli {

enum ExitCode { kOk = 0, kMismatch = 1, kBadInput = 2 };

/// Runs one command line (args excludes the program name). Output files go
/// to --out, or to `out` when it is absent; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hypdel::cli
