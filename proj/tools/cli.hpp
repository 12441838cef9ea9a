#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace jointensor::cli {

enum ExitCode : int { ok = 0, verify_failed = 1, bad_spec = 2, guard_exceeded = 3 };

/// Runs the command line `args` (without the program name). Results go to
/// `out` unless --out names a file; error JSON goes to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace jointensor::cli
