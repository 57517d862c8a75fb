#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace binar::cli {

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailed = 1,
  kUsageError = 2,
  kIoError = 3,
};

/// Runs one invocation. args excludes the program name. `in` and `out` stand
/// in for standard input/output when no --input/--output path is given.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace binar::cli
