#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace schunck::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kInputError = 2, kResourceCap = 3 };

/// Runs one invocation; args exclude the program name. Records go to `out`
/// unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace schunck::cli
