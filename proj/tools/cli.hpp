#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sgl::cli {

enum ExitCode : int {
  kOk = 0,
  kInternalError = 1,  // also used for a failed bound check
  kBadInput = 2,
  kInconclusive = 3,
};

// Runs one command line (without the program name). Results go to `out`,
// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sgl::cli
