#ifndef STYLO_CLI_H_
#define STYLO_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace stylo::cli {

enum ExitStatus : int {
  kSuccess = 0,
  kUsageError = 1,
  kDataError = 2,
  kRuntimeError = 3,
};

// Entry point for the `stylo` binary. args excludes the program name.
// Machine-readable results go to `out`, logs and diagnostics to `err`.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace stylo::cli

#endif  // STYLO_CLI_H_
