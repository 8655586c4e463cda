#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cesdp::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kValidation = 2,
  kIo = 3,
  kInternal = 4,
};

/// Environment variable consulted when --parallelism is absent.
inline constexpr const char* kParallelismEnv = "CESDP_PARALLELISM";

/// Entry point shared by the executable and the tests. args excludes the
/// program name: {"run", "--n", "100", ...}.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cesdp::cli
