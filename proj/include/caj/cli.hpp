#ifndef CAJ_CLI_HPP
#define CAJ_CLI_HPP

#include <string>
#include <vector>

namespace caj::cli {

/// Exit codes: 0 success, 1 usage error, 2 runtime error.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

/// Run one CLI invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args);

}  // namespace caj::cli

#endif
