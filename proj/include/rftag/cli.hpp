#ifndef RFTAG_CLI_HPP
#define RFTAG_CLI_HPP

#include <string>
#include <vector>

namespace rftag {

// exit codes: 0 success/accepted, 1 negative decision/rejected,
// 2 usage or input error, 3 budget or state-cap exceeded
struct CommandResult {
  int exit_code = 0;
  std::string report;
};

CommandResult run_command(const std::vector<std::string>& args);

}  // namespace rftag

#endif
