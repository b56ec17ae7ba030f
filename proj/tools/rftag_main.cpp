#include <iostream>
#include <string>
#include <vector>

#include "rftag/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  rftag::CommandResult result = rftag::run_command(args);
  std::cout << result.report;
  return result.exit_code;
}
