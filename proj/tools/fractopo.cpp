#include <cstdio>
#include <string>
#include <vector>

#include "fractopo/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const fractopo::cli::CommandResult result = fractopo::cli::run(args);
  std::fputs(result.report.c_str(), stdout);
  if (!result.porcelain.empty()) {
    std::fputs(result.porcelain.c_str(), stdout);
  }
  return result.exit_code;
}
