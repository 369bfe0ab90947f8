#include <iostream>
#include <vector>

#include "excdiv/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  excdiv::cli::CommandResult result = excdiv::cli::run(args);
  std::cout << result.out;
  std::cerr << result.err;
  return result.exit_code;
}
