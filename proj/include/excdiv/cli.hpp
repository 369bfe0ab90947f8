#pragma once

#include <string>
#include <vector>

namespace excdiv::cli {

// Exit codes: 0 success, 1 negative verdict (inequality violated or a
// proposition violation found), 2 usage or parse error.
struct CommandResult {
  int exit_code = 0;
  std::string out;
  std::string err;
};

CommandResult run(const std::vector<std::string>& args);

}  // namespace excdiv::cli
