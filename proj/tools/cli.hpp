#pragma once

#include <ostream>
#include <span>
#include <string>

namespace trustq::cli {

// Exit codes of the trustq tool.
enum class ExitStatus : int {
  Success = 0,
  Invalid = 1,  // validation or domain error
  IoOrFormat = 2,
};

// Runs one command. `args` excludes the program name. Regular output goes to
// `out`; a failure writes exactly one line to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace trustq::cli
