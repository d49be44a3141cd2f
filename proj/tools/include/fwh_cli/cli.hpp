#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fwh/program.hpp"

namespace fwh::cli {

enum ExitCode : int { kOk = 0, kStaticError = 1, kOutOfFuel = 2, kUsage = 3 };

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

[[nodiscard]] std::string diagnostic_json(const Diagnostic& d);

}  // namespace fwh::cli
