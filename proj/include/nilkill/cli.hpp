#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "nilkill/io.hpp"

namespace nilkill {

// Stable process exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitParse = 2,
  kExitValidation = 3,
  kExitNumerical = 4,
  kExitMismatch = 5,
};

// Runs one command; `args` excludes the program name. Reports go to `out`,
// diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Plain-text rendering of a report; numbers are printed exactly as in the JSON form.
void render_text(const Json& report, std::ostream& out);

}  // namespace nilkill
