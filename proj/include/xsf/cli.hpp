#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace xsf {

// Runs the command line `xsf <args...>` (args exclude the program name).
// Results go to `out` as JSON (default) or CSV, diagnostics to `err`.
// Returns 0 on success, 2 on parameter/domain/usage errors and 1 on
// numerical or verification failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace xsf
