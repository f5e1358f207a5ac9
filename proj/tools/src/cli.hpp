#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lincls::cli {

enum ExitCode : int { ok = 0, usage_error = 2, data_error = 3, numeric_error = 4 };

/// Runs the command line `args` (without the program name). Reports go to
/// `out`, diagnostics and verbose traces to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lincls::cli
