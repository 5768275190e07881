#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tscv::cli {

/// Exit codes of the command-line tool.
enum Exit : int { ok = 0, usage = 1, input = 2, numerical = 3 };

/// Runs `tscv <args...>`. Results go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace tscv::cli
