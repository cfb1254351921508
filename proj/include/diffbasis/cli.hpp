#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace diffbasis::cli {

enum ExitCode : int { ok = 0, usage = 1, incomplete = 2, inconsistent = 3 };

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace diffbasis::cli
