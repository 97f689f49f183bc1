#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace msgstruct::cli {

enum ExitCode : int {
    kSuccess = 0,
    kDiagnostics = 1,  // at least one Error diagnostic (or "not equivalent")
    kUsage = 2,        // bad flags, unreadable files, invalid manifest or config
};

/// Runs `msgstruct <args...>`. Artifacts go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace msgstruct::cli
