#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace ramsey::cli {

inline constexpr const char* kToolVersion = "1.0.0";

enum ExitCode : int { ok = 0, unexpected = 1, config_error = 2, numeric_error = 3, io_error = 4 };

struct CliResult {
    int exit_code = ok;
    /// out/<command>/<digest>; empty unless a command ran.
    std::filesystem::path output_dir;
};

/// Parses `args` (args[0] is the program name), runs the subcommand and writes
/// its artifacts. Human output goes to `out`, diagnostics as one JSON line to `err`.
CliResult run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ramsey::cli
