#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ramsey_cli/config.hpp"
#include "ramsey_cli/report.hpp"

namespace ramsey::cli {

struct CommandOutput {
    Table table;
    /// Additional tables written next to the main one, e.g. {"curves", ...}.
    std::vector<std::pair<std::string, Table>> extra;
    json summary;
    /// One-line human summary for stdout.
    std::string message;
};

struct CommandSpec {
    /// Output directory name ("synth" for both synth kinds).
    std::string group;
    /// Subcommand name under the group; empty for top-level commands.
    std::string kind;
    std::string help;
    Schema schema;
    /// Extra validation on the resolved config, beyond types.
    std::function<void(const json&)> check;
    std::function<CommandOutput(const json&, std::size_t threads)> run;

    std::string name() const { return kind.empty() ? group : group + " " + kind; }
};

const std::vector<CommandSpec>& command_specs();

}  // namespace ramsey::cli
