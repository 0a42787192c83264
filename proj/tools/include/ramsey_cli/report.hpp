#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ramsey_cli/config.hpp"

namespace ramsey::cli {

using Cell = std::variant<double, long long, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

/// 17 significant digits; infinities as "inf" / "-inf".
std::string format_number(double v);

std::string to_csv(const Table& table);
/// {"columns": [...], "rows": [[...]]}; non-finite numbers become strings.
json to_json(const Table& table);

/// Writes via a temporary file in the same directory and renames it into place.
void write_atomic(const std::filesystem::path& path, const std::string& contents);

std::string sha256_hex(const std::string& data);

/// Stable digest of a canonical config: SHA-256 of its sorted-key JSON dump.
std::string config_digest(const json& canonical);

std::string utc_timestamp();

struct RunManifest {
    std::string tool_version;
    std::string command;
    std::string config_digest;
    std::optional<std::uint64_t> seed;
    std::string started_at;
    std::string finished_at;
    std::vector<std::string> outputs;
    json config;
    json summary;

    json to_json() const;
};

}  // namespace ramsey::cli
