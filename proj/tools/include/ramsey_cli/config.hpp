#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ramsey/synthesis.hpp"

namespace ramsey::cli {

using json = nlohmann::json;

/// Bad or missing configuration. `field` and `where` ("config.yaml:3" or
/// "--sigma") are empty when unknown.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string message, std::string field = {}, std::string where = {});

    const std::string& field() const noexcept { return field_; }
    const std::string& where() const noexcept { return where_; }

private:
    std::string field_;
    std::string where_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Unparsed value with its origin. Lists come from YAML sequences.
struct RawValue {
    std::string text;
    std::vector<RawValue> items;
    bool is_list = false;
    std::string where;
};

/// Dotted key -> raw value. Later sources override earlier ones.
using RawConfig = std::map<std::string, RawValue>;

/// Reads a YAML mapping, flattening nested mappings into dotted keys.
/// Duplicate keys and non-mapping documents raise ConfigError.
RawConfig load_yaml(const std::string& path);
RawConfig load_yaml_text(const std::string& text, const std::string& origin);

enum class ValueType {
    integer,        // signed 64-bit
    unsigned_int,   // unsigned 64-bit
    real,
    angle,          // radians, "0.3pi" and "pi/4" accepted
    angle_list,     // YAML list or comma-separated
    half_integer,
    half_int_list,  // "1..5", "1/2,3/2", YAML list
    int_list,       // "1..10", "1,2,5", YAML list
    real_list,
    grid,           // "start:stop:count"
    boolean,
    choice,
    matrix,         // YAML list of lists or "a,b;c,d"
    text,
};

struct KeySpec {
    std::string key;
    ValueType type;
    std::optional<json> fallback;  // canonical default; nullopt = no default
    std::vector<std::string> choices;
    std::string help;
};

using Schema = std::vector<KeySpec>;

/// Validates `raw` against `schema` and returns the fully-defaulted canonical
/// config. Keys without a default and not given are omitted. Unknown keys raise
/// ConfigError pointing at their origin.
json resolve(const Schema& schema, const RawConfig& raw);

// Scalar parsers, exposed for tests. They throw std::invalid_argument.
double parse_real(const std::string& text);
double parse_angle(const std::string& text);
std::vector<long long> parse_int_list(const std::string& text);
std::vector<HalfInteger> parse_half_int_list(const std::string& text);
bool parse_bool(const std::string& text);
/// "start:stop:count" as {start, stop, count}.
json parse_grid(const std::string& text);

/// Reads a key from a resolved config; throws ConfigError if absent.
const json& require(const json& cfg, const std::string& key);
HalfInteger half_integer(const json& value);

}  // namespace ramsey::cli
