#include "ramsey_cli/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace ramsey::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) {
        parts.push_back(trim(cur));
    }
    if (!s.empty() && s.back() == sep) {
        parts.emplace_back();
    }
    return parts;
}

std::string location(const std::string& origin, const YAML::Mark& mark) {
    if (mark.is_null()) {
        return origin;
    }
    return origin + ":" + std::to_string(mark.line + 1);
}

RawValue to_raw(const YAML::Node& node, const std::string& origin, const std::string& key) {
    RawValue v;
    v.where = location(origin, node.Mark());
    if (node.IsSequence()) {
        v.is_list = true;
        for (const auto& item : node) {
            v.items.push_back(to_raw(item, origin, key));
        }
    } else if (node.IsScalar()) {
        v.text = node.Scalar();
    } else if (node.IsNull()) {
        throw ConfigError("missing value", key, v.where);
    } else {
        throw ConfigError("expected a scalar or a list", key, v.where);
    }
    return v;
}

void flatten(const YAML::Node& map, const std::string& prefix, const std::string& origin,
             RawConfig& out) {
    std::set<std::string> seen;
    for (auto it = map.begin(); it != map.end(); ++it) {
        const std::string where = location(origin, it->first.Mark());
        if (!it->first.IsScalar()) {
            throw ConfigError("keys must be scalars", prefix, where);
        }
        const std::string name = it->first.Scalar();
        const std::string key = prefix.empty() ? name : prefix + "." + name;
        if (!seen.insert(name).second) {
            throw ConfigError("duplicate key", key, where);
        }
        if (it->second.IsMap()) {
            flatten(it->second, key, origin, out);
        } else {
            out[key] = to_raw(it->second, origin, key);
        }
    }
}

long long parse_integer(const std::string& text) {
    std::size_t used = 0;
    const long long v = std::stoll(text, &used);
    if (used != text.size()) {
        throw std::invalid_argument("not an integer");
    }
    return v;
}

std::vector<std::string> list_items(const RawValue& raw) {
    std::vector<std::string> items;
    if (raw.is_list) {
        for (const auto& item : raw.items) {
            if (item.is_list) {
                throw std::invalid_argument("nested lists are not allowed here");
            }
            items.push_back(trim(item.text));
        }
    } else {
        items = split(raw.text, ',');
    }
    return items;
}

json parse_typed(const KeySpec& spec, const RawValue& raw) {
    const std::string text = trim(raw.text);
    const bool list_ok = spec.type == ValueType::angle_list || spec.type == ValueType::real_list ||
                         spec.type == ValueType::int_list || spec.type == ValueType::half_int_list ||
                         spec.type == ValueType::matrix;
    if (raw.is_list && !list_ok) {
        throw std::invalid_argument("a list is not allowed here");
    }
    switch (spec.type) {
        case ValueType::integer:
            return parse_integer(text);
        case ValueType::unsigned_int: {
            if (!text.empty() && text.front() == '-') {
                throw std::invalid_argument("must be non-negative");
            }
            std::size_t used = 0;
            const unsigned long long v = std::stoull(text, &used);
            if (used != text.size()) {
                throw std::invalid_argument("not an unsigned integer");
            }
            return v;
        }
        case ValueType::real:
            return parse_real(text);
        case ValueType::angle:
            return parse_angle(text);
        case ValueType::angle_list: {
            json out = json::array();
            for (const auto& item : list_items(raw)) {
                out.push_back(parse_angle(item));
            }
            return out;
        }
        case ValueType::real_list: {
            json out = json::array();
            for (const auto& item : list_items(raw)) {
                out.push_back(parse_real(item));
            }
            return out;
        }
        case ValueType::half_integer:
            return HalfInteger::parse(text).value();
        case ValueType::half_int_list: {
            json out = json::array();
            for (const auto& item : list_items(raw)) {
                for (const auto& h : parse_half_int_list(item)) {
                    out.push_back(h.value());
                }
            }
            return out;
        }
        case ValueType::int_list: {
            json out = json::array();
            for (const auto& item : list_items(raw)) {
                for (long long v : parse_int_list(item)) {
                    out.push_back(v);
                }
            }
            return out;
        }
        case ValueType::grid:
            return parse_grid(text);
        case ValueType::boolean:
            return parse_bool(text);
        case ValueType::choice: {
            if (std::find(spec.choices.begin(), spec.choices.end(), text) == spec.choices.end()) {
                std::string all;
                for (const auto& c : spec.choices) {
                    all += (all.empty() ? "" : ", ") + c;
                }
                throw std::invalid_argument("expected one of: " + all);
            }
            return text;
        }
        case ValueType::matrix: {
            json out = json::array();
            std::vector<RawValue> rows;
            if (raw.is_list) {
                rows = raw.items;
            } else {
                for (const auto& r : split(text, ';')) {
                    rows.push_back(RawValue{r, {}, false, raw.where});
                }
            }
            for (const auto& row : rows) {
                json r = json::array();
                for (const auto& item : list_items(row)) {
                    r.push_back(parse_real(item));
                }
                if (!out.empty() && r.size() != out.front().size()) {
                    throw std::invalid_argument("matrix rows differ in length");
                }
                out.push_back(std::move(r));
            }
            return out;
        }
        case ValueType::text:
            return text;
    }
    throw std::invalid_argument("unsupported value type");
}

}  // namespace

ConfigError::ConfigError(std::string message, std::string field, std::string where)
    : std::runtime_error(where.empty()   ? (field.empty() ? message : field + ": " + message)
                         : field.empty() ? where + ": " + message
                                         : where + ": " + field + ": " + message),
      field_(std::move(field)),
      where_(std::move(where)) {}

RawConfig load_yaml_text(const std::string& text, const std::string& origin) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::Exception& e) {
        throw ConfigError(e.msg, {}, location(origin, e.mark));
    }
    RawConfig out;
    if (root.IsNull()) {
        return out;
    }
    if (!root.IsMap()) {
        throw ConfigError("config must be a mapping of keys to values", {}, origin);
    }
    flatten(root, "", origin, out);
    return out;
}

RawConfig load_yaml(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file", {}, path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return load_yaml_text(buf.str(), path);
}

json resolve(const Schema& schema, const RawConfig& raw) {
    json out = json::object();
    for (const auto& [key, value] : raw) {
        const auto spec = std::find_if(schema.begin(), schema.end(),
                                       [&](const KeySpec& s) { return s.key == key; });
        if (spec == schema.end()) {
            throw ConfigError("unknown key", key, value.where);
        }
        try {
            out[key] = parse_typed(*spec, value);
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            const std::string shown = value.is_list ? "[list]" : "'" + value.text + "'";
            throw ConfigError("invalid value " + shown + ": " + e.what(), key, value.where);
        }
    }
    for (const auto& spec : schema) {
        if (!out.contains(spec.key) && spec.fallback) {
            out[spec.key] = *spec.fallback;
        }
    }
    return out;
}

double parse_real(const std::string& raw) {
    const std::string text = trim(raw);
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size() || !std::isfinite(v)) {
        throw std::invalid_argument("not a finite number");
    }
    return v;
}

double parse_angle(const std::string& raw) {
    std::string text = trim(raw);
    const auto pos = text.find("pi");
    if (pos == std::string::npos) {
        return parse_real(text);
    }
    std::string coeff = trim(text.substr(0, pos));
    std::string rest = trim(text.substr(pos + 2));
    if (!coeff.empty() && coeff.back() == '*') {
        coeff = trim(coeff.substr(0, coeff.size() - 1));
    }
    double factor = 1.0;
    if (coeff == "-") {
        factor = -1.0;
    } else if (coeff == "+" || coeff.empty()) {
        factor = 1.0;
    } else {
        factor = parse_real(coeff);
    }
    double value = factor * std::numbers::pi;
    if (!rest.empty()) {
        if (rest.front() != '/') {
            throw std::invalid_argument("unexpected text after 'pi'");
        }
        const double den = parse_real(rest.substr(1));
        if (den == 0.0) {
            throw std::invalid_argument("division by zero");
        }
        value /= den;
    }
    return value;
}

std::vector<long long> parse_int_list(const std::string& raw) {
    std::vector<long long> out;
    for (const auto& part : split(trim(raw), ',')) {
        const auto dots = part.find("..");
        if (dots == std::string::npos) {
            out.push_back(parse_integer(part));
            continue;
        }
        const long long lo = parse_integer(trim(part.substr(0, dots)));
        const long long hi = parse_integer(trim(part.substr(dots + 2)));
        if (hi < lo) {
            throw std::invalid_argument("empty range");
        }
        for (long long v = lo; v <= hi; ++v) {
            out.push_back(v);
        }
    }
    return out;
}

std::vector<HalfInteger> parse_half_int_list(const std::string& raw) {
    std::vector<HalfInteger> out;
    for (const auto& part : split(trim(raw), ',')) {
        const auto dots = part.find("..");
        if (dots == std::string::npos) {
            out.push_back(HalfInteger::parse(part));
            continue;
        }
        const HalfInteger lo = HalfInteger::parse(trim(part.substr(0, dots)));
        const HalfInteger hi = HalfInteger::parse(trim(part.substr(dots + 2)));
        if (hi < lo || (hi.twice() - lo.twice()) % 2 != 0) {
            throw std::invalid_argument("range endpoints must differ by a non-negative integer");
        }
        for (int t = lo.twice(); t <= hi.twice(); t += 2) {
            out.push_back(HalfInteger::from_twice(t));
        }
    }
    return out;
}

bool parse_bool(const std::string& raw) {
    std::string t = trim(raw);
    std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
    if (t == "true" || t == "yes" || t == "on" || t == "1") {
        return true;
    }
    if (t == "false" || t == "no" || t == "off" || t == "0") {
        return false;
    }
    throw std::invalid_argument("expected true or false");
}

json parse_grid(const std::string& raw) {
    const auto parts = split(trim(raw), ':');
    if (parts.size() != 3) {
        throw std::invalid_argument("expected start:stop:count");
    }
    const long long count = parse_integer(parts[2]);
    if (count < 1) {
        throw std::invalid_argument("count must be positive");
    }
    return json{{"start", parse_angle(parts[0])},
                {"stop", parse_angle(parts[1])},
                {"count", count}};
}

const json& require(const json& cfg, const std::string& key) {
    if (!cfg.contains(key)) {
        throw ConfigError("required", key);
    }
    return cfg.at(key);
}

HalfInteger half_integer(const json& value) {
    const double v = value.get<double>();
    return HalfInteger::from_twice(static_cast<int>(std::lround(2.0 * v)));
}

}  // namespace ramsey::cli
