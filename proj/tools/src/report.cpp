#include "ramsey_cli/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <memory>
#include <sstream>

#include <unistd.h>

#include <openssl/evp.h>

namespace ramsey::cli {

std::string format_number(double v) {
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    if (std::isnan(v)) {
        return "nan";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string cell_text(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) {
        return format_number(*d);
    }
    if (const auto* i = std::get_if<long long>(&c)) {
        return std::to_string(*i);
    }
    return std::get<std::string>(c);
}

json cell_json(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) {
        if (!std::isfinite(*d)) {
            return format_number(*d);
        }
        return *d;
    }
    if (const auto* i = std::get_if<long long>(&c)) {
        return *i;
    }
    return std::get<std::string>(c);
}

}  // namespace

std::string to_csv(const Table& table) {
    std::ostringstream out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        out << (c ? "," : "") << table.columns[c];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << (c ? "," : "") << cell_text(row[c]);
        }
        out << '\n';
    }
    return out.str();
}

json to_json(const Table& table) {
    json rows = json::array();
    for (const auto& row : table.rows) {
        json r = json::array();
        for (const auto& cell : row) {
            r.push_back(cell_json(cell));
        }
        rows.push_back(std::move(r));
    }
    return json{{"columns", table.columns}, {"rows", std::move(rows)}};
}

void write_atomic(const std::filesystem::path& path, const std::string& contents) {
    namespace fs = std::filesystem;
    std::error_code ec;
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path(), ec);
        if (ec) {
            throw IoError("cannot create " + path.parent_path().string() + ": " + ec.message());
        }
    }
    fs::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError("cannot write " + tmp.string());
        }
        out << contents;
        out.flush();
        if (!out) {
            throw IoError("write failed for " + tmp.string());
        }
    }
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp);
        throw IoError("cannot move output into place at " + path.string() + ": " + ec.message());
    }
}

std::string sha256_hex(const std::string& data) {
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
        EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1) {
        throw std::runtime_error("SHA-256 failed");
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xf];
    }
    return out;
}

std::string config_digest(const json& canonical) {
    return sha256_hex(canonical.dump());
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json RunManifest::to_json() const {
    json j{{"tool_version", tool_version},
           {"command", command},
           {"config_digest", config_digest},
           {"started_at", started_at},
           {"finished_at", finished_at},
           {"outputs", outputs},
           {"config", config}};
    j["seed"] = seed ? json(*seed) : json(nullptr);
    if (!summary.is_null()) {
        j["summary"] = summary;
    }
    return j;
}

}  // namespace ramsey::cli
