#include "ramsey_cli/app.hpp"

#include <cstdlib>
#include <filesystem>
#include <map>
#include <memory>
#include <ostream>

#include <CLI11.hpp>

#include "ramsey/errors.hpp"
#include "ramsey_cli/commands.hpp"

namespace ramsey::cli {

namespace {

namespace fs = std::filesystem;

struct Diagnostic {
    int code;
    std::string kind;
    std::string message;
    std::string field;
    std::string where;
};

void report(std::ostream& err, const Diagnostic& d) {
    json j{{"error", d.kind}, {"exit_code", d.code}, {"message", d.message}};
    if (!d.field.empty()) {
        j["field"] = d.field;
    }
    if (!d.where.empty()) {
        j["where"] = d.where;
    }
    err << j.dump() << '\n';
}

struct Bound {
    const CommandSpec* spec;
    CLI::App* app;
    std::map<std::string, std::string> flags;
};

fs::path output_root(const std::string& flag) {
    if (!flag.empty()) {
        return flag;
    }
    if (const char* env = std::getenv("RAMSEY_OUT_DIR"); env != nullptr && *env != '\0') {
        return env;
    }
    return "out";
}

CliResult execute(const Bound& cmd, const std::string& config_path,
                  const std::vector<std::string>& sets, const std::string& format,
                  std::size_t threads, const std::string& out_flag, std::ostream& out) {
    const CommandSpec& spec = *cmd.spec;
    RawConfig raw;
    if (!config_path.empty()) {
        raw = load_yaml(config_path);
    }
    for (const auto& kv : sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw ConfigError("expected key=value", {}, "--set " + kv);
        }
        const RawConfig one =
            load_yaml_text(kv.substr(0, eq) + ": " + kv.substr(eq + 1), "--set " + kv);
        for (const auto& [k, v] : one) {
            raw[k] = v;
        }
    }
    for (const auto& [key, text] : cmd.flags) {
        raw[key] = RawValue{text, {}, false, "--" + key};
    }
    const json cfg = resolve(spec.schema, raw);
    spec.check(cfg);

    RunManifest manifest;
    manifest.tool_version = kToolVersion;
    manifest.command = spec.name();
    manifest.config = cfg;
    manifest.config_digest = config_digest(json{{"command", spec.name()}, {"config", cfg}});
    if (cfg.contains("seed")) {
        manifest.seed = cfg.at("seed").get<std::uint64_t>();
    }
    manifest.started_at = utc_timestamp();
    const CommandOutput result = spec.run(cfg, threads);
    manifest.finished_at = utc_timestamp();
    manifest.summary = result.summary;

    const fs::path dir = output_root(out_flag) / spec.group / manifest.config_digest;
    const std::string ext = format == "json" ? ".json" : ".csv";
    std::vector<std::pair<fs::path, const Table*>> files{{dir / ("data" + ext), &result.table}};
    for (const auto& [name, table] : result.extra) {
        files.emplace_back(dir / (name + ext), &table);
    }
    for (const auto& f : files) {
        manifest.outputs.push_back(f.first.string());
    }
    manifest.outputs.push_back((dir / "manifest.json").string());
    const json manifest_json = manifest.to_json();

    for (const auto& [path, table] : files) {
        if (format == "json") {
            json payload = to_json(*table);
            payload["manifest"] = manifest_json;
            write_atomic(path, payload.dump(2) + "\n");
        } else {
            write_atomic(path, to_csv(*table));
        }
    }
    write_atomic(dir / "manifest.json", manifest_json.dump(2) + "\n");

    out << spec.name() << ": " << result.message << '\n' << "wrote " << dir.string() << '\n';
    return {ok, dir};
}

}  // namespace

CliResult run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Multi-mode Ramsey interferometer design, bounds and simulation", "ramsey"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    std::string config_path;
    std::vector<std::string> sets;
    std::string format = "csv";
    std::size_t threads = 0;
    std::string out_flag;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("-c,--config", config_path, "YAML config file")->check(CLI::ExistingFile);
        sub->add_option("--set", sets, "override a config key: key=value (repeatable)");
        sub->add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--threads", threads, "worker threads (0 = all cores)");
        sub->add_option("--out", out_flag, "output root (default $RAMSEY_OUT_DIR or ./out)");
    };

    std::vector<std::unique_ptr<Bound>> bound;
    std::map<std::string, CLI::App*> groups;
    for (const auto& spec : command_specs()) {
        CLI::App* parent = &app;
        if (!spec.kind.empty()) {
            auto it = groups.find(spec.group);
            if (it == groups.end()) {
                CLI::App* g = app.add_subcommand(spec.group, "Synthesize splitting unitaries");
                g->require_subcommand(1);
                it = groups.emplace(spec.group, g).first;
            }
            parent = it->second;
        }
        CLI::App* sub = parent->add_subcommand(spec.kind.empty() ? spec.group : spec.kind, spec.help);
        auto b = std::make_unique<Bound>(Bound{&spec, sub, {}});
        for (const auto& key : spec.schema) {
            std::string help = key.help;
            if (!key.choices.empty()) {
                help += " {";
                for (std::size_t i = 0; i < key.choices.size(); ++i) {
                    help += (i ? "|" : "") + key.choices[i];
                }
                help += "}";
            }
            Bound* target = b.get();
            sub->add_option_function<std::string>(
                "--" + key.key,
                [target, k = key.key](const std::string& v) { target->flags[k] = v; }, help);
        }
        add_common(sub);
        bound.push_back(std::move(b));
    }

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return {ok, {}};
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return {ok, {}};
    } catch (const CLI::CallForVersion& e) {
        app.exit(e, out, err);
        return {ok, {}};
    } catch (const CLI::ParseError& e) {
        report(err, {config_error, "ConfigError", e.what(), {}, "command line"});
        return {config_error, {}};
    }

    const Bound* chosen = nullptr;
    for (const auto& b : bound) {
        if (b->app->parsed()) {
            chosen = b.get();
        }
    }
    if (chosen == nullptr) {
        report(err, {config_error, "ConfigError", "no command given", {}, {}});
        return {config_error, {}};
    }

    try {
        return execute(*chosen, config_path, sets, format, threads, out_flag, out);
    } catch (const ConfigError& e) {
        report(err, {config_error, "ConfigError", e.what(), e.field(), e.where()});
        return {config_error, {}};
    } catch (const ramsey::InvalidArgument& e) {
        report(err, {config_error, "InvalidArgument", e.what(), {}, {}});
        return {config_error, {}};
    } catch (const ramsey::InvalidParametrization& e) {
        report(err, {config_error, "InvalidParametrization", e.what(), {}, {}});
        return {config_error, {}};
    } catch (const ramsey::NonConvergence& e) {
        Diagnostic d{numeric_error, "NonConvergence", e.what(), {}, {}};
        json best = e.best_populations();
        d.message += "; best populations " + best.dump();
        report(err, d);
        return {numeric_error, {}};
    } catch (const ramsey::Error& e) {
        std::string kind = "NumericError";
        if (dynamic_cast<const SingularFisherMatrix*>(&e)) {
            kind = "SingularFisherMatrix";
        } else if (dynamic_cast<const ZeroAmplitude*>(&e)) {
            kind = "ZeroAmplitude";
        } else if (dynamic_cast<const ZeroResidual*>(&e)) {
            kind = "ZeroResidual";
        } else if (dynamic_cast<const NotOrthogonal*>(&e)) {
            kind = "NotOrthogonal";
        } else if (dynamic_cast<const DegenerateLikelihood*>(&e)) {
            kind = "DegenerateLikelihood";
        }
        report(err, {numeric_error, kind, e.what(), {}, {}});
        return {numeric_error, {}};
    } catch (const IoError& e) {
        report(err, {io_error, "IoError", e.what(), {}, {}});
        return {io_error, {}};
    } catch (const fs::filesystem_error& e) {
        report(err, {io_error, "IoError", e.what(), {}, {}});
        return {io_error, {}};
    } catch (const std::exception& e) {
        report(err, {unexpected, "InternalError", e.what(), {}, {}});
        return {unexpected, {}};
    }
}

}  // namespace ramsey::cli
