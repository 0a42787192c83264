#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "ramsey/probe_design.hpp"
#include "ramsey_cli/app.hpp"
#include "ramsey_cli/config.hpp"
#include "ramsey_cli/report.hpp"

using namespace ramsey::cli;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        root_ = fs::temp_directory_path() / ("ramsey_cli_" + std::string(info->name()));
        fs::remove_all(root_);
        fs::create_directories(root_);
    }
    void TearDown() override { fs::remove_all(root_); }

    CliResult run(std::vector<std::string> args, bool with_out = true) {
        args.insert(args.begin(), "ramsey");
        if (with_out) {
            args.push_back("--out");
            args.push_back((root_ / "out").string());
        }
        out_.str("");
        err_.str("");
        return run_cli(args, out_, err_);
    }

    fs::path write_file(const std::string& name, const std::string& text) {
        const fs::path p = root_ / name;
        std::ofstream(p) << text;
        return p;
    }

    static std::string slurp(const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    static std::vector<std::string> lines(const std::string& text) {
        std::vector<std::string> out;
        std::stringstream ss(text);
        for (std::string line; std::getline(ss, line);) {
            out.push_back(line);
        }
        return out;
    }

    json error_json() const { return json::parse(err_.str()); }

    fs::path root_;
    std::ostringstream out_;
    std::ostringstream err_;
};

}  // namespace

TEST(ConfigParsers, Angles) {
    EXPECT_DOUBLE_EQ(parse_angle("0.3pi"), 0.3 * kPi);
    EXPECT_DOUBLE_EQ(parse_angle("pi/4"), kPi / 4);
    EXPECT_DOUBLE_EQ(parse_angle("-pi"), -kPi);
    EXPECT_DOUBLE_EQ(parse_angle("2*pi"), 2 * kPi);
    EXPECT_DOUBLE_EQ(parse_angle("0.5"), 0.5);
    EXPECT_THROW(parse_angle("pie"), std::invalid_argument);
    EXPECT_THROW(parse_real("1.0x"), std::invalid_argument);
    EXPECT_THROW(parse_real("nan"), std::invalid_argument);
}

TEST(ConfigParsers, Lists) {
    EXPECT_EQ(parse_int_list("1..4,7"), (std::vector<long long>{1, 2, 3, 4, 7}));
    EXPECT_EQ(parse_int_list("3"), (std::vector<long long>{3}));
    EXPECT_THROW(parse_int_list("4..1"), std::invalid_argument);
    const auto h = parse_half_int_list("1/2,3/2,2");
    ASSERT_EQ(h.size(), 3u);
    EXPECT_EQ(h[1].twice(), 3);
    EXPECT_EQ(parse_half_int_list("1..3").size(), 3u);
    EXPECT_TRUE(parse_bool("true"));
    EXPECT_FALSE(parse_bool("no"));
    EXPECT_THROW(parse_bool("maybe"), std::invalid_argument);
    const json g = parse_grid("0:pi:101");
    EXPECT_DOUBLE_EQ(g.at("stop").get<double>(), kPi);
    EXPECT_EQ(g.at("count").get<int>(), 101);
    EXPECT_THROW(parse_grid("0:1"), std::invalid_argument);
}

TEST(ConfigResolve, DefaultsAndUnknownKeys) {
    const Schema schema{{"a", ValueType::real, json(1.5), {}, ""},
                        {"b", ValueType::choice, json("x"), {"x", "y"}, ""},
                        {"c", ValueType::integer, std::nullopt, {}, ""}};
    const json cfg = resolve(schema, load_yaml_text("b: y\n", "t.yaml"));
    EXPECT_EQ(cfg.at("a"), 1.5);
    EXPECT_EQ(cfg.at("b"), "y");
    EXPECT_FALSE(cfg.contains("c"));
    try {
        resolve(schema, load_yaml_text("a: 1\nbogus: 2\n", "t.yaml"));
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.field(), "bogus");
        EXPECT_EQ(e.where(), "t.yaml:2");
    }
    EXPECT_THROW(resolve(schema, load_yaml_text("b: z\n", "t.yaml")), ConfigError);
    EXPECT_THROW(resolve(schema, load_yaml_text("a: [1, 2]\n", "t.yaml")), ConfigError);
    EXPECT_THROW(load_yaml_text("a: 1\na: 2\n", "t.yaml"), ConfigError);
    EXPECT_THROW(load_yaml_text("- 1\n- 2\n", "t.yaml"), ConfigError);
}

TEST(ConfigResolve, NestedKeysFlatten) {
    const RawConfig raw = load_yaml_text("mle:\n  grid_points: 41\n", "t.yaml");
    ASSERT_TRUE(raw.count("mle.grid_points"));
    EXPECT_EQ(raw.at("mle.grid_points").text, "41");
}

TEST(Report, NumbersAndCsv) {
    EXPECT_EQ(format_number(0.1), "0.10000000000000001");
    EXPECT_EQ(format_number(-std::numeric_limits<double>::infinity()), "-inf");
    EXPECT_EQ(format_number(2.0), "2");
    Table t{{"a", "b"}, {{1LL, 0.5}, {std::string("x"), -std::numeric_limits<double>::infinity()}}};
    EXPECT_EQ(to_csv(t), "a,b\n1,0.5\nx,-inf\n");
    EXPECT_EQ(to_json(t).at("rows")[1][1], "-inf");
    EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_F(CliTest, BoundsHeaderAndRows) {
    const CliResult r = run({"bounds", "--D", "1..10", "--N", "1"});
    ASSERT_EQ(r.exit_code, ok) << err_.str();
    const auto rows = lines(slurp(r.output_dir / "data.csv"));
    ASSERT_EQ(rows.size(), 11u);
    EXPECT_EQ(rows[0], "D,N,var_opt_theta,var_ind,var_opt_phi,var_indirect_phi,zeta_db");
    EXPECT_EQ(rows[2].substr(0, 4), "2,1,");
    EXPECT_EQ(rows[2].substr(4, rows[2].find(',', 4) - 4), "2.9142135623730949");
    EXPECT_TRUE(fs::exists(r.output_dir / "manifest.json"));
    const json manifest = json::parse(slurp(r.output_dir / "manifest.json"));
    EXPECT_EQ(manifest.at("command"), "bounds");
    EXPECT_EQ(manifest.at("config_digest"), r.output_dir.filename().string());
}

TEST_F(CliTest, BoundsSingleScheme) {
    const CliResult r = run({"bounds", "--D", "3", "--scheme", "individual", "--N", "2"});
    ASSERT_EQ(r.exit_code, ok) << err_.str();
    const auto rows = lines(slurp(r.output_dir / "data.csv"));
    EXPECT_EQ(rows[0], "D,N,scheme,total_variance");
    EXPECT_EQ(rows[1], "3,2,individual,4.5");
}

TEST_F(CliTest, RerunIsByteIdentical) {
    const CliResult a = run({"cfim", "--theta", "0.1pi,0.2pi"});
    ASSERT_EQ(a.exit_code, ok) << err_.str();
    const std::string first = slurp(a.output_dir / "data.csv");
    const CliResult b = run({"cfim", "--set", "theta=[0.1pi, 0.2pi]"});
    ASSERT_EQ(b.exit_code, ok) << err_.str();
    EXPECT_EQ(a.output_dir, b.output_dir);
    EXPECT_EQ(slurp(b.output_dir / "data.csv"), first);
}

TEST_F(CliTest, ConfigFileFlagPrecedence) {
    const fs::path cfg = write_file("c.yaml", "D: 2\nN: 4\n");
    const CliResult r = run({"bounds", "-c", cfg.string(), "--set", "N=8", "--N", "16"});
    ASSERT_EQ(r.exit_code, ok) << err_.str();
    const json manifest = json::parse(slurp(r.output_dir / "manifest.json"));
    EXPECT_EQ(manifest.at("config").at("N"), 16.0);
    EXPECT_EQ(manifest.at("config").at("D"), json::array({2}));
}

TEST_F(CliTest, JsonFormat) {
    const CliResult r = run({"synth", "spin", "--F", "1", "--format", "json"});
    ASSERT_EQ(r.exit_code, ok) << err_.str();
    const json data = json::parse(slurp(r.output_dir / "data.json"));
    EXPECT_EQ(data.at("columns"), json::array({"row", "m_row", "col", "m_col", "d"}));
    EXPECT_EQ(data.at("rows").size(), 9u);
    EXPECT_EQ(data.at("manifest").at("command"), "synth spin");
}

TEST_F(CliTest, CascadeWritesUnitary) {
    const CliResult r = run({"synth", "cascade", "--D", "4"});
    ASSERT_EQ(r.exit_code, ok) << err_.str();
    EXPECT_EQ(lines(slurp(r.output_dir / "unitary.csv")).size(), 26u);
    const json manifest = json::parse(slurp(r.output_dir / "manifest.json"));
    EXPECT_EQ(manifest.at("summary").at("orthogonality"), "pass");
}

TEST_F(CliTest, EnvironmentOutputRoot) {
    const fs::path env_root = root_ / "env";
    ::setenv("RAMSEY_OUT_DIR", env_root.c_str(), 1);
    const CliResult r = run({"bounds", "--D", "2"}, false);
    ::unsetenv("RAMSEY_OUT_DIR");
    ASSERT_EQ(r.exit_code, ok) << err_.str();
    EXPECT_EQ(r.output_dir.parent_path().parent_path(), env_root);
}

TEST_F(CliTest, ConfigErrorsExitTwo) {
    EXPECT_EQ(run({"bounds"}).exit_code, config_error);  // D has no default
    EXPECT_EQ(error_json().at("field"), "D");
    EXPECT_EQ(run({"bounds", "--D", "2", "--scheme", "magic"}).exit_code, config_error);
    EXPECT_EQ(run({"nonsense"}).exit_code, config_error);
    EXPECT_EQ(run({"simulate"}).exit_code, config_error);  // seed is required
    EXPECT_EQ(run({"bounds", "--D", "0"}).exit_code, config_error);

    const fs::path bad = write_file("bad.yaml", "D: 2\nspeed: 3\n");
    EXPECT_EQ(run({"bounds", "-c", bad.string()}).exit_code, config_error);
    const json e = error_json();
    EXPECT_EQ(e.at("error"), "ConfigError");
    EXPECT_EQ(e.at("field"), "speed");
    EXPECT_EQ(e.at("where"), bad.string() + ":2");
}

TEST_F(CliTest, NumericErrorsExitThree) {
    EXPECT_EQ(run({"cfim", "--theta", "0,0"}).exit_code, numeric_error);
    EXPECT_EQ(error_json().at("error"), "SingularFisherMatrix");
    EXPECT_EQ(run({"probe", "--D", "5", "--method", "numeric", "--max_iterations", "2"}).exit_code,
              numeric_error);
    EXPECT_EQ(error_json().at("error"), "NonConvergence");
}

TEST_F(CliTest, IoErrorsExitFour) {
    const fs::path blocker = write_file("blocker", "not a directory");
    std::vector<std::string> args{"ramsey", "bounds", "--D", "2", "--out", (blocker / "sub").string()};
    EXPECT_EQ(run_cli(args, out_, err_).exit_code, io_error);
}

TEST_F(CliTest, OsrsTable) {
    const CliResult r = run({"osrs", "--F", "1..2", "--chi_grid", "401"});
    ASSERT_EQ(r.exit_code, ok) << err_.str();
    const auto rows = lines(slurp(r.output_dir / "data.csv"));
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[0], "F,m_i,chi,variance");
    const double v = std::stod(rows[1].substr(rows[1].rfind(',') + 1));
    EXPECT_NEAR(v, ramsey::qcrb_theta_opt(2, 1.0), 1e-9);
}
