// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <unistd.h>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "ramsey/probe_design.hpp"
#include "ramsey/rng.hpp"
#include "ramsey/simulator.hpp"
#include "ramsey_cli/app.hpp"
#include "ramsey_cli/config.hpp"

namespace fs = std::filesystem;
using namespace ramsey;
using Big = boost::multiprecision::cpp_dec_float_50;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
    void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string fmt(double v, int digits = 6) {
    std::ostringstream ss;
    ss.precision(digits);
    ss << v;
    return ss.str();
}

using Csv = std::vector<std::vector<std::string>>;

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Csv parse_csv(const std::string& text) {
    Csv rows;
    std::stringstream ss(text);
    for (std::string line; std::getline(ss, line);) {
        std::vector<std::string> cells;
        std::stringstream ls(line);
        for (std::string cell; std::getline(ls, cell, ',');) {
            cells.push_back(cell);
        }
        rows.push_back(std::move(cells));
    }
    return rows;
}

double cell(const std::string& s) {
    if (s == "inf") {
        return std::numeric_limits<double>::infinity();
    }
    if (s == "-inf") {
        return -std::numeric_limits<double>::infinity();
    }
    return std::stod(s);
}

/// Runs the CLI in-process and returns the output directory (empty on failure).
fs::path cli(std::vector<std::string> args, const fs::path& out_root, std::string& error) {
    args.insert(args.begin(), "ramsey");
    args.push_back("--out");
    args.push_back(out_root.string());
    std::ostringstream out, err;
    const cli::CliResult r = cli::run_cli(args, out, err);
    if (r.exit_code != cli::ok) {
        error = "exit " + std::to_string(r.exit_code) + ": " + err.str();
        return {};
    }
    return r.output_dir;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

Vector random_direction(std::size_t D, double norm, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    Vector v(static_cast<Eigen::Index>(D));
    for (auto& x : v) {
        x = g(gen);
    }
    return norm * v / v.norm();
}

// 1 --------------------------------------------------------------------------

/// Reference bounds in 50-digit arithmetic. The indirect bound goes through
/// the explicit inverse of the reference-mode QFIM for the optimal probe.
struct BigBounds {
    Big opt_theta, ind, opt_phi, indirect_phi;
};

BigBounds big_bounds(int D) {
    using boost::multiprecision::sqrt;
    const Big d = D;
    const Big r = sqrt(d);
    BigBounds b;
    b.opt_theta = (d + r) * (d + r) / 4;
    b.ind = d * d;
    const Big s = sqrt(Big(2)) * (d - 1) + 2;
    b.opt_phi = s * s / 4;
    // Optimal probe: p_0 = sqrt(D) / (D + sqrt(D)), p_k = 1 / (D + sqrt(D)).
    const Big p0 = r / (d + r);
    const Big pk = Big(1) / (d + r);
    // Finv = diag(1/(4 p_k)) + ones/(4 p_0); J maps reference to neighbour phases.
    std::vector<std::vector<Big>> finv(static_cast<std::size_t>(D), std::vector<Big>(static_cast<std::size_t>(D)));
    for (int i = 0; i < D; ++i) {
        for (int j = 0; j < D; ++j) {
            finv[i][j] = Big(1) / (4 * p0) + (i == j ? Big(1) / (4 * pk) : Big(0));
        }
    }
    Big trace = 0;
    for (int row = 0; row < D; ++row) {
        std::vector<Big> jr(static_cast<std::size_t>(D), Big(0));
        jr[row] = 1;
        if (row > 0) {
            jr[row - 1] = -1;
        }
        for (int i = 0; i < D; ++i) {
            for (int j = 0; j < D; ++j) {
                trace += jr[i] * finv[i][j] * jr[j];
            }
        }
    }
    b.indirect_phi = trace;
    return b;
}

Outcome criterion1(const fs::path& root) {
    Outcome o;
    std::string err;
    const fs::path dir = cli({"bounds", "--D", "1..10", "--N", "1"}, root, err);
    if (dir.empty()) {
        o.require(false, err);
        return o;
    }
    const Csv csv = parse_csv(slurp(dir / "data.csv"));
    o.require(csv.size() == 11, "expected 10 rows");
    double worst = 0.0;
    for (std::size_t i = 1; i < csv.size(); ++i) {
        const int D = std::stoi(csv[i][0]);
        const BigBounds b = big_bounds(D);
        const double got[] = {cell(csv[i][2]), cell(csv[i][3]), cell(csv[i][4]), cell(csv[i][5])};
        const Big want[] = {b.opt_theta, b.ind, b.opt_phi, b.indirect_phi};
        for (int k = 0; k < 4; ++k) {
            const double w = static_cast<double>(want[k]);
            worst = std::max(worst, rel(got[k], w));
            if (D == 1) {
                o.require(got[k] == 1.0, "D=1 column " + std::to_string(k) + " is " + fmt(got[k], 17));
            }
        }
    }
    o.require(worst <= 1e-12, "max relative error " + fmt(worst));
    o.note("max relative error " + fmt(worst, 3));
    return o;
}

// 2 --------------------------------------------------------------------------

Outcome criterion2() {
    Outcome o;
    double worst = 0.0;
    for (std::size_t D = 1; D <= 10; ++D) {
        const Vector theta =
            optimize_probe_numeric(make_parametrization(ParametrizationKind::theta_ref, D), D).populations();
        const Vector phi =
            optimize_probe_numeric(make_parametrization(ParametrizationKind::phi_neighbor, D), D).populations();
        worst = std::max(worst, (theta - optimal_probe_theta(D).populations()).cwiseAbs().maxCoeff());
        worst = std::max(worst, (phi - optimal_probe_phi(D).populations()).cwiseAbs().maxCoeff());
    }
    o.require(worst <= 1e-6, "max population error " + fmt(worst));
    o.note("max population error " + fmt(worst, 3));
    return o;
}

// 3 --------------------------------------------------------------------------

Outcome criterion3() {
    Outcome o;
    double worst4 = 0.0, worst6 = 0.0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const std::size_t dim = 3 + seed % 6;
        const RamseyProtocol proto = RamseyProtocol::ramsey(
            random_orthogonal(dim, seed), 0, make_parametrization(ParametrizationKind::theta_ref, dim - 1));
        const Matrix q = qfim_pure(proto.probe(), proto.map(), 1.0).entries();
        const Matrix c4 = cfim(proto, random_direction(dim - 1, 1e-4, seed), 1.0, 1e-30).entries();
        const Matrix c6 = cfim(proto, random_direction(dim - 1, 1e-6, seed), 1.0, 1e-30).entries();
        worst4 = std::max(worst4, oracle::max_rel(c4, q));
        worst6 = std::max(worst6, oracle::max_rel(c6, q));
    }
    o.require(worst4 <= 1e-3, "|theta|=1e-4 deviation " + fmt(worst4));
    o.require(worst6 <= 1e-5, "|theta|=1e-6 deviation " + fmt(worst6));

    // Haar unitary with seed 2; seed 1 happens to lie close to a rephased real matrix.
    const ComplexMatrix u = random_unitary(3, 2);
    const RamseyProtocol complex_proto(u, u.adjoint(), 0, make_parametrization(ParametrizationKind::theta_ref, 2));
    const Matrix q = qfim_pure(complex_proto.probe(), complex_proto.map(), 1.0).entries();
    const double dev = oracle::max_rel(cfim(complex_proto, random_direction(2, 1e-4, 2), 1.0, 1e-30).entries(), q);
    o.require(dev > 0.01, "complex counterexample deviation only " + fmt(dev));
    o.note("orthogonal " + fmt(worst4, 3) + " / " + fmt(worst6, 3) + ", complex " + fmt(dev, 3));
    return o;
}

// 4 --------------------------------------------------------------------------

Matrix spin1_explicit(double chi) {
    const double c = std::cos(chi), s = std::sin(chi) / std::sqrt(2.0);
    Matrix u(3, 3);
    u << 0.5 + 0.5 * c, -s, 0.5 - 0.5 * c, s, c, -s, 0.5 - 0.5 * c, s, 0.5 + 0.5 * c;
    return u;
}

Outcome criterion4() {
    Outcome o;
    std::mt19937_64 gen(4);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double recon = 0.0, ortho = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t modes = 2 + static_cast<std::size_t>(trial % 16);
        Vector p(static_cast<Eigen::Index>(modes));
        for (auto& x : p) {
            x = u01(gen) < 0.1 ? 0.0 : u01(gen);
        }
        if (p.sum() == 0.0) {
            p(0) = 1.0;
        }
        p /= p.sum();
        try {
            const Matrix m = bs_cascade_unitary(bs_cascade_angles(ProbeState::from_populations(p))).entries();
            recon = std::max(recon, (m.col(0).cwiseAbs2() - p).cwiseAbs().maxCoeff());
            ortho = std::max(ortho, (m * m.transpose() - Matrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff());
        } catch (const Error& e) {
            o.require(false, std::string("trial ") + std::to_string(trial) + ": " + e.what());
        }
    }
    o.require(recon <= 1e-12, "population error " + fmt(recon));
    o.require(ortho <= 1e-12, "orthogonality " + fmt(ortho));
    double spin = 0.0;
    const auto F = HalfInteger::integer(1);
    for (int j = 0; j < 50; ++j) {
        const double chi = kPi * j / 49.0;
        const Matrix m = spin_rotation({F, chi, HalfInteger{}, HalfInteger{}}).entries();
        spin = std::max(spin, (m - spin1_explicit(chi)).cwiseAbs().maxCoeff());
    }
    o.require(spin <= 1e-14, "spin-1 matrix error " + fmt(spin));
    o.note("populations " + fmt(recon, 3) + ", orthogonality " + fmt(ortho, 3) + ", spin-1 " + fmt(spin, 3));
    return o;
}

// 5 --------------------------------------------------------------------------

Outcome criterion5() {
    Outcome o;
    const OsrsOptimum one = osrs_optimize(HalfInteger::integer(1), HalfInteger{});
    const double target = std::pow(2.0 + std::sqrt(2.0), 2) / 4.0;
    o.require(std::abs(one.variance - target) <= 1e-6, "F=1 variance " + fmt(one.variance, 12));
    o.require(std::abs(one.chi / kPi - 0.2774) <= 0.002, "F=1 chi " + fmt(one.chi / kPi) + " pi");
    o.note("F=1: " + fmt(one.variance, 10) + " at " + fmt(one.chi / kPi, 5) + " pi");
    for (int f = 2; f <= 5; ++f) {
        const OsrsOptimum opt = osrs_optimize(HalfInteger::integer(f), HalfInteger{});
        const auto D = static_cast<std::size_t>(2 * f);
        const double lo = qcrb_theta_opt(D, 1.0), hi = qcrb_individual(D, 1.0);
        const double margin = std::min(opt.variance - lo, hi - opt.variance);
        o.require(margin > 1e-3, "F=" + std::to_string(f) + " variance " + fmt(opt.variance) + " outside (" +
                                     fmt(lo) + ", " + fmt(hi) + ")");
        o.note("F=" + std::to_string(f) + ": " + fmt(opt.variance, 6));
    }
    return o;
}

// 6 --------------------------------------------------------------------------

Outcome criterion6(const fs::path& root, fs::path& csv_path) {
    Outcome o;
    std::string err;
    const fs::path dir = cli({"sweep", "--mode", "cfim", "--grid1", "0:pi:101", "--grid2", "0:pi:101"}, root, err);
    if (dir.empty()) {
        o.require(false, err);
        return o;
    }
    csv_path = dir / "data.csv";
    const Csv csv = parse_csv(slurp(csv_path));
    const std::size_t n = 101;
    if (csv.size() != n * n + 1) {
        o.require(false, "expected 101x101 rows");
        return o;
    }
    std::vector<double> zeta(n * n);
    std::size_t near = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < n * n; ++r) {
        const double t1 = cell(csv[r + 1][0]), t2 = cell(csv[r + 1][1]);
        zeta[r] = cell(csv[r + 1][2]);
        const double d = std::hypot(t1 - 0.01 * kPi, t2 - 0.01 * kPi);
        if (d < best) {
            best = d;
            near = r;
        }
    }
    o.require(std::abs(zeta[near] - 1.375) <= 0.01, "zeta near corner " + fmt(zeta[near]));

    // Flood fill of zeta > 0 from that point, 4-neighbour connectivity.
    std::vector<char> seen(n * n, 0);
    std::queue<std::size_t> todo;
    std::size_t component = 0, positive = 0;
    for (double z : zeta) {
        positive += z > 0.0 ? 1 : 0;
    }
    if (zeta[near] > 0.0) {
        todo.push(near);
        seen[near] = 1;
    }
    while (!todo.empty()) {
        const std::size_t r = todo.front();
        todo.pop();
        ++component;
        const std::size_t i = r / n, j = r % n;
        const std::size_t nb[4][2] = {{i - 1, j}, {i + 1, j}, {i, j - 1}, {i, j + 1}};
        for (const auto& q : nb) {
            if (q[0] < n && q[1] < n) {
                const std::size_t s = q[0] * n + q[1];
                if (!seen[s] && zeta[s] > 0.0) {
                    seen[s] = 1;
                    todo.push(s);
                }
            }
        }
    }
    o.require(component > 1, "no zeta > 0 region around the corner");
    o.note("zeta(0.01pi, 0.01pi) = " + fmt(zeta[near], 8) + " dB, corner region " + std::to_string(component) +
           " of " + std::to_string(positive) + " positive points");
    return o;
}

// 7 --------------------------------------------------------------------------

struct McRun {
    fs::path csv;
    double zeta = std::numeric_limits<double>::quiet_NaN();
    double standard_error = 0.0;
    double variance = 0.0;
};

McRun simulate(const fs::path& root, double sigma, std::string& err) {
    McRun r;
    const fs::path dir = cli({"simulate", "--atoms", "10000", "--sigma", fmt(sigma, 17), "--runs", "1000", "--truth",
                              "0.3pi,0.3pi", "--seed", "7"},
                             root, err);
    if (dir.empty()) {
        return r;
    }
    r.csv = dir / "data.csv";
    const cli::json manifest = cli::json::parse(slurp(dir / "manifest.json"));
    const auto& s = manifest.at("summary");
    r.zeta = s.at("zeta_db").is_number() ? s.at("zeta_db").get<double>() : std::numeric_limits<double>::infinity();
    r.standard_error = s.at("standard_error").get<double>();
    r.variance = s.at("total_variance").get<double>();
    return r;
}

Outcome criterion7(const fs::path& root, fs::path& noisy_csv, fs::path& quiet_csv) {
    Outcome o;
    std::string err;
    const McRun noisy = simulate(root, 14.0, err);
    const McRun quiet = simulate(root, 0.0, err);
    if (noisy.csv.empty() || quiet.csv.empty()) {
        o.require(false, err);
        return o;
    }
    noisy_csv = noisy.csv;
    quiet_csv = quiet.csv;
    o.require(noisy.zeta >= 0.3 && noisy.zeta <= 0.9, "zeta(sigma=14) = " + fmt(noisy.zeta) + " outside [0.3, 0.9]");
    o.require(noisy.zeta < quiet.zeta, "zeta(sigma=14) not below zeta(sigma=0)");
    o.require(quiet.zeta >= 1.0 && quiet.zeta <= 1.8, "zeta(sigma=0) = " + fmt(quiet.zeta) + " outside [1.0, 1.8]");
    o.note("zeta(sigma=14) = " + fmt(noisy.zeta, 4) + " dB, zeta(sigma=0) = " + fmt(quiet.zeta, 4) +
           " dB (MSE " + fmt(quiet.variance, 4) + " +/- " + fmt(quiet.standard_error, 2) + ")");
    return o;
}

// 8 --------------------------------------------------------------------------

Outcome criterion8() {
    Outcome o;
    double gauge = 0.0, phase = 0.0, inverse = 0.0, jac = 0.0, osrs = 0.0, wigner = 0.0;
    bool poisson_exact = true;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const std::size_t D = 1 + seed % 7;
        const ProbeState probe = oracle::random_probe(D, seed);
        const auto map = make_parametrization(ParametrizationKind::theta_ref, D);
        const Matrix ref = qfim_pure(probe, map, 1.0).entries();
        for (std::size_t g = 0; g <= D; ++g) {
            const Matrix f =
                qfim_pure(probe, make_parametrization(ParametrizationKind::theta_ref, D, std::nullopt, g), 1.0)
                    .entries();
            gauge = std::max(gauge, (f - ref).cwiseAbs().maxCoeff());
        }
        ComplexVector rotated = probe.amplitudes();
        std::mt19937_64 gen(seed);
        std::uniform_real_distribution<double> ph(-kPi, kPi);
        for (auto& a : rotated) {
            a *= std::polar(1.0, ph(gen));
        }
        phase = std::max(phase, (qfim_pure(ProbeState(rotated), map, 1.0).entries() - ref).cwiseAbs().maxCoeff());

        const Vector p = probe.populations();
        const auto d = static_cast<Eigen::Index>(D);
        Matrix inv = Matrix::Constant(d, d, 1.0 / (4.0 * p(0)));
        for (Eigen::Index k = 0; k < d; ++k) {
            inv(k, k) += 1.0 / (4.0 * p(k + 1));
        }
        inverse = std::max(inverse, (ref * inv - Matrix::Identity(d, d)).cwiseAbs().maxCoeff());

        for (double mean : {3.0, 1e4, 12345.5}) {
            const Matrix f = qfim_poisson(probe, map, mean).entries();
            poisson_exact = poisson_exact && (f.array() == (mean * ref).array()).all();
        }

        const std::size_t dim = 2 + seed % 6;
        const ComplexMatrix u = random_unitary(dim, seed);
        const RamseyProtocol proto(u, u.adjoint(), seed % dim,
                                   make_parametrization(seed % 2 ? ParametrizationKind::theta_ref
                                                                 : ParametrizationKind::phi_neighbor,
                                                        dim - 1));
        const Vector theta = random_direction(dim - 1, 2.0, seed + 7);
        jac = std::max(jac, (probability_jacobian(proto, theta) - oracle::fd_jacobian(proto, theta)).cwiseAbs().maxCoeff());
    }
    for (int twice = 1; twice <= 10; ++twice) {
        const auto F = HalfInteger::from_twice(twice);
        for (int j = 1; j < 20; ++j) {
            const double chi = kPi * j / 20.0;
            wigner = std::max(wigner, (spin_rotation({F, chi, F, F}).entries() - wigner_rotation(F, chi).entries())
                                          .cwiseAbs()
                                          .maxCoeff());
            for (int a = 0; a <= twice; ++a) {
                const SpinRotationSpec spec{F, chi, spin_sublevel(F, static_cast<std::size_t>(a)),
                                            spin_sublevel(F, static_cast<std::size_t>(twice / 2))};
                try {
                    const double v = osrs_variance(spec, 1.0);
                    osrs = std::max(osrs, rel(osrs_variance_closed_form(spec, 1.0), v));
                } catch (const ZeroAmplitude&) {
                }
            }
        }
    }
    o.require(gauge <= 1e-12, "gauge " + fmt(gauge));
    o.require(phase <= 1e-14, "amplitude phase " + fmt(phase));
    o.require(inverse <= 1e-10, "closed-form inverse " + fmt(inverse));
    o.require(jac <= 1e-6, "jacobian " + fmt(jac));
    o.require(osrs <= 1e-10, "OSRS closed form " + fmt(osrs));
    o.require(wigner <= 1e-10, "d-matrix oracles " + fmt(wigner));
    o.require(poisson_exact, "Poisson scaling not exact");

    // Multinomial and Gaussian moments at 3 standard errors.
    Vector p(3);
    p << 0.2, 0.3, 0.5;
    const ProbabilityVector probs(p);
    auto rng = stream(8, 0, RngStage::multinomial);
    const int draws = 4000;
    Vector sum = Vector::Zero(3);
    for (int i = 0; i < draws; ++i) {
        const auto c = sample_counts(probs, 1000, rng);
        for (int m = 0; m < 3; ++m) {
            sum(m) += static_cast<double>(c[static_cast<std::size_t>(m)]);
        }
    }
    for (int m = 0; m < 3; ++m) {
        const double se = std::sqrt(1000.0 * p(m) * (1.0 - p(m)) / draws);
        o.require(std::abs(sum(m) / draws - 1000.0 * p(m)) <= 3.0 * se, "multinomial mean of port " + std::to_string(m));
    }
    auto noise_rng = stream(8, 0, RngStage::noise);
    double s = 0.0, s2 = 0.0;
    const int samples = 20000;
    for (int i = 0; i < samples; ++i) {
        const double x = apply_detection_noise(std::vector<std::int64_t>{0}, 14.0, noise_rng)[0];
        s += x;
        s2 += x * x;
    }
    const double mean = s / samples, var = s2 / samples - mean * mean;
    o.require(std::abs(mean) <= 3.0 * 14.0 / std::sqrt(samples), "noise mean " + fmt(mean));
    o.require(std::abs(var / 196.0 - 1.0) <= 3.0 * std::sqrt(2.0 / samples), "noise variance " + fmt(var));
    o.note("gauge " + fmt(gauge, 2) + ", phase " + fmt(phase, 2) + ", inverse " + fmt(inverse, 2) + ", jacobian " +
           fmt(jac, 2) + ", OSRS " + fmt(osrs, 2) + ", d-matrix " + fmt(wigner, 2));
    return o;
}

// 9 --------------------------------------------------------------------------

Outcome criterion9(const fs::path& root, const std::vector<fs::path>& first) {
    Outcome o;
    fs::path sweep, noisy, quiet;
    const Outcome six = criterion6(root, sweep);
    const Outcome seven = criterion7(root, noisy, quiet);
    const std::vector<fs::path> second{sweep, noisy, quiet};
    for (std::size_t i = 0; i < first.size(); ++i) {
        if (first[i].empty() || second[i].empty()) {
            o.require(false, "a run produced no CSV");
            continue;
        }
        o.require(slurp(first[i]) == slurp(second[i]), second[i].filename().string() + " differs");
    }
    o.note(std::to_string(first.size()) + " data CSVs compared");
    return o;
}

}  // namespace

int main() {
    const fs::path root = fs::temp_directory_path() / ("ramsey_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(root);

    struct Criterion {
        int id;
        std::string name;
        double limit_seconds;
        std::function<Outcome()> run;
    };
    fs::path sweep_csv, noisy_csv, quiet_csv;
    const std::vector<Criterion> criteria{
        {1, "closed-form bounds", 1.0, [&] { return criterion1(root / "first"); }},
        {2, "optimal-probe consistency", 10.0, criterion2},
        {3, "CFIM = QFIM saturation", 30.0, criterion3},
        {4, "synthesis round trip", 10.0, criterion4},
        {5, "OSRS optima", 60.0, criterion5},
        {6, "noiseless zeta map", 60.0, [&] { return criterion6(root / "first", sweep_csv); }},
        {7, "noisy Monte Carlo", 600.0, [&] { return criterion7(root / "first", noisy_csv, quiet_csv); }},
        {8, "property suites", 120.0, criterion8},
        {9, "determinism", std::numeric_limits<double>::infinity(),
         [&] { return criterion9(root / "second", {sweep_csv, noisy_csv, quiet_csv}); }},
    };

    bool all = true;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        o.require(seconds < c.limit_seconds, "runtime " + fmt(seconds, 3) + " s over " + fmt(c.limit_seconds) + " s");
        all = all && o.pass;
        std::printf("%s criterion %d (%s) [%.2f s]: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name.c_str(), seconds,
                    o.detail.c_str());
        std::fflush(stdout);
    }
    fs::remove_all(root);
    return all ? 0 : 1;
}
