#include "ramsey_cli/commands.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "ramsey/fisher.hpp"
#include "ramsey/probe_design.hpp"
#include "ramsey/simulator.hpp"
#include "ramsey/synthesis.hpp"

namespace ramsey::cli {

namespace {

constexpr double kPi = std::numbers::pi;

json pi_times(double factor) { return factor * kPi; }

std::string fmt(double v) { return format_number(v); }

// Shared keys ----------------------------------------------------------------

Schema protocol_keys() {
    return {
        {"F", ValueType::half_integer, json(1.0), {}, "spin of the atoms; D = 2F parameters"},
        {"chi", ValueType::angle, pi_times(0.2774), {}, "rotation angle of exp(-i F_y chi)"},
        {"m_i", ValueType::half_integer, json(0.0), {}, "initial sublevel"},
        {"m_0", ValueType::half_integer, json(0.0), {}, "reference sublevel"},
    };
}

Schema mle_keys() {
    return {
        {"mle.grid_points", ValueType::unsigned_int, json(101), {}, "coarse grid points per axis"},
        {"mle.refine_iters", ValueType::unsigned_int, json(200), {}, "simplex iterations"},
        {"mle.refine_tolerance", ValueType::real, json(1e-6), {}, "simplex diameter tolerance"},
        {"mle.prob_floor", ValueType::real, json(1e-12), {}, "floor inside log p"},
        {"mle.domain", ValueType::matrix, std::nullopt, {}, "one [lo, hi] row per parameter"},
    };
}

Schema detection_keys() {
    return {
        {"sigma", ValueType::real, json(0.0), {}, "Gaussian detection noise (atoms)"},
        {"atoms", ValueType::unsigned_int, json(10000), {}, "atoms per run"},
        {"poisson", ValueType::boolean, json(false), {}, "Poisson-distributed atom number"},
        {"runs", ValueType::unsigned_int, json(1000), {}, "Monte-Carlo repetitions"},
    };
}

Schema concat(std::initializer_list<Schema> parts) {
    Schema out;
    for (const auto& p : parts) {
        out.insert(out.end(), p.begin(), p.end());
    }
    return out;
}

SpinRotationSpec spin_spec(const json& cfg) {
    SpinRotationSpec spec{half_integer(cfg.at("F")), cfg.at("chi").get<double>(),
                          half_integer(cfg.at("m_i")), half_integer(cfg.at("m_0"))};
    spec.validate();
    return spec;
}

MleConfig mle_config(const json& cfg) {
    MleConfig mle;
    mle.grid_points = cfg.at("mle.grid_points").get<std::size_t>();
    mle.refine_iters = cfg.at("mle.refine_iters").get<std::size_t>();
    mle.refine_tolerance = cfg.at("mle.refine_tolerance").get<double>();
    mle.prob_floor = cfg.at("mle.prob_floor").get<double>();
    if (cfg.contains("mle.domain")) {
        for (const auto& row : cfg.at("mle.domain")) {
            if (row.size() != 2) {
                throw ConfigError("each row must be [lo, hi]", "mle.domain");
            }
            mle.domain.push_back({row[0].get<double>(), row[1].get<double>()});
        }
    }
    return mle;
}

DetectionModel detection_model(const json& cfg) {
    DetectionModel d;
    d.sigma = cfg.at("sigma").get<double>();
    d.atom_count = cfg.at("atoms").get<std::uint64_t>();
    d.poisson_atoms = cfg.at("poisson").get<bool>();
    return d;
}

Vector to_vector(const json& list) {
    Vector v(static_cast<Eigen::Index>(list.size()));
    for (std::size_t k = 0; k < list.size(); ++k) {
        v(static_cast<Eigen::Index>(k)) = list[k].get<double>();
    }
    return v;
}

Matrix to_matrix(const json& rows) {
    const auto r = static_cast<Eigen::Index>(rows.size());
    const auto c = r == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(rows[0].size());
    Matrix m(r, c);
    for (Eigen::Index i = 0; i < r; ++i) {
        for (Eigen::Index j = 0; j < c; ++j) {
            m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].get<double>();
        }
    }
    return m;
}

void require_positive(const json& cfg, const std::string& key) {
    if (!(cfg.at(key).get<double>() > 0.0)) {
        throw ConfigError("must be positive", key);
    }
}

json nullable(double v) { return std::isfinite(v) ? json(v) : json(fmt(v)); }

HalfInteger default_reference(HalfInteger F) { return HalfInteger::from_twice(F.twice() % 2); }

// bounds ---------------------------------------------------------------------

CommandOutput run_bounds(const json& cfg, std::size_t) {
    const double N = cfg.at("N").get<double>();
    const std::string scheme = cfg.at("scheme").get<std::string>();
    CommandOutput out;
    if (scheme == "all") {
        out.table.columns = {"D", "N", "var_opt_theta", "var_ind", "var_opt_phi",
                             "var_indirect_phi", "zeta_db"};
    } else {
        out.table.columns = {"D", "N", "scheme", "total_variance"};
    }
    for (const auto& d_json : cfg.at("D")) {
        const auto D = d_json.get<std::size_t>();
        if (scheme == "all") {
            const double opt = qcrb_theta_opt(D, N);
            const double ind = qcrb_individual(D, N);
            out.table.rows.push_back({static_cast<long long>(D), N, opt, ind, qcrb_phi_opt(D, N),
                                      indirect_phi_bound(D, N), zeta_db(opt, ind)});
            continue;
        }
        BoundReport report{};
        if (scheme == "simultaneous-opt") {
            report = bound_report(BoundScheme::simultaneous_opt, D, N);
        } else if (scheme == "individual") {
            report = bound_report(BoundScheme::individual, D, N);
        } else if (scheme == "indirect-jacobian") {
            report = bound_report(BoundScheme::indirect_jacobian, D, N);
        } else {
            const auto F = HalfInteger::from_twice(static_cast<int>(D));
            report = osrs_report(F, default_reference(F), N);
        }
        out.table.rows.push_back({static_cast<long long>(D), N, scheme, report.total_variance});
    }
    out.message = std::to_string(out.table.rows.size()) + " bound rows";
    return out;
}

void check_bounds(const json& cfg) {
    require(cfg, "D");
    for (const auto& d : cfg.at("D")) {
        if (d.get<long long>() < 1) {
            throw ConfigError("every D must be at least 1", "D");
        }
    }
    require_positive(cfg, "N");
}

// probe ----------------------------------------------------------------------

CommandOutput run_probe(const json& cfg, std::size_t) {
    const auto D = cfg.at("D").get<std::size_t>();
    const double N = cfg.at("N").get<double>();
    const std::string param = cfg.at("parametrization").get<std::string>();
    const std::string method = cfg.at("method").get<std::string>();

    const ParametrizationKind kind = param == "theta-ref"      ? ParametrizationKind::theta_ref
                                     : param == "phi-neighbor" ? ParametrizationKind::phi_neighbor
                                                               : ParametrizationKind::custom;
    std::optional<Matrix> custom;
    if (kind == ParametrizationKind::custom) {
        custom = to_matrix(cfg.at("jacobian"));
    }
    const ParametrizationMap map = make_parametrization(kind, D, custom);

    std::optional<ProbeState> probe;
    if (method == "closed-form") {
        probe = kind == ParametrizationKind::theta_ref ? optimal_probe_theta(D) : optimal_probe_phi(D);
    } else {
        ProbeOptimizerOptions opts;
        opts.max_iterations = cfg.at("max_iterations").get<std::size_t>();
        opts.seed = cfg.at("seed").get<std::uint64_t>();
        probe = optimize_probe_numeric(map, D, opts);
    }
    const double total = qcrb_total_variance(qfim_pure(*probe, map, N));

    CommandOutput out;
    out.table.columns = {"k", "population", "amplitude"};
    const Vector p = probe->populations();
    for (Eigen::Index k = 0; k < p.size(); ++k) {
        out.table.rows.push_back({static_cast<long long>(k), p(k), std::sqrt(p(k))});
    }
    out.summary = {{"total_variance", total}, {"parametrization", param}, {"method", method}};
    out.message = "total variance bound " + fmt(total);
    return out;
}

void check_probe(const json& cfg) {
    if (require(cfg, "D").get<long long>() < 1) {
        throw ConfigError("must be at least 1", "D");
    }
    require_positive(cfg, "N");
    const bool custom = cfg.at("parametrization") == "custom";
    if (custom && !cfg.contains("jacobian")) {
        throw ConfigError("required for a custom parametrization", "jacobian");
    }
    if (!custom && cfg.contains("jacobian")) {
        throw ConfigError("only used with parametrization: custom", "jacobian");
    }
    if (custom && cfg.at("method") == "closed-form") {
        throw ConfigError("custom maps have no closed-form probe; use method: numeric", "method");
    }
}

// synth ----------------------------------------------------------------------

CommandOutput run_synth_cascade(const json& cfg, std::size_t) {
    const std::string kind = cfg.at("probe").get<std::string>();
    Vector target;
    if (kind == "custom") {
        target = to_vector(cfg.at("populations"));
    } else {
        const auto D = cfg.at("D").get<std::size_t>();
        if (kind == "optimal-theta") {
            target = optimal_probe_theta(D).populations();
        } else if (kind == "optimal-phi") {
            target = optimal_probe_phi(D).populations();
        } else {
            target = Vector::Constant(static_cast<Eigen::Index>(D + 1), 1.0 / static_cast<double>(D + 1));
        }
    }
    const ProbeState probe = ProbeState::from_populations(target);
    const CascadeAngles angles = bs_cascade_angles(probe);
    const OrthogonalMatrix u = bs_cascade_unitary(angles);
    const Matrix& e = u.entries();
    const auto n = e.rows();
    const double ortho = max_abs(e * e.transpose() - Matrix::Identity(n, n));
    const double recon = (e.col(0).cwiseAbs2() - probe.populations()).cwiseAbs().maxCoeff();

    CommandOutput out;
    out.table.columns = {"k", "eta_k", "cos2_eta_k"};
    for (std::size_t k = 0; k < angles.size(); ++k) {
        const double eta = angles.etas()[k];
        out.table.rows.push_back({static_cast<long long>(k + 1), eta, std::cos(eta) * std::cos(eta)});
    }
    Table unitary{{"row", "col", "u"}, {}};
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) {
            unitary.rows.push_back({static_cast<long long>(r), static_cast<long long>(c), e(r, c)});
        }
    }
    out.extra.emplace_back("unitary", std::move(unitary));
    const bool pass = ortho <= 1e-12;
    out.summary = {{"orthogonality_deviation", ortho},
                   {"orthogonality", pass ? "pass" : "fail"},
                   {"population_max_error", recon}};
    out.message = std::string("orthogonality ") + (pass ? "pass" : "fail") + " (max |U U^T - I| = " +
                  fmt(ortho) + "), population error " + fmt(recon);
    return out;
}

void check_synth_cascade(const json& cfg) {
    const bool custom = cfg.at("probe") == "custom";
    if (custom && !cfg.contains("populations")) {
        throw ConfigError("required for probe: custom", "populations");
    }
    if (!custom) {
        if (cfg.contains("populations")) {
            throw ConfigError("only used with probe: custom", "populations");
        }
        if (require(cfg, "D").get<long long>() < 1) {
            throw ConfigError("must be at least 1", "D");
        }
    }
}

CommandOutput run_synth_spin(const json& cfg, std::size_t) {
    const HalfInteger F = half_integer(cfg.at("F"));
    const double chi = cfg.at("chi").get<double>();
    const OrthogonalMatrix u = spin_rotation({F, chi, F, F});
    const OrthogonalMatrix w = wigner_rotation(F, chi);
    const Matrix& e = u.entries();
    const auto n = e.rows();
    const double ortho = max_abs(e * e.transpose() - Matrix::Identity(n, n));
    const double agree = max_abs(e - w.entries());

    CommandOutput out;
    out.table.columns = {"row", "m_row", "col", "m_col", "d"};
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) {
            out.table.rows.push_back(
                {static_cast<long long>(r), spin_sublevel(F, static_cast<std::size_t>(r)).value(),
                 static_cast<long long>(c), spin_sublevel(F, static_cast<std::size_t>(c)).value(),
                 e(r, c)});
        }
    }
    out.summary = {{"orthogonality_deviation", ortho}, {"wigner_formula_max_difference", agree}};
    out.message = "max |U U^T - I| = " + fmt(ortho) + ", factorial-sum agreement " + fmt(agree);
    return out;
}

// osrs -----------------------------------------------------------------------

CommandOutput run_osrs(const json& cfg, std::size_t) {
    const double N = cfg.at("N").get<double>();
    const auto grid = cfg.at("chi_grid").get<std::size_t>();
    const auto curve_points = cfg.at("curve_points").get<std::size_t>();

    CommandOutput out;
    out.table.columns = {"F", "m_i", "chi", "variance"};
    Table curves{{"F", "m_i", "chi", "variance"}, {}};
    json per_f = json::array();
    for (const auto& f_json : cfg.at("F")) {
        const HalfInteger F = half_integer(f_json);
        if (F.twice() < 1) {
            throw ConfigError("every F must be at least 1/2", "F");
        }
        const HalfInteger m0 = cfg.contains("m_0") ? half_integer(cfg.at("m_0")) : default_reference(F);
        const OsrsOptimum opt = osrs_optimize(F, m0, grid);
        const auto D = static_cast<std::size_t>(F.twice());
        out.table.rows.push_back({F.value(), opt.initial_m.value(), opt.chi, opt.variance / N});
        per_f.push_back({{"F", F.value()},
                         {"m_0", m0.value()},
                         {"chi_over_pi", opt.chi / kPi},
                         {"variance", opt.variance / N},
                         {"var_opt_theta", qcrb_theta_opt(D, N)},
                         {"var_ind", qcrb_individual(D, N)}});
        for (std::size_t j = 1; j <= curve_points; ++j) {
            const double chi = kPi * static_cast<double>(j) / static_cast<double>(curve_points + 1);
            for (int a = F.twice(); a >= 0; --a) {
                const HalfInteger mi = spin_sublevel(F, static_cast<std::size_t>(a));
                double v = std::numeric_limits<double>::infinity();
                try {
                    v = osrs_variance({F, chi, mi, m0}, N);
                } catch (const ZeroAmplitude&) {
                }
                curves.rows.push_back({F.value(), mi.value(), chi, v});
            }
        }
    }
    if (curve_points > 0) {
        out.extra.emplace_back("curves", std::move(curves));
    }
    out.summary = {{"optima", per_f}};
    out.message = std::to_string(out.table.rows.size()) + " OSRS optima";
    return out;
}

void check_osrs(const json& cfg) {
    require_positive(cfg, "N");
    if (cfg.at("chi_grid").get<std::size_t>() < 3) {
        throw ConfigError("must be at least 3", "chi_grid");
    }
}

// cfim -----------------------------------------------------------------------

CommandOutput run_cfim(const json& cfg, std::size_t) {
    const RamseyProtocol proto = spin_ramsey_protocol(spin_spec(cfg));
    const Vector theta = to_vector(cfg.at("theta"));
    const double N = cfg.at("N").get<double>();
    const FisherMatrix fc = cfim(proto, theta, N, cfg.at("floor").get<double>());
    const FisherMatrix fq = qfim_pure(proto.probe(), proto.map(), N);
    const double tc = qcrb_total_variance(fc);
    const double tq = qcrb_total_variance(fq);
    const double ref = qcrb_individual(proto.parameters(), N);

    CommandOutput out;
    out.table.columns = {"i", "j", "cfim", "qfim"};
    const auto n = fc.entries().rows();
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            out.table.rows.push_back({static_cast<long long>(i + 1), static_cast<long long>(j + 1),
                                      fc.entries()(i, j), fq.entries()(i, j)});
        }
    }
    out.summary = {{"trace_inverse_cfim", tc},
                   {"trace_inverse_qfim", tq},
                   {"zeta_db_cfim", zeta_db(tc, ref)},
                   {"zeta_db_qfim", zeta_db(tq, ref)},
                   {"var_ind", ref}};
    out.message = "Tr[F_C^-1] = " + fmt(tc) + ", zeta = " + fmt(zeta_db(tc, ref)) + " dB";
    return out;
}

void check_theta_length(const json& cfg, const std::string& key) {
    const auto D = static_cast<std::size_t>(half_integer(cfg.at("F")).twice());
    if (cfg.at(key).size() != D) {
        throw ConfigError("needs " + std::to_string(D) + " angles for F = " +
                              half_integer(cfg.at("F")).to_string(),
                          key);
    }
}

void check_cfim(const json& cfg) {
    require_positive(cfg, "N");
    check_theta_length(cfg, "theta");
}

// simulate -------------------------------------------------------------------

CommandOutput run_simulate(const json& cfg, std::size_t threads) {
    const RamseyProtocol proto = spin_ramsey_protocol(spin_spec(cfg));
    ExperimentConfig exp{proto,
                         to_vector(cfg.at("truth")),
                         detection_model(cfg),
                         cfg.at("runs").get<std::size_t>(),
                         cfg.at("seed").get<std::uint64_t>(),
                         mle_config(cfg)};
    const VarianceEstimate est = run_monte_carlo(exp, threads);

    CommandOutput out;
    out.table.columns.push_back("run");
    for (std::size_t k = 0; k < proto.parameters(); ++k) {
        out.table.columns.push_back("theta" + std::to_string(k + 1) + "_hat");
    }
    out.table.columns.push_back("sq_err_total");
    for (std::size_t i = 0; i < est.runs.size(); ++i) {
        std::vector<Cell> row{static_cast<long long>(i)};
        for (Eigen::Index k = 0; k < est.runs[i].estimate.size(); ++k) {
            row.emplace_back(est.runs[i].estimate(k));
        }
        row.emplace_back(est.runs[i].sq_err_total);
        out.table.rows.push_back(std::move(row));
    }
    double crb = std::numeric_limits<double>::infinity();
    try {
        crb = qcrb_total_variance(cfim(proto, exp.truth, static_cast<double>(exp.detection.atom_count)));
    } catch (const SingularFisherMatrix&) {
    }
    out.summary = {{"total_variance", est.total_variance},
                   {"per_parameter", est.per_parameter},
                   {"mean_estimate", est.mean_estimate},
                   {"zeta_db", nullable(est.zeta_db)},
                   {"standard_error", est.standard_error},
                   {"cfim_bound", nullable(crb)},
                   {"var_ind", qcrb_individual(proto.parameters(),
                                               static_cast<double>(exp.detection.atom_count))}};
    out.message = "(dtheta)^2 = " + fmt(est.total_variance) + " +/- " + fmt(est.standard_error) +
                  ", zeta = " + fmt(est.zeta_db) + " dB";
    return out;
}

void check_simulate(const json& cfg) {
    require(cfg, "seed");
    check_theta_length(cfg, "truth");
    if (cfg.at("runs").get<std::size_t>() < 1) {
        throw ConfigError("must be at least 1", "runs");
    }
    if (cfg.at("atoms").get<std::uint64_t>() < 1) {
        throw ConfigError("must be at least 1", "atoms");
    }
    if (cfg.at("sigma").get<double>() < 0.0) {
        throw ConfigError("must be non-negative", "sigma");
    }
}

// sweep ----------------------------------------------------------------------

AxisSpec axis(const json& g) {
    return {g.at("start").get<double>(), g.at("stop").get<double>(), g.at("count").get<std::size_t>()};
}

CommandOutput run_sweep(const json& cfg, std::size_t threads) {
    const RamseyProtocol proto = spin_ramsey_protocol(spin_spec(cfg));
    SweepConfig sweep;
    sweep.axis1 = axis(cfg.at("grid1"));
    sweep.axis2 = axis(cfg.at("grid2"));
    sweep.mode = cfg.at("mode") == "cfim" ? SweepMode::cfim_noiseless : SweepMode::monte_carlo;
    sweep.detection = detection_model(cfg);
    sweep.runs = cfg.at("runs").get<std::size_t>();
    sweep.seed = cfg.contains("seed") ? cfg.at("seed").get<std::uint64_t>() : 0;
    sweep.mle = mle_config(cfg);
    const ZetaGrid grid = sweep_zeta_grid(proto, sweep, threads);

    CommandOutput out;
    out.table.columns = {"theta1", "theta2", "zeta_db"};
    double best = -std::numeric_limits<double>::infinity();
    json best_at = nullptr;
    long long positive = 0;
    for (std::size_t i = 0; i < grid.theta1.size(); ++i) {
        for (std::size_t j = 0; j < grid.theta2.size(); ++j) {
            const double z = grid.zeta(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            out.table.rows.push_back({grid.theta1[i], grid.theta2[j], z});
            if (z > best) {
                best = z;
                best_at = json::array({grid.theta1[i], grid.theta2[j]});
            }
            positive += z > 0.0 ? 1 : 0;
        }
    }
    out.summary = {{"max_zeta_db", nullable(best)},
                   {"max_at", best_at},
                   {"positive_points", positive}};
    out.message = std::to_string(out.table.rows.size()) + " grid points, max zeta " + fmt(best) + " dB";
    return out;
}

void check_sweep(const json& cfg) {
    if (cfg.at("mode") == "monte-carlo") {
        if (!cfg.contains("seed")) {
            throw ConfigError("required in monte-carlo mode", "seed");
        }
        if (cfg.at("runs").get<std::size_t>() < 1) {
            throw ConfigError("must be at least 1", "runs");
        }
    }
    if (half_integer(cfg.at("F")).twice() != 2) {
        throw ConfigError("zeta grids need a two-parameter protocol (F = 1)", "F");
    }
}

std::vector<CommandSpec> build_specs() {
    std::vector<CommandSpec> specs;

    specs.push_back({"bounds", "", "Closed-form total-variance bounds",
                     {
                         {"D", ValueType::int_list, std::nullopt, {}, "parameters, e.g. 2 or 1..10"},
                         {"N", ValueType::real, json(1.0), {}, "particle number"},
                         {"scheme", ValueType::choice, json("all"),
                          {"all", "simultaneous-opt", "individual", "indirect-jacobian", "osrs"},
                          "which bound to tabulate"},
                     },
                     check_bounds, run_bounds});

    specs.push_back({"probe", "", "Optimal probe populations",
                     {
                         {"D", ValueType::integer, std::nullopt, {}, "number of parameters"},
                         {"N", ValueType::real, json(1.0), {}, "particle number"},
                         {"parametrization", ValueType::choice, json("theta-ref"),
                          {"theta-ref", "phi-neighbor", "custom"}, "parameter map"},
                         {"method", ValueType::choice, json("closed-form"),
                          {"closed-form", "numeric"}, "closed form or numerical optimization"},
                         {"jacobian", ValueType::matrix, std::nullopt, {}, "(D+1) x D map for custom"},
                         {"seed", ValueType::unsigned_int, json(0), {}, "numeric start perturbation"},
                         {"max_iterations", ValueType::unsigned_int, json(100000), {}, "optimizer cap"},
                     },
                     check_probe, run_probe});

    specs.push_back({"synth", "cascade", "Beam-splitter cascade for a probe",
                     {
                         {"probe", ValueType::choice, json("optimal-theta"),
                          {"optimal-theta", "optimal-phi", "uniform", "custom"}, "target probe"},
                         {"D", ValueType::integer, std::nullopt, {}, "number of parameters"},
                         {"populations", ValueType::real_list, std::nullopt, {}, "custom target"},
                     },
                     check_synth_cascade, run_synth_cascade});

    specs.push_back({"synth", "spin", "Spin rotation matrix exp(-i F_y chi)",
                     {
                         {"F", ValueType::half_integer, json(1.0), {}, "spin"},
                         {"chi", ValueType::angle, pi_times(0.2774), {}, "rotation angle"},
                     },
                     [](const json&) {}, run_synth_spin});

    specs.push_back({"osrs", "", "One-step-rotation bounds minimized over chi and m_i",
                     {
                         {"F", ValueType::half_int_list, json::array({1.0, 2.0, 3.0, 4.0, 5.0}), {},
                          "spins, e.g. 1..5"},
                         {"m_0", ValueType::half_integer, std::nullopt, {},
                          "reference sublevel (default 0, or 1/2 for half-integer F)"},
                         {"N", ValueType::real, json(1.0), {}, "particle number"},
                         {"chi_grid", ValueType::unsigned_int, json(2001), {}, "chi scan points"},
                         {"curve_points", ValueType::unsigned_int, json(0), {},
                          "also write variance(chi) curves with this many points"},
                     },
                     check_osrs, run_osrs});

    specs.push_back({"cfim", "", "Classical and quantum Fisher matrices of the spin protocol",
                     concat({protocol_keys(),
                             {
                                 {"theta", ValueType::angle_list, json::array({0.3 * kPi, 0.3 * kPi}),
                                  {}, "phases"},
                                 {"N", ValueType::real, json(10000.0), {}, "particle number"},
                                 {"floor", ValueType::real, json(1e-12), {}, "probability floor"},
                             }}),
                     check_cfim, run_cfim});

    specs.push_back({"simulate", "", "Monte-Carlo maximum-likelihood experiment",
                     concat({protocol_keys(), detection_keys(), mle_keys(),
                             {
                                 {"truth", ValueType::angle_list, json::array({0.3 * kPi, 0.3 * kPi}),
                                  {}, "true phases"},
                                 {"seed", ValueType::unsigned_int, std::nullopt, {}, "master seed"},
                             }}),
                     check_simulate, run_simulate});

    specs.push_back({"sweep", "", "zeta over a grid of true phases",
                     concat({protocol_keys(), detection_keys(), mle_keys(),
                             {
                                 {"mode", ValueType::choice, json("cfim"), {"cfim", "monte-carlo"},
                                  "noiseless CFIM bound or Monte Carlo"},
                                 {"grid1", ValueType::grid, parse_grid("0:pi:101"), {},
                                  "theta1 axis start:stop:count"},
                                 {"grid2", ValueType::grid, parse_grid("0:pi:101"), {},
                                  "theta2 axis start:stop:count"},
                                 {"seed", ValueType::unsigned_int, std::nullopt, {}, "master seed"},
                             }}),
                     check_sweep, run_sweep});
    return specs;
}

}  // namespace

const std::vector<CommandSpec>& command_specs() {
    static const std::vector<CommandSpec> specs = build_specs();
    return specs;
}

}  // namespace ramsey::cli
