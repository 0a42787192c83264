#include "ramsey/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ramsey/optimize.hpp"
#include "ramsey/parallel.hpp"
#include "ramsey/rng.hpp"

namespace ramsey {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kMaxSurfaceEntries = 50'000'000;

void require_positive_N(double N) {
    if (!(N > 0.0)) {
        throw InvalidArgument("particle number must be positive");
    }
}

}  // namespace

// OSRS -----------------------------------------------------------------------

ProbeState osrs_probe(const SpinRotationSpec& spec) {
    const OrthogonalMatrix u = spin_rotation(spec);
    const auto col = static_cast<Eigen::Index>(spin_mode_index(spec.F, spec.initial_m));
    return ProbeState(u.entries().col(col).cast<Complex>());
}

double osrs_variance(const SpinRotationSpec& spec, double N) {
    require_positive_N(N);
    const ProbeState probe = osrs_probe(spec);
    return variance_bound_theta(probe, N, spin_mode_index(spec.F, spec.reference_m));
}

double osrs_variance_closed_form(const SpinRotationSpec& spec, double N) {
    require_positive_N(N);
    const Matrix d = spin_rotation(spec).entries();
    const int two_f = spec.F.twice();
    const auto i = static_cast<Eigen::Index>(spin_mode_index(spec.F, spec.initial_m));
    const auto r = static_cast<Eigen::Index>(spin_mode_index(spec.F, spec.reference_m));
    // d_{m_0, m_i} and d_{m_i, m} = (-1)^(m_i - m) d_{m, m_i}; only squares enter.
    const double d_ref = d(r, i) * d(r, i);
    if (d_ref < 1e-15) {
        throw ZeroAmplitude(static_cast<std::size_t>(r), d_ref);
    }
    double sum = (two_f - 1) / d_ref;
    for (Eigen::Index a = 0; a <= two_f; ++a) {
        const double p = d(i, a) * d(i, a);
        if (p < 1e-15) {
            throw ZeroAmplitude(static_cast<std::size_t>(a), p);
        }
        sum += 1.0 / p;
    }
    return sum / (4.0 * N);
}

OsrsOptimum osrs_optimize(HalfInteger F, HalfInteger reference_m, std::size_t chi_grid) {
    if (chi_grid < 3) {
        throw InvalidArgument("chi grid needs at least 3 points");
    }
    SpinRotationSpec probe_spec{F, 0.0, reference_m, reference_m};
    probe_spec.validate();

    std::vector<OsrsOptimum> candidates;
    const double step = std::numbers::pi / static_cast<double>(chi_grid + 1);
    for (int a = F.twice(); a >= 0; --a) {  // m_i ascending
        const HalfInteger m_i = spin_sublevel(F, static_cast<std::size_t>(a));
        auto f = [&](double chi) {
            try {
                return osrs_variance({F, chi, m_i, reference_m}, 1.0);
            } catch (const ZeroAmplitude&) {
                return kInf;
            }
        };
        std::vector<double> values(chi_grid + 2, kInf);
        for (std::size_t j = 1; j <= chi_grid; ++j) {
            values[j] = f(static_cast<double>(j) * step);
        }
        for (std::size_t j = 1; j <= chi_grid; ++j) {
            if (std::isfinite(values[j]) && values[j] <= values[j - 1] &&
                values[j] <= values[j + 1]) {
                const auto best = optim::golden_section(f, static_cast<double>(j - 1) * step,
                                                        static_cast<double>(j + 1) * step);
                const bool refined = best.value < values[j];
                candidates.push_back({refined ? best.x : static_cast<double>(j) * step, m_i,
                                      refined ? best.value : values[j]});
            }
        }
    }
    if (candidates.empty()) {
        throw InvalidArgument("no populated OSRS probe on the chi grid");
    }
    double best_value = kInf;
    for (const auto& c : candidates) {
        best_value = std::min(best_value, c.variance);
    }
    const double tol = 1e-9 * best_value;
    const OsrsOptimum* pick = nullptr;
    for (const auto& c : candidates) {
        if (c.variance > best_value + tol) {
            continue;
        }
        if (pick == nullptr || c.chi < pick->chi - 1e-9 ||
            (std::abs(c.chi - pick->chi) <= 1e-9 && c.initial_m < pick->initial_m)) {
            pick = &c;
        }
    }
    return *pick;
}

BoundReport osrs_report(HalfInteger F, HalfInteger reference_m, double N) {
    require_positive_N(N);
    const OsrsOptimum opt = osrs_optimize(F, reference_m);
    return {BoundScheme::osrs, static_cast<std::size_t>(F.twice()), N, opt.variance / N};
}

RamseyProtocol spin_ramsey_protocol(const SpinRotationSpec& spec) {
    const OrthogonalMatrix u = spin_rotation(spec);
    return RamseyProtocol::ramsey(
        u, spin_mode_index(spec.F, spec.initial_m),
        make_reference_parametrization(spec.dim(), spin_mode_index(spec.F, spec.reference_m)));
}

// Configuration --------------------------------------------------------------

void DetectionModel::validate() const {
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
        throw InvalidArgument("detection noise sigma must be a non-negative number");
    }
    if (atom_count == 0) {
        throw InvalidArgument("atom count must be positive");
    }
}

void MleConfig::validate(std::size_t parameters) const {
    if (grid_points < 2) {
        throw InvalidArgument("MLE grid needs at least 2 points per axis");
    }
    if (refine_iters == 0) {
        throw InvalidArgument("refine_iters must be positive");
    }
    if (!domain.empty() && domain.size() != parameters) {
        throw InvalidArgument("MLE domain must give one interval per parameter");
    }
    for (const auto& iv : domain) {
        if (!(iv.lo < iv.hi) || !std::isfinite(iv.lo) || !std::isfinite(iv.hi)) {
            throw InvalidArgument("MLE domain intervals must satisfy lo < hi");
        }
    }
    if (!(prob_floor > 0.0)) {
        throw InvalidArgument("prob_floor must be positive");
    }
}

Interval MleConfig::axis(std::size_t k) const {
    if (domain.empty()) {
        return {0.0, std::numbers::pi};
    }
    return domain.at(k);
}

// Sampling -------------------------------------------------------------------

std::vector<std::int64_t> sample_counts(const ProbabilityVector& probs, std::uint64_t atom_count,
                                        std::mt19937_64& rng) {
    const std::size_t modes = probs.size();
    std::vector<std::int64_t> counts(modes, 0);
    auto remaining = static_cast<std::int64_t>(atom_count);
    double mass = 1.0;
    for (std::size_t m = 0; m + 1 < modes && remaining > 0; ++m) {
        const double p = std::max(probs[m], 0.0);
        const double q = mass > 0.0 ? std::clamp(p / mass, 0.0, 1.0) : 1.0;
        std::binomial_distribution<std::int64_t> binom(remaining, q);
        counts[m] = binom(rng);
        remaining -= counts[m];
        mass -= p;
    }
    counts[modes - 1] += remaining;
    return counts;
}

std::vector<double> apply_detection_noise(std::span<const std::int64_t> counts, double sigma,
                                          std::mt19937_64& rng) {
    std::vector<double> noisy(counts.begin(), counts.end());
    if (sigma > 0.0) {
        std::normal_distribution<double> normal(0.0, sigma);
        for (double& n : noisy) {
            n += normal(rng);
        }
    }
    return noisy;
}

// Likelihood -----------------------------------------------------------------

LikelihoodSurface::LikelihoodSurface(const RamseyProtocol& protocol, const MleConfig& cfg)
    : protocol_(&protocol), cfg_(cfg) {
    const std::size_t D = protocol.parameters();
    cfg_.validate(D);
    for (std::size_t k = 0; k < D; ++k) {
        axes_.push_back(cfg_.axis(k));
    }
    std::size_t points = 1;
    for (std::size_t k = 0; k < D; ++k) {
        if (points > kMaxSurfaceEntries / cfg_.grid_points) {
            throw InvalidArgument("MLE grid too large for " + std::to_string(D) + " parameters");
        }
        points *= cfg_.grid_points;
    }
    if (points * (D + 1) > kMaxSurfaceEntries) {
        throw InvalidArgument("MLE grid too large for " + std::to_string(D) + " parameters");
    }
    log_p_.resize(static_cast<Eigen::Index>(points), static_cast<Eigen::Index>(D + 1));
    for (std::size_t g = 0; g < points; ++g) {
        const Vector p = output_probabilities(protocol, grid_point(g)).values();
        for (Eigen::Index m = 0; m < p.size(); ++m) {
            log_p_(static_cast<Eigen::Index>(g), m) = std::log(std::max(p(m), cfg_.prob_floor));
        }
    }
}

Vector LikelihoodSurface::grid_point(std::size_t index) const {
    const auto D = axes_.size();
    Vector theta(static_cast<Eigen::Index>(D));
    const double last = static_cast<double>(cfg_.grid_points - 1);
    for (std::size_t k = D; k-- > 0;) {
        const std::size_t i = index % cfg_.grid_points;
        index /= cfg_.grid_points;
        const Interval iv = axes_[k];
        theta(static_cast<Eigen::Index>(k)) =
            iv.lo + (iv.hi - iv.lo) * static_cast<double>(i) / last;
    }
    return theta;
}

Vector LikelihoodSurface::estimate(std::span<const double> noisy_counts) const {
    const auto modes = static_cast<std::size_t>(log_p_.cols());
    if (noisy_counts.size() != modes) {
        throw InvalidArgument("count vector has " + std::to_string(noisy_counts.size()) +
                              " modes, protocol has " + std::to_string(modes));
    }
    Vector w(static_cast<Eigen::Index>(modes));
    for (std::size_t m = 0; m < modes; ++m) {
        w(static_cast<Eigen::Index>(m)) = std::max(noisy_counts[m], 0.0);
    }
    if (!(w.sum() > 0.0)) {
        throw DegenerateLikelihood();
    }

    const Vector scores = log_p_ * w;
    Eigen::Index best = 0;
    scores.maxCoeff(&best);

    auto clamp_to_domain = [&](const Vector& x) {
        Vector c = x;
        for (Eigen::Index k = 0; k < c.size(); ++k) {
            const Interval iv = axes_[static_cast<std::size_t>(k)];
            c(k) = std::clamp(c(k), iv.lo, iv.hi);
        }
        return c;
    };
    auto negative_log_likelihood = [&](const Vector& x) {
        const Vector p = output_probabilities(*protocol_, clamp_to_domain(x)).values();
        double total = 0.0;
        for (Eigen::Index m = 0; m < p.size(); ++m) {
            total += w(m) * std::log(std::max(p(m), cfg_.prob_floor));
        }
        return -total;
    };

    optim::NelderMeadOptions opts;
    opts.max_iterations = cfg_.refine_iters;
    opts.diameter_tolerance = cfg_.refine_tolerance;
    opts.initial_step = 0.5 * (axes_[0].hi - axes_[0].lo) / static_cast<double>(cfg_.grid_points - 1);
    const auto result =
        optim::nelder_mead(negative_log_likelihood, grid_point(static_cast<std::size_t>(best)), opts);
    return clamp_to_domain(result.x);
}

Vector mle_estimate(std::span<const double> noisy_counts, const RamseyProtocol& protocol,
                    const MleConfig& cfg) {
    return LikelihoodSurface(protocol, cfg).estimate(noisy_counts);
}

double zeta_db(double variance, double reference_variance) {
    if (!(variance > 0.0) || !(reference_variance > 0.0)) {
        throw InvalidArgument("zeta needs positive variances");
    }
    return 0.0 - 10.0 * std::log10(variance / reference_variance);
}

// Monte Carlo ----------------------------------------------------------------

namespace {

void validate_experiment(const ExperimentConfig& cfg) {
    cfg.detection.validate();
    if (cfg.runs < 1) {
        throw InvalidArgument("runs must be at least 1");
    }
    if (static_cast<std::size_t>(cfg.truth.size()) != cfg.protocol.parameters()) {
        throw InvalidArgument("truth has the wrong number of parameters");
    }
    if (!cfg.truth.allFinite()) {
        throw InvalidArgument("truth must be finite");
    }
}

VarianceEstimate run_with_surface(const ExperimentConfig& cfg, const LikelihoodSurface& surface,
                                  std::size_t threads) {
    const ProbabilityVector probs = output_probabilities(cfg.protocol, cfg.truth);
    const auto D = static_cast<std::size_t>(cfg.truth.size());
    std::vector<RunResult> runs(cfg.runs);

    parallel_for(cfg.runs, threads, [&](std::size_t i) {
        std::uint64_t atoms = cfg.detection.atom_count;
        if (cfg.detection.poisson_atoms) {
            auto gen = stream(cfg.seed, i, RngStage::atoms);
            std::poisson_distribution<std::uint64_t> poisson(
                static_cast<double>(cfg.detection.atom_count));
            atoms = poisson(gen);
        }
        auto multinomial = stream(cfg.seed, i, RngStage::multinomial);
        auto noise = stream(cfg.seed, i, RngStage::noise);
        RunResult r;
        r.atoms = atoms;
        r.counts = sample_counts(probs, atoms, multinomial);
        r.noisy_counts = apply_detection_noise(r.counts, cfg.detection.sigma, noise);
        try {
            r.estimate = surface.estimate(r.noisy_counts);
        } catch (const DegenerateLikelihood&) {
            throw DegenerateLikelihood(i);
        }
        r.sq_err_total = (r.estimate - cfg.truth).squaredNorm();
        runs[i] = std::move(r);
    });

    VarianceEstimate out;
    out.per_parameter.assign(D, 0.0);
    out.mean_estimate.assign(D, 0.0);
    double sum_sq = 0.0;
    for (const auto& r : runs) {
        for (std::size_t k = 0; k < D; ++k) {
            const auto idx = static_cast<Eigen::Index>(k);
            const double err = r.estimate(idx) - cfg.truth(idx);
            out.per_parameter[k] += err * err;
            out.mean_estimate[k] += r.estimate(idx);
        }
        sum_sq += r.sq_err_total;
    }
    const auto n = static_cast<double>(cfg.runs);
    out.total_variance = 0.0;
    for (std::size_t k = 0; k < D; ++k) {
        out.per_parameter[k] /= n;
        out.mean_estimate[k] /= n;
        out.total_variance += out.per_parameter[k];
    }
    double spread = 0.0;
    const double mean_sq = sum_sq / n;
    for (const auto& r : runs) {
        spread += (r.sq_err_total - mean_sq) * (r.sq_err_total - mean_sq);
    }
    out.standard_error = cfg.runs > 1 ? std::sqrt(spread / (n - 1.0) / n) : 0.0;
    const double reference =
        qcrb_individual(D, static_cast<double>(cfg.detection.atom_count));
    out.zeta_db = out.total_variance > 0.0 ? zeta_db(out.total_variance, reference) : kInf;
    out.runs = std::move(runs);
    return out;
}

}  // namespace

VarianceEstimate run_monte_carlo(const ExperimentConfig& cfg, std::size_t threads) {
    validate_experiment(cfg);
    const LikelihoodSurface surface(cfg.protocol, cfg.mle);
    return run_with_surface(cfg, surface, threads);
}

// Sweeps ---------------------------------------------------------------------

std::vector<double> AxisSpec::values() const {
    if (count < 1) {
        throw InvalidArgument("axis needs at least one sample");
    }
    if (!std::isfinite(start) || !std::isfinite(stop)) {
        throw InvalidArgument("axis bounds must be finite");
    }
    std::vector<double> v(count);
    if (count == 1) {
        v[0] = start;
        return v;
    }
    const double last = static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) {
        v[i] = start + (stop - start) * static_cast<double>(i) / last;
    }
    return v;
}

ZetaGrid sweep_zeta_grid(const RamseyProtocol& protocol, const SweepConfig& cfg,
                         std::size_t threads) {
    if (protocol.parameters() != 2) {
        throw InvalidArgument("zeta grids are defined for two-parameter protocols");
    }
    cfg.detection.validate();
    ZetaGrid grid;
    grid.theta1 = cfg.axis1.values();
    grid.theta2 = cfg.axis2.values();
    const std::size_t n1 = grid.theta1.size();
    const std::size_t n2 = grid.theta2.size();
    grid.zeta.resize(static_cast<Eigen::Index>(n1), static_cast<Eigen::Index>(n2));
    const double atoms = static_cast<double>(cfg.detection.atom_count);
    const double reference = qcrb_individual(2, atoms);

    auto theta_at = [&](std::size_t point) {
        Vector theta(2);
        theta << grid.theta1[point / n2], grid.theta2[point % n2];
        return theta;
    };
    auto store = [&](std::size_t point, double z) {
        grid.zeta(static_cast<Eigen::Index>(point / n2), static_cast<Eigen::Index>(point % n2)) = z;
    };

    if (cfg.mode == SweepMode::cfim_noiseless) {
        parallel_for(n1 * n2, threads, [&](std::size_t point) {
            double z = -kInf;
            try {
                const double var = qcrb_total_variance(cfim(protocol, theta_at(point), atoms));
                z = zeta_db(var, reference);
            } catch (const SingularFisherMatrix&) {
            }
            store(point, z);
        });
        return grid;
    }

    const LikelihoodSurface surface(protocol, cfg.mle);
    for (std::size_t point = 0; point < n1 * n2; ++point) {
        ExperimentConfig exp{protocol, theta_at(point), cfg.detection, cfg.runs,
                             stream_seed(cfg.seed, point, RngStage::grid_point), cfg.mle};
        validate_experiment(exp);
        double z = -kInf;
        try {
            z = run_with_surface(exp, surface, threads).zeta_db;
        } catch (const DegenerateLikelihood&) {
        }
        store(point, z);
    }
    return grid;
}

}  // namespace ramsey
