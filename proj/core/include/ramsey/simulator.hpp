#pragma once

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "ramsey/fisher.hpp"
#include "ramsey/probe_design.hpp"
#include "ramsey/synthesis.hpp"

namespace ramsey {

// OSRS -----------------------------------------------------------------------

/// Probe U|F, m_i> for U = exp(-i F_y chi); populations |d^F_{m, m_i}(chi)|^2.
ProbeState osrs_probe(const SpinRotationSpec& spec);

/// Total theta-variance bound of the OSRS probe with reference sublevel m_0.
/// Throws ZeroAmplitude when a sublevel is unpopulated.
double osrs_variance(const SpinRotationSpec& spec, double N);

/// (1/4N) [ (2F-1)/|d_{m_0,m_i}|^2 + sum_m 1/|d_{m_i,m}|^2 ], written directly
/// in d-matrix elements.
double osrs_variance_closed_form(const SpinRotationSpec& spec, double N);

struct OsrsOptimum {
    double chi;
    HalfInteger initial_m;
    double variance;  // at N = 1
};

/// Minimum over chi in (0, pi) and over every initial sublevel. Each local
/// minimum of the chi grid is refined by golden-section search. Ties go to
/// the smaller chi, then the smaller m_i.
OsrsOptimum osrs_optimize(HalfInteger F, HalfInteger reference_m, std::size_t chi_grid = 2001);

BoundReport osrs_report(HalfInteger F, HalfInteger reference_m, double N);

/// Ramsey protocol with U_1 = exp(-i F_y chi), U_2 = U_1^T, input |F, m_i> and
/// theta_k the phase of each sublevel relative to |F, m_0>.
RamseyProtocol spin_ramsey_protocol(const SpinRotationSpec& spec);

// Monte Carlo ----------------------------------------------------------------

struct DetectionModel {
    double sigma = 0.0;             // atoms
    std::uint64_t atom_count = 10000;
    /// Draw the atom number of each run from a Poisson law with mean atom_count.
    bool poisson_atoms = false;

    void validate() const;
};

struct Interval {
    double lo;
    double hi;
};

struct MleConfig {
    std::size_t grid_points = 101;
    /// One interval per parameter; empty means [0, pi] for every parameter.
    std::vector<Interval> domain;
    std::size_t refine_iters = 200;
    double refine_tolerance = 1e-6;
    double prob_floor = 1e-12;

    void validate(std::size_t parameters) const;
    Interval axis(std::size_t k) const;
};

struct ExperimentConfig {
    RamseyProtocol protocol;
    Vector truth;
    DetectionModel detection;
    std::size_t runs = 1000;
    std::uint64_t seed = 0;
    MleConfig mle;
};

struct RunResult {
    std::uint64_t atoms;
    std::vector<std::int64_t> counts;
    std::vector<double> noisy_counts;  // unrounded, unclamped
    Vector estimate;
    double sq_err_total;
};

struct VarianceEstimate {
    double total_variance;              // rad^2, mean squared error about the truth
    std::vector<double> per_parameter;
    std::vector<double> mean_estimate;
    double zeta_db;
    /// Standard error of total_variance over the runs.
    double standard_error;
    std::vector<RunResult> runs;
};

/// Multinomial draw of atom_count atoms over the output ports.
std::vector<std::int64_t> sample_counts(const ProbabilityVector& probs, std::uint64_t atom_count,
                                        std::mt19937_64& rng);

/// Adds independent N(0, sigma^2) noise to each count.
std::vector<double> apply_detection_noise(std::span<const std::int64_t> counts, double sigma,
                                          std::mt19937_64& rng);

/// Log-probabilities of a protocol tabulated on the coarse MLE grid. Built
/// once per protocol and shared by every run.
class LikelihoodSurface {
public:
    LikelihoodSurface(const RamseyProtocol& protocol, const MleConfig& cfg);

    /// Maximizer of sum_m max(n_m, 0) log max(p_m, floor) over the domain.
    /// Throws DegenerateLikelihood if every weight is zero.
    Vector estimate(std::span<const double> noisy_counts) const;

    std::size_t grid_size() const noexcept { return static_cast<std::size_t>(log_p_.rows()); }
    Vector grid_point(std::size_t index) const;

private:
    const RamseyProtocol* protocol_;
    MleConfig cfg_;
    std::vector<Interval> axes_;
    Matrix log_p_;  // grid point x mode
};

Vector mle_estimate(std::span<const double> noisy_counts, const RamseyProtocol& protocol,
                    const MleConfig& cfg);

/// threads = 0 uses every hardware thread; the result does not depend on it.
VarianceEstimate run_monte_carlo(const ExperimentConfig& cfg, std::size_t threads = 0);

/// -10 log10(variance / reference_variance)
double zeta_db(double variance, double reference_variance);

// Sweeps ---------------------------------------------------------------------

/// count samples from start to stop inclusive.
struct AxisSpec {
    double start = 0.0;
    double stop = std::numbers::pi;
    std::size_t count = 101;

    std::vector<double> values() const;
};

enum class SweepMode { cfim_noiseless, monte_carlo };

struct SweepConfig {
    AxisSpec axis1;
    AxisSpec axis2;
    SweepMode mode = SweepMode::cfim_noiseless;
    DetectionModel detection;
    std::size_t runs = 1000;
    std::uint64_t seed = 0;
    MleConfig mle;
};

struct ZetaGrid {
    std::vector<double> theta1;
    std::vector<double> theta2;
    Matrix zeta;  // (theta1 index, theta2 index); -inf where the scheme is uninformative
};

/// zeta over a grid of true (theta_1, theta_2) for a two-parameter protocol.
ZetaGrid sweep_zeta_grid(const RamseyProtocol& protocol, const SweepConfig& cfg,
                         std::size_t threads = 0);

}  // namespace ramsey
