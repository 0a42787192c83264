#pragma once

#include <cstddef>
#include <cstdint>

#include "ramsey/core.hpp"

namespace ramsey {

enum class BoundScheme { simultaneous_opt, individual, indirect_jacobian, osrs, custom };

struct BoundReport {
    BoundScheme scheme;
    std::size_t D;
    double N;
    double total_variance;  // rad^2
};

/// Total theta-variance bound of a probe, with `reference_mode` the mode whose
/// phase every theta_k is measured against:
///   (1/N) [ D / (4 p_ref) + sum_{k != ref} 1 / (4 p_k) ].
/// Throws ZeroAmplitude if any population is below 1e-15.
double variance_bound_theta(const ProbeState& probe, double N, std::size_t reference_mode = 0);

/// Total variance bound for neighbouring-phase parameters,
///   (1/N) [ 1/(4 p_0) + 1/(4 p_D) + sum_{0<k<D} 1/(2 p_k) ].
double variance_bound_phi(const ProbeState& probe, double N);

/// |alpha_0|^2 = sqrt(D)/(D + sqrt(D)), |alpha_k|^2 = 1/(D + sqrt(D)).
ProbeState optimal_probe_theta(std::size_t D);

/// (D + sqrt(D))^2 / 4N
double qcrb_theta_opt(std::size_t D, double N);

/// D^2 / N: N/D particles per two-mode interferometer.
double qcrb_individual(std::size_t D, double N);

/// End modes 1/[sqrt(2)(D-1)+2], inner modes sqrt(2)/[sqrt(2)(D-1)+2].
ProbeState optimal_probe_phi(std::size_t D);

/// [sqrt(2)(D-1) + 2]^2 / 4N
double qcrb_phi_opt(std::size_t D, double N);

/// Bound on the neighbouring phases when theta is measured with the
/// theta-optimal probe and converted afterwards:
///   (1/4N) [ (1 + sqrt(D))^2 + 2 (D-1)(sqrt(D) + D) ].
double indirect_phi_bound(std::size_t D, double N);

/// General indirect-estimation bound Tr[J F^-1 J^T] for derived parameters
/// with jacobian J (rows: derived parameters, cols: measured parameters).
double indirect_bound(const Matrix& jacobian, const FisherMatrix& F);

/// Jacobian d(phi_k - phi_{k-1}) / d theta_l for theta_k = phi_k - phi_0.
Matrix neighbor_from_reference_jacobian(std::size_t D);

BoundReport bound_report(BoundScheme scheme, std::size_t D, double N);

struct ProbeOptimizerOptions {
    std::size_t max_iterations = 100000;
    std::size_t stall_window = 50;
    double stall_tolerance = 1e-12;
    /// 0 starts from the uniform distribution; any other value perturbs the
    /// start deterministically.
    std::uint64_t seed = 0;
};

/// Minimizes Tr[(F^Q)^-1] over the probability simplex for an arbitrary
/// full-rank map. Populations are parametrized as softmax weights and
/// optimized with BFGS. Throws NonConvergence with the best point so far.
ProbeState optimize_probe_numeric(const ParametrizationMap& map, std::size_t D,
                                  const ProbeOptimizerOptions& options = {});

}  // namespace ramsey
