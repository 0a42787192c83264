#pragma once

#include <cstddef>

#include "ramsey/core.hpp"

namespace ramsey {

/// Output-port probabilities p(m|Theta) over D+1 modes.
class ProbabilityVector {
public:
    explicit ProbabilityVector(Vector probs);

    const Vector& values() const noexcept { return probs_; }
    double operator[](std::size_t m) const { return probs_(static_cast<Eigen::Index>(m)); }
    std::size_t size() const noexcept { return static_cast<std::size_t>(probs_.size()); }

private:
    Vector probs_;
};

/// Split, accumulate phases, recombine, count. The splitter and combiner are
/// stored independently; `ramsey()` builds the orthogonal case U_2 = U_1^T.
class RamseyProtocol {
public:
    RamseyProtocol(ComplexMatrix splitter, ComplexMatrix combiner, std::size_t input_mode,
                   ParametrizationMap map);

    static RamseyProtocol ramsey(const OrthogonalMatrix& splitter, std::size_t input_mode,
                                 ParametrizationMap map);

    const ComplexMatrix& splitter() const noexcept { return splitter_; }
    const ComplexMatrix& combiner() const noexcept { return combiner_; }
    std::size_t input_mode() const noexcept { return input_mode_; }
    const ParametrizationMap& map() const noexcept { return map_; }
    std::size_t modes() const noexcept { return map_.modes(); }
    std::size_t parameters() const noexcept { return map_.parameters(); }

    /// U_1 |i>, the probe state entering phase accumulation.
    ProbeState probe() const;

private:
    ComplexMatrix splitter_;
    ComplexMatrix combiner_;
    std::size_t input_mode_;
    ParametrizationMap map_;
    ComplexVector probe_;
};

/// Pure-state QFIM, 4N [J^T diag(p) J - (J^T p)(J^T p)^T] with p = |alpha|^2.
FisherMatrix qfim_pure(const ProbeState& probe, const ParametrizationMap& map, double N);

/// QFIM of a Poissonian mixture of unentangled product states with mean
/// particle number mean_N: exactly mean_N times the single-particle QFIM.
FisherMatrix qfim_poisson(const ProbeState& probe, const ParametrizationMap& map, double mean_N);

/// Tr[F^-1]. Throws SingularFisherMatrix when F is not positive definite or
/// its condition number reaches 1e12.
double qcrb_total_variance(const FisherMatrix& F);

/// 2-norm condition number of a symmetric matrix (infinity if not PD).
double condition_number(const Matrix& symmetric);

ProbabilityVector output_probabilities(const RamseyProtocol& proto, const Vector& theta);

/// dp(m|Theta)/dTheta_l by the chain rule through the phase factors.
Matrix probability_jacobian(const RamseyProtocol& proto, const Vector& theta);

/// Classical Fisher information N sum_m (dp_m)(dp_m)^T / p_m. Modes with
/// p_m < floor are dropped when their whole derivative row is below
/// sqrt(floor); otherwise p_m is clamped up to floor.
FisherMatrix cfim(const RamseyProtocol& proto, const Vector& theta, double N,
                  double floor = 1e-12);

/// Second-order expansion of p(m|Theta) around Theta = 0 for U_2 = U_1^dagger.
ProbabilityVector taylor_probabilities(const RamseyProtocol& proto, const Vector& theta);

}  // namespace ramsey
