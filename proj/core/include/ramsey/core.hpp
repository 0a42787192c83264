#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>

#include <Eigen/Dense>

#include "ramsey/errors.hpp"

namespace ramsey {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;

/// Single-particle state after the splitter: amplitudes alpha_0..alpha_D over
/// D+1 modes, normalized to 1 within 1e-12.
class ProbeState {
public:
    explicit ProbeState(ComplexVector amplitudes);

    /// Non-negative real amplitudes sqrt(p_k). Populations must sum to 1.
    static ProbeState from_populations(std::span<const double> populations);
    static ProbeState from_populations(const Vector& populations);

    const ComplexVector& amplitudes() const noexcept { return amplitudes_; }
    Vector populations() const;
    std::size_t modes() const noexcept { return static_cast<std::size_t>(amplitudes_.size()); }
    /// Number of estimable parameters, D = modes - 1.
    std::size_t parameters() const noexcept { return modes() - 1; }

private:
    ComplexVector amplitudes_;
};

/// Mode phases phi_0..phi_D in radians.
class PhaseVector {
public:
    explicit PhaseVector(Vector phases);

    const Vector& values() const noexcept { return phases_; }
    double operator[](std::size_t k) const { return phases_(static_cast<Eigen::Index>(k)); }
    std::size_t size() const noexcept { return static_cast<std::size_t>(phases_.size()); }

private:
    Vector phases_;
};

/// Linear map phi = c + J * Theta. Rows of J index modes 0..D, columns
/// index parameters 1..D. J must have full column rank.
class ParametrizationMap {
public:
    ParametrizationMap(Vector offsets, Matrix jacobian);

    const Vector& offsets() const noexcept { return offsets_; }
    const Matrix& jacobian() const noexcept { return jacobian_; }
    std::size_t modes() const noexcept { return static_cast<std::size_t>(jacobian_.rows()); }
    std::size_t parameters() const noexcept { return static_cast<std::size_t>(jacobian_.cols()); }

private:
    Vector offsets_;
    Matrix jacobian_;
};

/// Real (D+1)x(D+1) matrix with U * U^T = I within 1e-12.
class OrthogonalMatrix {
public:
    /// Checks orthogonality at `tol` and throws NotOrthogonal otherwise.
    explicit OrthogonalMatrix(Matrix entries, double tol = 1e-12);

    const Matrix& entries() const noexcept { return entries_; }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
    ComplexMatrix as_complex() const { return entries_.cast<Complex>(); }
    OrthogonalMatrix transpose() const;

private:
    Matrix entries_;
};

/// Symmetric PSD D x D Fisher information matrix (rad^-2). particle_count
/// records the N (or mean N) already folded into the entries.
class FisherMatrix {
public:
    FisherMatrix(Matrix entries, double particle_count);

    const Matrix& entries() const noexcept { return entries_; }
    double particle_count() const noexcept { return particle_count_; }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(entries_.rows()); }

private:
    Matrix entries_;
    double particle_count_;
};

enum class ParametrizationKind {
    theta_ref,     ///< Theta_k = phi_k - phi_0
    phi_neighbor,  ///< Theta_k = phi_k - phi_{k-1}
    custom,
};

/// Builds the standard parametrizations. For theta_ref, `gauge_mode` selects
/// which mode's phase is pinned to zero; every gauge yields the same QFIM.
/// Offsets are always zero.
ParametrizationMap make_parametrization(ParametrizationKind kind, std::size_t D,
                                        const std::optional<Matrix>& custom_jacobian = std::nullopt,
                                        std::size_t gauge_mode = 0);

/// Theta_k = phi_{mode_k} - phi_reference over `modes` modes, where mode_k
/// runs over the non-reference modes in increasing index order. The reference
/// mode's phase is pinned to zero.
ParametrizationMap make_reference_parametrization(std::size_t modes, std::size_t reference_mode);

PhaseVector phases_from_params(const ParametrizationMap& map, std::span<const double> theta);
PhaseVector phases_from_params(const ParametrizationMap& map, const Vector& theta);

/// Accepts M if max|Im M| <= tol and max|M M^T - I| <= tol.
OrthogonalMatrix validate_orthogonal(const ComplexMatrix& m, double tol = 1e-12);

/// Largest absolute entry of a matrix (0 for empty matrices).
double max_abs(const Matrix& m);

}  // namespace ramsey
