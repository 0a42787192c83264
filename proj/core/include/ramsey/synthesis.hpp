#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ramsey/core.hpp"

namespace ramsey {

/// Spin quantum numbers are integers or half-integers; stored as twice the value.
class HalfInteger {
public:
    constexpr HalfInteger() = default;
    static constexpr HalfInteger from_twice(int twice) { return HalfInteger(twice); }
    static constexpr HalfInteger integer(int value) { return HalfInteger(2 * value); }

    constexpr int twice() const noexcept { return twice_; }
    constexpr double value() const noexcept { return 0.5 * twice_; }
    constexpr bool is_integer() const noexcept { return twice_ % 2 == 0; }
    constexpr HalfInteger operator-() const noexcept { return HalfInteger(-twice_); }

    friend constexpr auto operator<=>(HalfInteger, HalfInteger) = default;

    /// "1", "-3/2", ...
    std::string to_string() const;
    /// Parses "2", "-1", "3/2", "1.5".
    static HalfInteger parse(const std::string& text);

private:
    constexpr explicit HalfInteger(int twice) : twice_(twice) {}
    int twice_ = 0;
};

/// Beam-splitter angles eta_1..eta_D in [0, pi/2]; cos^2(eta_k) is the
/// reflectance of splitter k.
class CascadeAngles {
public:
    explicit CascadeAngles(std::vector<double> etas);

    const std::vector<double>& etas() const noexcept { return etas_; }
    std::size_t size() const noexcept { return etas_.size(); }

private:
    std::vector<double> etas_;
};

/// One-pulse rotation exp(-i F_y chi) of spin F prepared in |F, initial_m>,
/// with |F, reference_m> the phase reference.
struct SpinRotationSpec {
    HalfInteger F;
    double chi = 0.0;
    HalfInteger initial_m;
    HalfInteger reference_m;

    void validate() const;
    std::size_t dim() const { return static_cast<std::size_t>(F.twice() + 1); }
};

/// Row/column index of sublevel m. The basis is ordered |F>, |F-1>, ..., |-F>.
std::size_t spin_mode_index(HalfInteger F, HalfInteger m);
HalfInteger spin_sublevel(HalfInteger F, std::size_t index);

CascadeAngles bs_cascade_angles(const ProbeState& target);

/// U = U^(D) ... U^(1); U^(k) rotates modes (k-1, k) by eta_k so that
/// U e_0 reproduces the cascade's target populations.
OrthogonalMatrix bs_cascade_unitary(const CascadeAngles& angles);

/// Wigner small-d element d^F_{m_row, m_col}(chi) from the factorial sum.
double wigner_small_d(HalfInteger F, HalfInteger m_row, HalfInteger m_col, double chi);

/// exp(-i F_y chi) built from ladder-operator matrix elements and an
/// eigendecomposition; entry (a, b) equals d^F_{m_a, m_b}(chi).
OrthogonalMatrix spin_rotation(const SpinRotationSpec& spec);

/// Same matrix assembled entry by entry from wigner_small_d.
OrthogonalMatrix wigner_rotation(HalfInteger F, double chi);

/// Haar-distributed orthogonal matrix from QR of a seeded Gaussian matrix.
OrthogonalMatrix random_orthogonal(std::size_t dim, std::uint64_t seed);

/// Haar-distributed complex unitary, the complex analogue of random_orthogonal.
ComplexMatrix random_unitary(std::size_t dim, std::uint64_t seed);

}  // namespace ramsey
