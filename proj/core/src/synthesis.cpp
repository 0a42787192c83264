#include "ramsey/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace ramsey {

namespace {

double factorial(int n) {
    return std::tgamma(static_cast<double>(n) + 1.0);
}

void check_sublevel(HalfInteger F, HalfInteger m, const char* what) {
    if (F.twice() < 0) {
        throw InvalidArgument("spin must be non-negative");
    }
    if (std::abs(m.twice()) > F.twice() || (F.twice() - m.twice()) % 2 != 0) {
        throw InvalidArgument(std::string(what) + " = " + m.to_string() +
                              " is not a sublevel of spin " + F.to_string());
    }
}

}  // namespace

std::string HalfInteger::to_string() const {
    if (is_integer()) {
        return std::to_string(twice_ / 2);
    }
    return std::to_string(twice_) + "/2";
}

HalfInteger HalfInteger::parse(const std::string& text) {
    auto fail = [&]() -> HalfInteger {
        throw InvalidArgument("'" + text + "' is not an integer or half-integer");
    };
    if (text.empty()) {
        return fail();
    }
    const auto slash = text.find('/');
    try {
        std::size_t used = 0;
        if (slash != std::string::npos) {
            const int num = std::stoi(text.substr(0, slash), &used);
            if (used != slash || text.substr(slash + 1) != "2") {
                return fail();
            }
            return from_twice(num);
        }
        const double v = std::stod(text, &used);
        if (used != text.size() || std::abs(2.0 * v - std::round(2.0 * v)) > 1e-12) {
            return fail();
        }
        return from_twice(static_cast<int>(std::lround(2.0 * v)));
    } catch (const std::logic_error&) {
        return fail();
    }
}

CascadeAngles::CascadeAngles(std::vector<double> etas) : etas_(std::move(etas)) {
    for (double eta : etas_) {
        if (!(eta >= 0.0 && eta <= std::numbers::pi / 2.0)) {
            throw InvalidArgument("cascade angle outside [0, pi/2]");
        }
    }
}

void SpinRotationSpec::validate() const {
    check_sublevel(F, initial_m, "initial_m");
    check_sublevel(F, reference_m, "reference_m");
    if (!std::isfinite(chi)) {
        throw InvalidArgument("rotation angle must be finite");
    }
}

std::size_t spin_mode_index(HalfInteger F, HalfInteger m) {
    check_sublevel(F, m, "m");
    return static_cast<std::size_t>((F.twice() - m.twice()) / 2);
}

HalfInteger spin_sublevel(HalfInteger F, std::size_t index) {
    if (index > static_cast<std::size_t>(F.twice())) {
        throw InvalidArgument("sublevel index out of range");
    }
    return HalfInteger::from_twice(F.twice() - 2 * static_cast<int>(index));
}

// Beam-splitter cascade ------------------------------------------------------

CascadeAngles bs_cascade_angles(const ProbeState& target) {
    const Vector p = target.populations();
    const auto D = static_cast<std::size_t>(p.size()) - 1;
    std::vector<double> etas(D);
    double consumed = 0.0;  // sum of p_j already deposited
    for (std::size_t k = 1; k <= D; ++k) {
        const auto idx = static_cast<Eigen::Index>(k - 1);
        const double denom = 1.0 - consumed;
        const double remaining = p.tail(p.size() - idx).sum();
        if (denom < 1e-15) {
            if (remaining > 1e-15) {
                throw ZeroResidual(k);
            }
            etas[k - 1] = 0.0;
        } else {
            const double cos2 = std::clamp(p(idx) / denom, 0.0, 1.0);
            etas[k - 1] = std::acos(std::sqrt(cos2));
        }
        consumed += p(idx);
    }
    return CascadeAngles(std::move(etas));
}

OrthogonalMatrix bs_cascade_unitary(const CascadeAngles& angles) {
    const auto n = static_cast<Eigen::Index>(angles.size() + 1);
    Matrix u = Matrix::Identity(n, n);
    for (Eigen::Index k = 1; k < n; ++k) {
        const double eta = angles.etas()[static_cast<std::size_t>(k - 1)];
        const double c = std::cos(eta);
        const double s = std::sin(eta);
        // Left-multiply by the Givens rotation on modes (k-1, k).
        for (Eigen::Index col = 0; col < n; ++col) {
            const double a = u(k - 1, col);
            const double b = u(k, col);
            u(k - 1, col) = c * a - s * b;
            u(k, col) = s * a + c * b;
        }
    }
    return OrthogonalMatrix(std::move(u));
}

// Spin rotations -------------------------------------------------------------

double wigner_small_d(HalfInteger F, HalfInteger m_row, HalfInteger m_col, double chi) {
    check_sublevel(F, m_row, "m_row");
    check_sublevel(F, m_col, "m_col");
    const int j2 = F.twice();
    const int mp2 = m_row.twice();
    const int m2 = m_col.twice();
    const int jpmp = (j2 + mp2) / 2;
    const int jmmp = (j2 - mp2) / 2;
    const int jpm = (j2 + m2) / 2;
    const int jmm = (j2 - m2) / 2;
    const int diff = (mp2 - m2) / 2;  // m' - m

    const double prefactor =
        std::sqrt(factorial(jpmp) * factorial(jmmp) * factorial(jpm) * factorial(jmm));
    const double c = std::cos(0.5 * chi);
    const double s = std::sin(0.5 * chi);
    const int s_min = std::max(0, -diff);
    const int s_max = std::min(jpm, jmmp);
    double sum = 0.0;
    for (int k = s_min; k <= s_max; ++k) {
        const double sign = ((diff + k) % 2 == 0) ? 1.0 : -1.0;
        const double denom = factorial(jpm - k) * factorial(k) * factorial(diff + k) *
                             factorial(jmmp - k);
        const int cos_power = j2 - diff - 2 * k;  // 2j + m - m' - 2k
        const int sin_power = diff + 2 * k;
        sum += sign * std::pow(c, cos_power) * std::pow(s, sin_power) / denom;
    }
    return prefactor * sum;
}

OrthogonalMatrix spin_rotation(const SpinRotationSpec& spec) {
    spec.validate();
    const int j2 = spec.F.twice();
    const auto n = static_cast<Eigen::Index>(j2 + 1);
    const double j = spec.F.value();

    // F_x in the |F>, |F-1>, ... basis: real symmetric tridiagonal with
    // <m+1|F_+|m> = sqrt(j(j+1) - m(m+1)).
    Matrix fx = Matrix::Zero(n, n);
    for (Eigen::Index a = 1; a < n; ++a) {
        const double m = j - static_cast<double>(a);
        const double ladder = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
        fx(a - 1, a) = 0.5 * ladder;
        fx(a, a - 1) = 0.5 * ladder;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> eig(fx);
    const Matrix& v = eig.eigenvectors();
    // The spectrum of F_x is exactly {-F, ..., F}, in ascending order.
    ComplexVector rot(n);
    for (Eigen::Index a = 0; a < n; ++a) {
        const double lambda = -j + static_cast<double>(a);
        rot(a) = std::polar(1.0, -lambda * spec.chi);
    }
    // F_y = S F_x S^dagger with S = diag(i^a).
    ComplexVector phase(n);
    for (Eigen::Index a = 0; a < n; ++a) {
        static constexpr Complex powers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        phase(a) = powers[a % 4];
    }
    const ComplexMatrix vc = v.cast<Complex>();
    const ComplexMatrix u = phase.asDiagonal() * (vc * rot.asDiagonal() * vc.adjoint()) *
                            phase.conjugate().asDiagonal();
    const Matrix d = validate_orthogonal(u, 1e-12).entries();
    // Average over the exact symmetries d_{m'm} = (-1)^{m'-m} d_{mm'} = d_{-m,-m'}
    // so that rows and columns agree to the last bit, also for tiny elements.
    Vector sign(n);
    for (Eigen::Index a = 0; a < n; ++a) {
        sign(a) = a % 2 == 0 ? 1.0 : -1.0;
    }
    const Matrix t1 = sign.asDiagonal() * d.transpose() * sign.asDiagonal();
    const Matrix t2 = d.transpose().reverse();
    const Matrix t3 = sign.asDiagonal() * d.reverse() * sign.asDiagonal();
    return OrthogonalMatrix(0.25 * ((d + t3) + (t1 + t2)), 1e-12);
}

OrthogonalMatrix wigner_rotation(HalfInteger F, double chi) {
    const auto n = static_cast<Eigen::Index>(F.twice() + 1);
    Matrix u(n, n);
    for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = 0; b < n; ++b) {
            u(a, b) = wigner_small_d(F, spin_sublevel(F, static_cast<std::size_t>(a)),
                                     spin_sublevel(F, static_cast<std::size_t>(b)), chi);
        }
    }
    return OrthogonalMatrix(std::move(u), 1e-10);
}

// Random matrices ------------------------------------------------------------

OrthogonalMatrix random_orthogonal(std::size_t dim, std::uint64_t seed) {
    if (dim < 1) {
        throw InvalidArgument("dimension must be positive");
    }
    const auto n = static_cast<Eigen::Index>(dim);
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix g(n, n);
    for (Eigen::Index c = 0; c < n; ++c) {
        for (Eigen::Index r = 0; r < n; ++r) {
            g(r, c) = normal(gen);
        }
    }
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(n, n);
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < n; ++k) {
        if (r(k, k) < 0.0) {
            q.col(k) *= -1.0;
        }
    }
    return OrthogonalMatrix(std::move(q));
}

ComplexMatrix random_unitary(std::size_t dim, std::uint64_t seed) {
    if (dim < 1) {
        throw InvalidArgument("dimension must be positive");
    }
    const auto n = static_cast<Eigen::Index>(dim);
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix g(n, n);
    for (Eigen::Index c = 0; c < n; ++c) {
        for (Eigen::Index r = 0; r < n; ++r) {
            const double re = normal(gen);
            const double im = normal(gen);
            g(r, c) = Complex(re, im);
        }
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < n; ++k) {
        const double mag = std::abs(r(k, k));
        if (mag > 0.0) {
            q.col(k) *= r(k, k) / mag;
        }
    }
    return q;
}

}  // namespace ramsey
