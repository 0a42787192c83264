#include "ramsey/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

namespace ramsey {

namespace {

constexpr double kNormTolerance = 1e-12;
constexpr double kRankTolerance = 1e-10;

std::string fmt_double(double v) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

}  // namespace

NotOrthogonal::NotOrthogonal(std::string check, double deviation, double tol)
    : Error("matrix is not orthogonal: " + check + " deviation " + fmt_double(deviation) +
            " exceeds tolerance " + fmt_double(tol)),
      check_(std::move(check)),
      deviation_(deviation) {}

SingularFisherMatrix::SingularFisherMatrix(double condition)
    : Error("Fisher matrix is singular (condition estimate " + fmt_double(condition) + ")"),
      condition_(condition) {}

ZeroAmplitude::ZeroAmplitude(std::size_t mode, double population)
    : Error("mode " + std::to_string(mode) + " is unpopulated (|alpha|^2 = " +
            fmt_double(population) + ")"),
      mode_(mode) {}

ZeroResidual::ZeroResidual(std::size_t splitter)
    : Error("beam splitter " + std::to_string(splitter) +
            " has no residual power left but the target still needs some") {}

NonConvergence::NonConvergence(std::vector<double> best_populations, double best_value,
                               std::size_t iterations)
    : Error("probe optimizer did not converge after " + std::to_string(iterations) +
            " iterations (best objective " + fmt_double(best_value) + ")"),
      best_(std::move(best_populations)),
      value_(best_value),
      iterations_(iterations) {}

DegenerateLikelihood::DegenerateLikelihood(std::optional<std::size_t> run)
    : Error(run ? "likelihood has no positive weights in run " + std::to_string(*run)
                : std::string("likelihood has no positive weights")),
      run_(run) {}

double max_abs(const Matrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// ProbeState -----------------------------------------------------------------

ProbeState::ProbeState(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() < 2) {
        throw InvalidArgument("probe state needs at least two modes");
    }
    if (!amplitudes_.allFinite()) {
        throw InvalidArgument("probe amplitudes must be finite");
    }
    const double norm = amplitudes_.squaredNorm();
    if (std::abs(norm - 1.0) > kNormTolerance) {
        throw InvalidArgument("probe state is not normalized: sum |alpha|^2 = " +
                              fmt_double(norm));
    }
}

ProbeState ProbeState::from_populations(const Vector& populations) {
    ComplexVector amps(populations.size());
    for (Eigen::Index k = 0; k < populations.size(); ++k) {
        if (populations(k) < 0.0) {
            throw InvalidArgument("populations must be non-negative");
        }
        amps(k) = Complex(std::sqrt(populations(k)), 0.0);
    }
    return ProbeState(std::move(amps));
}

ProbeState ProbeState::from_populations(std::span<const double> populations) {
    return from_populations(
        Vector(Eigen::Map<const Vector>(populations.data(), static_cast<Eigen::Index>(populations.size()))));
}

Vector ProbeState::populations() const {
    return amplitudes_.cwiseAbs2();
}

// PhaseVector ----------------------------------------------------------------

PhaseVector::PhaseVector(Vector phases) : phases_(std::move(phases)) {
    if (!phases_.allFinite()) {
        throw InvalidArgument("phases must be finite");
    }
}

// ParametrizationMap ---------------------------------------------------------

ParametrizationMap::ParametrizationMap(Vector offsets, Matrix jacobian)
    : offsets_(std::move(offsets)), jacobian_(std::move(jacobian)) {
    const auto rows = jacobian_.rows();
    const auto cols = jacobian_.cols();
    if (cols < 1 || rows != cols + 1) {
        throw InvalidParametrization("jacobian must be (D+1) x D with D >= 1, got " +
                                     std::to_string(rows) + " x " + std::to_string(cols));
    }
    if (offsets_.size() != rows) {
        throw InvalidParametrization("offsets length must equal the number of modes");
    }
    if (!jacobian_.allFinite() || !offsets_.allFinite()) {
        throw InvalidParametrization("parametrization entries must be finite");
    }
    Eigen::JacobiSVD<Matrix> svd(jacobian_);
    const Vector& sv = svd.singularValues();
    const double threshold = kRankTolerance * std::max(1.0, sv(0));
    const auto rank = (sv.array() > threshold).count();
    if (rank < cols) {
        throw InvalidParametrization("jacobian is rank deficient: rank " + std::to_string(rank) +
                                     " < " + std::to_string(cols));
    }
}

ParametrizationMap make_parametrization(ParametrizationKind kind, std::size_t D,
                                        const std::optional<Matrix>& custom_jacobian,
                                        std::size_t gauge_mode) {
    if (D < 1) {
        throw InvalidArgument("D must be at least 1");
    }
    const auto d = static_cast<Eigen::Index>(D);
    Matrix jac = Matrix::Zero(d + 1, d);
    switch (kind) {
        case ParametrizationKind::theta_ref: {
            if (gauge_mode > D) {
                throw InvalidArgument("gauge_mode must index a mode in 0..D");
            }
            jac.bottomRows(d).setIdentity();
            // Pin phi_gauge = 0 by shifting every mode by the same linear
            // function of Theta; phase differences are unchanged.
            const Eigen::RowVectorXd pinned = jac.row(static_cast<Eigen::Index>(gauge_mode));
            jac.rowwise() -= pinned;
            break;
        }
        case ParametrizationKind::phi_neighbor:
            for (Eigen::Index k = 1; k <= d; ++k) {
                for (Eigen::Index l = 0; l < k; ++l) {
                    jac(k, l) = 1.0;
                }
            }
            break;
        case ParametrizationKind::custom:
            if (!custom_jacobian) {
                throw InvalidArgument("custom parametrization needs a jacobian");
            }
            if (custom_jacobian->rows() != d + 1 || custom_jacobian->cols() != d) {
                throw InvalidParametrization("custom jacobian must be (D+1) x D");
            }
            jac = *custom_jacobian;
            break;
    }
    return ParametrizationMap(Vector::Zero(d + 1), std::move(jac));
}

ParametrizationMap make_reference_parametrization(std::size_t modes, std::size_t reference_mode) {
    if (modes < 2) {
        throw InvalidArgument("need at least two modes");
    }
    if (reference_mode >= modes) {
        throw InvalidArgument("reference mode out of range");
    }
    const auto n = static_cast<Eigen::Index>(modes);
    Matrix jac = Matrix::Zero(n, n - 1);
    Eigen::Index param = 0;
    for (Eigen::Index k = 0; k < n; ++k) {
        if (static_cast<std::size_t>(k) == reference_mode) {
            continue;
        }
        jac(k, param++) = 1.0;
    }
    return ParametrizationMap(Vector::Zero(n), std::move(jac));
}

PhaseVector phases_from_params(const ParametrizationMap& map, const Vector& theta) {
    if (static_cast<std::size_t>(theta.size()) != map.parameters()) {
        throw InvalidArgument("theta has length " + std::to_string(theta.size()) + ", expected " +
                              std::to_string(map.parameters()));
    }
    return PhaseVector(map.offsets() + map.jacobian() * theta);
}

PhaseVector phases_from_params(const ParametrizationMap& map, std::span<const double> theta) {
    return phases_from_params(
        map, Vector(Eigen::Map<const Vector>(theta.data(), static_cast<Eigen::Index>(theta.size()))));
}

// OrthogonalMatrix -----------------------------------------------------------

OrthogonalMatrix::OrthogonalMatrix(Matrix entries, double tol) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
        throw InvalidArgument("orthogonal matrix must be square and non-empty");
    }
    if (!entries_.allFinite()) {
        throw NotOrthogonal("finite", std::numeric_limits<double>::infinity(), tol);
    }
    const auto n = entries_.rows();
    const double dev = max_abs(entries_ * entries_.transpose() - Matrix::Identity(n, n));
    if (dev > tol) {
        throw NotOrthogonal("orthogonality", dev, tol);
    }
}

OrthogonalMatrix OrthogonalMatrix::transpose() const {
    return OrthogonalMatrix(entries_.transpose(), std::numeric_limits<double>::infinity());
}

OrthogonalMatrix validate_orthogonal(const ComplexMatrix& m, double tol) {
    if (m.rows() != m.cols()) {
        throw InvalidArgument("matrix must be square");
    }
    const double imag = m.size() == 0 ? 0.0 : m.imag().cwiseAbs().maxCoeff();
    if (imag > tol) {
        throw NotOrthogonal("imaginary", imag, tol);
    }
    return OrthogonalMatrix(m.real(), tol);
}

// FisherMatrix ---------------------------------------------------------------

FisherMatrix::FisherMatrix(Matrix entries, double particle_count)
    : entries_(std::move(entries)), particle_count_(particle_count) {
    if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
        throw InvalidArgument("Fisher matrix must be square and non-empty");
    }
    if (!(particle_count_ > 0.0)) {
        throw InvalidArgument("particle count must be positive");
    }
    if (!entries_.allFinite()) {
        throw InvalidArgument("Fisher matrix entries must be finite");
    }
    const double scale = std::max(max_abs(entries_), 1e-300);
    if (max_abs(entries_ - entries_.transpose()) > 1e-10 * scale) {
        throw InvalidArgument("Fisher matrix is not symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> eig(entries_, Eigen::EigenvaluesOnly);
    const Vector& ev = eig.eigenvalues();
    if (ev(0) < -1e-10 * ev.cwiseAbs().maxCoeff()) {
        throw InvalidArgument("Fisher matrix is not positive semidefinite");
    }
}

}  // namespace ramsey
