#include "ramsey/fisher.hpp"

#include <cmath>
#include <limits>
#include <utility>

namespace ramsey {

namespace {

constexpr double kMaxCondition = 1e12;

void check_unitary(const ComplexMatrix& u, const char* what) {
    const auto n = u.rows();
    if (u.cols() != n) {
        throw InvalidArgument(std::string(what) + " must be square");
    }
    const double dev = (u * u.adjoint() - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
    if (dev > 1e-10) {
        throw InvalidArgument(std::string(what) + " is not unitary");
    }
}

/// e^{i phi} - 1 without cancellation for small phi.
Complex expm1i(double phi) {
    const double half = std::sin(0.5 * phi);
    return {-2.0 * half * half, std::sin(phi)};
}

void check_theta(const RamseyProtocol& proto, const Vector& theta) {
    if (static_cast<std::size_t>(theta.size()) != proto.parameters()) {
        throw InvalidArgument("theta has length " + std::to_string(theta.size()) +
                              ", protocol estimates " + std::to_string(proto.parameters()) +
                              " parameters");
    }
}

struct ForwardState {
    ComplexVector phase;   // e^{i phi_k}
    ComplexVector psi;     // output amplitudes <m|U_2 diag(e^{i phi}) U_1|i>
};

ForwardState forward(const RamseyProtocol& proto, const Vector& theta) {
    check_theta(proto, theta);
    const Vector phi = phases_from_params(proto.map(), theta).values();
    const ComplexVector probe = proto.splitter().col(static_cast<Eigen::Index>(proto.input_mode()));
    const auto n = phi.size();
    ComplexVector shift(n);
    ComplexVector phase(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const Complex d = expm1i(phi(k));
        shift(k) = d * probe(k);
        phase(k) = 1.0 + d;
    }
    // Split the phase factor as 1 + (e^{i phi} - 1) so the near-cancelling
    // part at small phases is computed from the small factor directly.
    ComplexVector psi = proto.combiner() * probe + proto.combiner() * shift;
    return {std::move(phase), std::move(psi)};
}

Matrix symmetrize(const Matrix& m) {
    return 0.5 * (m + m.transpose());
}

}  // namespace

ProbabilityVector::ProbabilityVector(Vector probs) : probs_(std::move(probs)) {
    if (!probs_.allFinite()) {
        throw InvalidArgument("probabilities must be finite");
    }
    for (Eigen::Index m = 0; m < probs_.size(); ++m) {
        if (probs_(m) < -1e-12 || probs_(m) > 1.0 + 1e-12) {
            throw InvalidArgument("probability out of range at mode " + std::to_string(m));
        }
    }
    if (std::abs(probs_.sum() - 1.0) > 1e-10) {
        throw InvalidArgument("probabilities do not sum to one");
    }
}

RamseyProtocol::RamseyProtocol(ComplexMatrix splitter, ComplexMatrix combiner,
                               std::size_t input_mode, ParametrizationMap map)
    : splitter_(std::move(splitter)),
      combiner_(std::move(combiner)),
      input_mode_(input_mode),
      map_(std::move(map)) {
    const auto n = static_cast<Eigen::Index>(map_.modes());
    if (splitter_.rows() != n || combiner_.rows() != n) {
        throw InvalidArgument("splitter and combiner must match the number of modes");
    }
    check_unitary(splitter_, "splitter");
    check_unitary(combiner_, "combiner");
    if (input_mode_ >= map_.modes()) {
        throw InvalidArgument("input mode out of range");
    }
}

RamseyProtocol RamseyProtocol::ramsey(const OrthogonalMatrix& splitter, std::size_t input_mode,
                                      ParametrizationMap map) {
    return RamseyProtocol(splitter.as_complex(), splitter.entries().transpose().cast<Complex>(),
                          input_mode, std::move(map));
}

ProbeState RamseyProtocol::probe() const {
    ComplexVector amps = splitter_.col(static_cast<Eigen::Index>(input_mode_));
    // Unitary columns are normalized to rounding; renormalize for the
    // ProbeState invariant.
    amps /= amps.norm();
    return ProbeState(std::move(amps));
}

FisherMatrix qfim_pure(const ProbeState& probe, const ParametrizationMap& map, double N) {
    if (probe.modes() != map.modes()) {
        throw InvalidArgument("probe and parametrization disagree on the number of modes");
    }
    if (!(N > 0.0)) {
        throw InvalidArgument("particle number must be positive");
    }
    const Vector p = probe.populations();
    const Matrix& jac = map.jacobian();
    const Vector mean = jac.transpose() * p;
    const Matrix second = jac.transpose() * p.asDiagonal() * jac;
    return FisherMatrix(symmetrize(4.0 * N * (second - mean * mean.transpose())), N);
}

FisherMatrix qfim_poisson(const ProbeState& probe, const ParametrizationMap& map, double mean_N) {
    if (!(mean_N > 0.0)) {
        throw InvalidArgument("mean particle number must be positive");
    }
    const FisherMatrix single = qfim_pure(probe, map, 1.0);
    return FisherMatrix(mean_N * single.entries(), mean_N);
}

double condition_number(const Matrix& symmetric) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(symmetric, Eigen::EigenvaluesOnly);
    const Vector& ev = eig.eigenvalues();
    const double lo = ev(0);
    const double hi = ev(ev.size() - 1);
    if (!(lo > 0.0)) {
        return std::numeric_limits<double>::infinity();
    }
    return hi / lo;
}

double qcrb_total_variance(const FisherMatrix& F) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(F.entries());
    const Vector& ev = eig.eigenvalues();
    const double lo = ev(0);
    const double hi = ev(ev.size() - 1);
    const double cond = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
    if (!(cond < kMaxCondition)) {
        throw SingularFisherMatrix(cond);
    }
    return ev.cwiseInverse().sum();
}

ProbabilityVector output_probabilities(const RamseyProtocol& proto, const Vector& theta) {
    const ForwardState fw = forward(proto, theta);
    Vector p = fw.psi.cwiseAbs2();
    // Unitary evolution conserves the norm; rounding drift is removed here.
    p /= p.sum();
    return ProbabilityVector(std::move(p));
}

Matrix probability_jacobian(const RamseyProtocol& proto, const Vector& theta) {
    const ForwardState fw = forward(proto, theta);
    const ComplexVector probe = proto.splitter().col(static_cast<Eigen::Index>(proto.input_mode()));
    const Matrix& jac = proto.map().jacobian();
    const auto n = jac.rows();
    const auto d = jac.cols();
    const ComplexVector phased = fw.phase.cwiseProduct(probe);
    Matrix out(n, d);
    for (Eigen::Index l = 0; l < d; ++l) {
        ComplexVector dstate(n);
        for (Eigen::Index k = 0; k < n; ++k) {
            dstate(k) = Complex(0.0, jac(k, l)) * phased(k);
        }
        const ComplexVector dpsi = proto.combiner() * dstate;
        for (Eigen::Index m = 0; m < n; ++m) {
            out(m, l) = 2.0 * std::real(std::conj(fw.psi(m)) * dpsi(m));
        }
    }
    return out;
}

FisherMatrix cfim(const RamseyProtocol& proto, const Vector& theta, double N, double floor) {
    if (!(N > 0.0)) {
        throw InvalidArgument("particle number must be positive");
    }
    const ForwardState fw = forward(proto, theta);
    const Vector p = fw.psi.cwiseAbs2();
    const Matrix grad = probability_jacobian(proto, theta);
    const auto d = grad.cols();
    const double grad_floor = std::sqrt(floor);
    Matrix info = Matrix::Zero(d, d);
    for (Eigen::Index m = 0; m < grad.rows(); ++m) {
        double pm = p(m);
        if (pm < floor) {
            if (grad.row(m).cwiseAbs().maxCoeff() < grad_floor) {
                continue;
            }
            pm = floor;
        }
        if (pm <= 0.0) {
            continue;
        }
        info += grad.row(m).transpose() * grad.row(m) / pm;
    }
    return FisherMatrix(symmetrize(N * info), N);
}

ProbabilityVector taylor_probabilities(const RamseyProtocol& proto, const Vector& theta) {
    check_theta(proto, theta);
    const Vector f = phases_from_params(proto.map(), theta).values();
    const ComplexMatrix& u = proto.splitter();
    const auto i = static_cast<Eigen::Index>(proto.input_mode());
    const auto n = u.rows();
    Vector p(n);
    // <i|U^dag|k> = conj(U_ki), <k|U|i> = U_ki.
    const Vector a2 = u.col(i).cwiseAbs2();
    const double mean = a2.dot(f);
    for (Eigen::Index m = 0; m < n; ++m) {
        if (m == i) {
            p(m) = 1.0 + mean * mean - a2.dot(f.cwiseProduct(f));
            continue;
        }
        // sum_k f_k <m|U^dag|k><k|U|i>
        Complex amp(0.0, 0.0);
        for (Eigen::Index k = 0; k < n; ++k) {
            amp += f(k) * std::conj(u(k, m)) * u(k, i);
        }
        p(m) = std::norm(amp);
    }
    return ProbabilityVector(std::move(p));
}

}  // namespace ramsey
