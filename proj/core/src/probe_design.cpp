#include "ramsey/probe_design.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "ramsey/fisher.hpp"
#include "ramsey/optimize.hpp"

namespace ramsey {

namespace {

constexpr double kZeroPopulation = 1e-15;

void require_positive_N(double N) {
    if (!(N > 0.0)) {
        throw InvalidArgument("particle number must be positive");
    }
}

void require_D(std::size_t D) {
    if (D < 1) {
        throw InvalidArgument("D must be at least 1");
    }
}

Vector checked_populations(const ProbeState& probe) {
    Vector p = probe.populations();
    for (Eigen::Index k = 0; k < p.size(); ++k) {
        if (p(k) < kZeroPopulation) {
            throw ZeroAmplitude(static_cast<std::size_t>(k), p(k));
        }
    }
    return p;
}

}  // namespace

double variance_bound_theta(const ProbeState& probe, double N, std::size_t reference_mode) {
    require_positive_N(N);
    if (reference_mode >= probe.modes()) {
        throw InvalidArgument("reference mode out of range");
    }
    const Vector p = checked_populations(probe);
    const auto D = static_cast<double>(probe.parameters());
    double total = 0.0;
    for (Eigen::Index k = 0; k < p.size(); ++k) {
        if (static_cast<std::size_t>(k) == reference_mode) {
            total += D / (4.0 * p(k));
        } else {
            total += 1.0 / (4.0 * p(k));
        }
    }
    return total / N;
}

double variance_bound_phi(const ProbeState& probe, double N) {
    require_positive_N(N);
    const Vector p = checked_populations(probe);
    const auto last = p.size() - 1;
    double total = 1.0 / (4.0 * p(0)) + 1.0 / (4.0 * p(last));
    for (Eigen::Index k = 1; k < last; ++k) {
        total += 1.0 / (2.0 * p(k));
    }
    return total / N;
}

ProbeState optimal_probe_theta(std::size_t D) {
    require_D(D);
    const double d = static_cast<double>(D);
    const double root = std::sqrt(d);
    Vector p = Vector::Constant(static_cast<Eigen::Index>(D + 1), 1.0 / (d + root));
    p(0) = root / (d + root);
    return ProbeState::from_populations(p);
}

double qcrb_theta_opt(std::size_t D, double N) {
    require_D(D);
    require_positive_N(N);
    const double d = static_cast<double>(D);
    const double s = d + std::sqrt(d);
    return s * s / (4.0 * N);
}

double qcrb_individual(std::size_t D, double N) {
    require_D(D);
    require_positive_N(N);
    const double d = static_cast<double>(D);
    return d * d / N;
}

ProbeState optimal_probe_phi(std::size_t D) {
    require_D(D);
    const double denom = std::sqrt(2.0) * (static_cast<double>(D) - 1.0) + 2.0;
    Vector p = Vector::Constant(static_cast<Eigen::Index>(D + 1), std::sqrt(2.0) / denom);
    p(0) = 1.0 / denom;
    p(static_cast<Eigen::Index>(D)) = 1.0 / denom;
    return ProbeState::from_populations(p);
}

double qcrb_phi_opt(std::size_t D, double N) {
    require_D(D);
    require_positive_N(N);
    const double s = std::sqrt(2.0) * (static_cast<double>(D) - 1.0) + 2.0;
    return s * s / (4.0 * N);
}

double indirect_phi_bound(std::size_t D, double N) {
    require_D(D);
    require_positive_N(N);
    const double d = static_cast<double>(D);
    const double root = std::sqrt(d);
    return ((1.0 + root) * (1.0 + root) + 2.0 * (d - 1.0) * (root + d)) / (4.0 * N);
}

double indirect_bound(const Matrix& jacobian, const FisherMatrix& F) {
    if (jacobian.cols() != F.entries().rows()) {
        throw InvalidArgument("jacobian columns must match the Fisher matrix dimension");
    }
    const double cond = condition_number(F.entries());
    if (!(cond < 1e12)) {
        throw SingularFisherMatrix(cond);
    }
    const Matrix inv = F.entries().ldlt().solve(Matrix::Identity(F.entries().rows(), F.entries().cols()));
    return (jacobian * inv * jacobian.transpose()).trace();
}

Matrix neighbor_from_reference_jacobian(std::size_t D) {
    require_D(D);
    const auto d = static_cast<Eigen::Index>(D);
    Matrix j = Matrix::Identity(d, d);
    for (Eigen::Index k = 1; k < d; ++k) {
        j(k, k - 1) = -1.0;
    }
    return j;
}

BoundReport bound_report(BoundScheme scheme, std::size_t D, double N) {
    switch (scheme) {
        case BoundScheme::simultaneous_opt:
            return {scheme, D, N, qcrb_theta_opt(D, N)};
        case BoundScheme::individual:
            return {scheme, D, N, qcrb_individual(D, N)};
        case BoundScheme::indirect_jacobian:
            return {scheme, D, N, indirect_phi_bound(D, N)};
        case BoundScheme::osrs:
            throw InvalidArgument("OSRS bounds depend on the spin; use osrs_report");
        case BoundScheme::custom:
            break;
    }
    throw InvalidArgument("custom bounds need an explicit probe and map");
}

ProbeState optimize_probe_numeric(const ParametrizationMap& map, std::size_t D,
                                  const ProbeOptimizerOptions& options) {
    require_D(D);
    if (map.parameters() != D) {
        throw InvalidArgument("map dimension does not match D");
    }
    const Matrix& jac = map.jacobian();
    const auto n = static_cast<Eigen::Index>(D + 1);

    auto softmax = [](const Vector& z) {
        const Vector e = (z.array() - z.maxCoeff()).exp();
        return Vector(e / e.sum());
    };

    // f(p) = Tr[F(p)^-1] with F(p) = 4 [J^T diag(p) J - (J^T p)(J^T p)^T].
    // df/dp_k = -4 [ j_k^T M j_k - 2 j_k^T M (J^T p) ],  M = F^-2.
    optim::GradientObjective objective = [&](const Vector& z, Vector& grad) {
        const Vector p = softmax(z);
        const Vector mean = jac.transpose() * p;
        const Matrix fq = 4.0 * (jac.transpose() * p.asDiagonal() * jac - mean * mean.transpose());
        Eigen::LDLT<Matrix> ldlt(fq);
        if (ldlt.info() != Eigen::Success || !(ldlt.vectorD().minCoeff() > 0.0)) {
            grad.setZero(z.size());
            return std::numeric_limits<double>::infinity();
        }
        const Matrix inv = ldlt.solve(Matrix::Identity(fq.rows(), fq.cols()));
        const Matrix m2 = inv * inv;
        const Vector m2_mean = m2 * mean;
        Vector dp(n);
        for (Eigen::Index k = 0; k < n; ++k) {
            const Vector jk = jac.row(k).transpose();
            dp(k) = -4.0 * (jk.dot(m2 * jk) - 2.0 * jk.dot(m2_mean));
        }
        const double avg = p.dot(dp);
        grad = p.cwiseProduct(dp.array().matrix() - Vector::Constant(n, avg));
        return inv.trace();
    };

    Vector z0 = Vector::Zero(n);
    if (options.seed != 0) {
        std::mt19937_64 gen(options.seed);
        std::normal_distribution<double> normal(0.0, 0.3);
        for (Eigen::Index k = 0; k < n; ++k) {
            z0(k) = normal(gen);
        }
    }

    optim::BfgsOptions bopts;
    bopts.max_iterations = options.max_iterations;
    bopts.stall_window = options.stall_window;
    bopts.stall_tolerance = options.stall_tolerance;
    const optim::Minimum result = optim::bfgs(objective, z0, bopts);
    const Vector p = softmax(result.x);
    if (!result.converged) {
        throw NonConvergence(std::vector<double>(p.data(), p.data() + p.size()), result.value,
                             result.iterations);
    }
    return ProbeState::from_populations(p);
}

}  // namespace ramsey
