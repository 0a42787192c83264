#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ramsey {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Dimension mismatches and out-of-range arguments.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

class InvalidParametrization : public Error {
public:
    using Error::Error;
};

/// Raised by validate_orthogonal. Carries the name of the failed check
/// ("imaginary" or "orthogonality") and the observed deviation.
class NotOrthogonal : public Error {
public:
    NotOrthogonal(std::string check, double deviation, double tol);

    const std::string& check() const noexcept { return check_; }
    double deviation() const noexcept { return deviation_; }

private:
    std::string check_;
    double deviation_;
};

class SingularFisherMatrix : public Error {
public:
    explicit SingularFisherMatrix(double condition);

    /// Estimated 2-norm condition number (infinity for non-positive spectra).
    double condition() const noexcept { return condition_; }

private:
    double condition_;
};

class ZeroAmplitude : public Error {
public:
    ZeroAmplitude(std::size_t mode, double population);

    std::size_t mode() const noexcept { return mode_; }

private:
    std::size_t mode_;
};

class ZeroResidual : public Error {
public:
    explicit ZeroResidual(std::size_t splitter);
};

/// The numeric probe optimizer hit its iteration cap. The best populations
/// found so far travel with the error.
class NonConvergence : public Error {
public:
    NonConvergence(std::vector<double> best_populations, double best_value,
                   std::size_t iterations);

    const std::vector<double>& best_populations() const noexcept { return best_; }
    double best_value() const noexcept { return value_; }
    std::size_t iterations() const noexcept { return iterations_; }

private:
    std::vector<double> best_;
    double value_;
    std::size_t iterations_;
};

class DegenerateLikelihood : public Error {
public:
    explicit DegenerateLikelihood(std::optional<std::size_t> run = std::nullopt);

    std::optional<std::size_t> run() const noexcept { return run_; }

private:
    std::optional<std::size_t> run_;
};

}  // namespace ramsey
