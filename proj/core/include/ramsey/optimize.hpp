#pragma once

#include <cstddef>
#include <functional>

#include "ramsey/core.hpp"

// Small derivative-free and quasi-Newton minimizers used by the probe
// designer, the OSRS angle search and the likelihood refinement.
namespace ramsey::optim {

struct ScalarMinimum {
    double x;
    double value;
};

/// Golden-section search on [lo, hi] for a unimodal function.
ScalarMinimum golden_section(const std::function<double(double)>& f, double lo, double hi,
                             double xtol = 1e-12, std::size_t max_iterations = 200);

struct NelderMeadOptions {
    std::size_t max_iterations = 200;
    /// Converged once every vertex is within this distance of the best one.
    double diameter_tolerance = 1e-6;
    double initial_step = 0.05;
};

struct Minimum {
    Vector x;
    double value;
    std::size_t iterations;
    bool converged;
};

/// Standard Nelder-Mead (reflection 1, expansion 2, contraction 1/2,
/// shrink 1/2) starting from an axis-aligned simplex around x0.
Minimum nelder_mead(const std::function<double(const Vector&)>& f, const Vector& x0,
                    const NelderMeadOptions& options = {});

struct BfgsOptions {
    std::size_t max_iterations = 100000;
    std::size_t stall_window = 50;
    double stall_tolerance = 1e-12;
};

/// Objective returning f(x) and writing the gradient into the second argument.
using GradientObjective = std::function<double(const Vector&, Vector&)>;

/// BFGS with Armijo backtracking. Stops once the relative decrease over the
/// last `stall_window` iterations falls below `stall_tolerance`, or when the
/// gradient vanishes.
Minimum bfgs(const GradientObjective& f, const Vector& x0, const BfgsOptions& options = {});

}  // namespace ramsey::optim
