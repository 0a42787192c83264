#include "ramsey/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <vector>

namespace ramsey::optim {

ScalarMinimum golden_section(const std::function<double(double)>& f, double lo, double hi,
                             double xtol, std::size_t max_iterations) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (std::size_t it = 0; it < max_iterations && (b - a) > xtol; ++it) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return fc <= fd ? ScalarMinimum{c, fc} : ScalarMinimum{d, fd};
}

Minimum nelder_mead(const std::function<double(const Vector&)>& f, const Vector& x0,
                    const NelderMeadOptions& options) {
    const auto n = x0.size();
    std::vector<Vector> simplex;
    std::vector<double> values;
    simplex.reserve(static_cast<std::size_t>(n + 1));
    simplex.push_back(x0);
    for (Eigen::Index k = 0; k < n; ++k) {
        Vector v = x0;
        v(k) += options.initial_step;
        simplex.push_back(std::move(v));
    }
    for (const auto& v : simplex) {
        values.push_back(f(v));
    }

    std::vector<std::size_t> order(simplex.size());
    auto sort_simplex = [&] {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        std::vector<Vector> s;
        std::vector<double> fv;
        for (auto idx : order) {
            s.push_back(simplex[idx]);
            fv.push_back(values[idx]);
        }
        simplex = std::move(s);
        values = std::move(fv);
    };
    auto diameter = [&] {
        double dmax = 0.0;
        for (std::size_t k = 1; k < simplex.size(); ++k) {
            dmax = std::max(dmax, (simplex[k] - simplex[0]).cwiseAbs().maxCoeff());
        }
        return dmax;
    };

    sort_simplex();
    std::size_t it = 0;
    bool converged = diameter() <= options.diameter_tolerance;
    for (; it < options.max_iterations && !converged; ++it) {
        const std::size_t worst = simplex.size() - 1;
        Vector centroid = Vector::Zero(n);
        for (std::size_t k = 0; k < worst; ++k) {
            centroid += simplex[k];
        }
        centroid /= static_cast<double>(worst);

        const Vector reflected = centroid + (centroid - simplex[worst]);
        const double fr = f(reflected);
        if (fr < values[0]) {
            const Vector expanded = centroid + 2.0 * (centroid - simplex[worst]);
            const double fe = f(expanded);
            if (fe < fr) {
                simplex[worst] = expanded;
                values[worst] = fe;
            } else {
                simplex[worst] = reflected;
                values[worst] = fr;
            }
        } else if (fr < values[worst - 1]) {
            simplex[worst] = reflected;
            values[worst] = fr;
        } else {
            const bool outside = fr < values[worst];
            const Vector contracted = outside ? Vector(centroid + 0.5 * (reflected - centroid))
                                              : Vector(centroid + 0.5 * (simplex[worst] - centroid));
            const double fc = f(contracted);
            if (fc < std::min(fr, values[worst])) {
                simplex[worst] = contracted;
                values[worst] = fc;
            } else {
                for (std::size_t k = 1; k < simplex.size(); ++k) {
                    simplex[k] = simplex[0] + 0.5 * (simplex[k] - simplex[0]);
                    values[k] = f(simplex[k]);
                }
            }
        }
        sort_simplex();
        converged = diameter() <= options.diameter_tolerance;
    }
    return {simplex[0], values[0], it, converged};
}

Minimum bfgs(const GradientObjective& f, const Vector& x0, const BfgsOptions& options) {
    const auto n = x0.size();
    Vector x = x0;
    Vector g(n);
    double fx = f(x, g);
    Matrix h = Matrix::Identity(n, n);
    std::deque<double> history{fx};

    Vector g_new(n);
    for (std::size_t it = 1; it <= options.max_iterations; ++it) {
        if (g.cwiseAbs().maxCoeff() == 0.0) {
            return {x, fx, it, true};
        }
        Vector dir = -h * g;
        double slope = g.dot(dir);
        if (!(slope < 0.0)) {
            h.setIdentity();
            dir = -g;
            slope = -g.squaredNorm();
        }
        double step = 1.0;
        Vector x_new(n);
        double f_new = fx;
        bool accepted = false;
        for (int ls = 0; ls < 60; ++ls) {
            x_new = x + step * dir;
            f_new = f(x_new, g_new);
            if (std::isfinite(f_new) && f_new <= fx + 1e-4 * step * slope) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            // No descent at machine precision: the minimum is resolved.
            return {x, fx, it, true};
        }
        const Vector s = x_new - x;
        const Vector y = g_new - g;
        const double sy = s.dot(y);
        if (sy > 1e-300) {
            const double rho = 1.0 / sy;
            const Matrix eye = Matrix::Identity(n, n);
            h = (eye - rho * s * y.transpose()) * h * (eye - rho * y * s.transpose()) +
                rho * s * s.transpose();
        }
        x = x_new;
        fx = f_new;
        g = g_new;

        history.push_back(fx);
        if (history.size() > options.stall_window + 1) {
            history.pop_front();
        }
        if (history.size() == options.stall_window + 1) {
            const double old = history.front();
            if ((old - fx) <= options.stall_tolerance * std::abs(fx)) {
                return {x, fx, it, true};
            }
        }
    }
    return {x, fx, options.max_iterations, false};
}

}  // namespace ramsey::optim
