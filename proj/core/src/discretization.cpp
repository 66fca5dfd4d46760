#include "aelt/discretization.hpp"

#include <cmath>

#include "aelt/errors.hpp"
#include "aelt/orlicz.hpp"

namespace aelt {

Grid make_grid(double T, int n) {
    if (2.0 * T < 1.0)
        throw DomainError("make_grid: |I| = " + std::to_string(2.0 * T) +
                          " < 1; the interval must have length at least 1");
    if (n < 4) throw InputError("make_grid: n must be >= 4");
    if (n % 2 != 0) throw InputError("make_grid: n must be even");
    Grid g;
    g.T = T;
    g.n = n;
    g.h = 2.0 * T / static_cast<double>(n);
    return g;
}

DiscreteFunction derivative(const DiscreteFunction& u) {
    DiscreteFunction d(u.grid, u.dim);
    const int n = u.grid.n;
    for (int i = 0; i < n; ++i) {
        const int j = (i + 1) % n;
        for (int k = 0; k < u.dim; ++k)
            d.at(i, k) = (u.at(j, k) - u.at(i, k)) / u.grid.h;
    }
    return d;
}

double integrate(const Grid& grid, const Vec& node_values) {
    if (static_cast<int>(node_values.size()) != grid.n)
        throw InputError("integrate: expected " + std::to_string(grid.n) + " node values");
    double s = 0.0;
    for (double v : node_values) s += v;
    return grid.h * s;
}

double phi(const GFunction& g, const DiscreteFunction& u) {
    return modular(g, derivative(u)) + modular(g, u);
}

DiscreteFunction project_to_boundary(const GFunction& g, const DiscreteFunction& u,
                                     double rho) {
    if (rho <= 0.0) throw InputError("project_to_boundary: rho must be positive");
    if (u.is_zero()) throw InputError("project_to_boundary: u is identically zero");

    auto scaled_u = [&](double s) {
        DiscreteFunction v = u;
        for (double& x : v.values) x *= s;
        return v;
    };
    auto f = [&](double s) { return phi(g, scaled_u(s)); };

    // s -> phi(s u) is strictly increasing from phi(0) = 0 (convexity through 0).
    double lo = 0.0, hi = 1.0;
    while (f(hi) < rho) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e12)
            throw NumericalError("project_to_boundary: bracket expansion failed", f(lo));
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double v = f(mid);
        if (std::abs(v - rho) <= 1e-10) return scaled_u(mid);
        (v < rho ? lo : hi) = mid;
    }
    return scaled_u(0.5 * (lo + hi));
}

}  // namespace aelt
