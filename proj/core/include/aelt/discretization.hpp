#pragma once

#include "aelt/gfunction.hpp"
#include "aelt/util.hpp"

namespace aelt {

// Uniform periodic grid on I = [-T, T]; node n is identified with node 0.
struct Grid {
    double T = 0.0;
    int n = 0;
    double h = 0.0;

    double node(int i) const { return -T + h * static_cast<double>(i); }
    double length() const { return 2.0 * T; }
    bool operator==(const Grid&) const = default;
};

// |I| >= 1, n >= 4 and even.
Grid make_grid(double T, int n);

// Nodal values of a periodic R^dim-valued function; no duplicated endpoint.
struct DiscreteFunction {
    Grid grid;
    int dim = 0;
    Vec values;  // n x dim, node-major

    DiscreteFunction() = default;
    DiscreteFunction(Grid g, int d) : grid(g), dim(d), values(static_cast<std::size_t>(g.n) * d, 0.0) {}

    double& at(int node, int k) { return values[static_cast<std::size_t>(node) * dim + k]; }
    double at(int node, int k) const { return values[static_cast<std::size_t>(node) * dim + k]; }
    std::span<const double> node(int i) const {
        return {values.data() + static_cast<std::size_t>(i) * dim, static_cast<std::size_t>(dim)};
    }
    std::span<double> node(int i) {
        return {values.data() + static_cast<std::size_t>(i) * dim, static_cast<std::size_t>(dim)};
    }
    Vec node_vec(int i) const {
        return Vec(values.begin() + static_cast<std::ptrdiff_t>(i) * dim,
                   values.begin() + static_cast<std::ptrdiff_t>(i + 1) * dim);
    }
    bool is_zero() const {
        for (double v : values) if (v != 0.0) return false;
        return true;
    }
};

// Forward difference with periodic wrap: (u_{i+1} - u_i)/h.
DiscreteFunction derivative(const DiscreteFunction& u);

// Periodic rectangle rule h * sum (= trapezoid on a periodic grid).
double integrate(const Grid& grid, const Vec& node_values);

// Phi(u) = R_G(u') + R_G(u), the sublevel functional defining Omega.
double phi(const GFunction& g, const DiscreteFunction& u);

// Scale u onto the level set Phi = rho: returns s*u with |phi(s*u) - rho| <= 1e-10.
DiscreteFunction project_to_boundary(const GFunction& g, const DiscreteFunction& u,
                                     double rho);

}  // namespace aelt
