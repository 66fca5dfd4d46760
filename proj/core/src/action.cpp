#include "aelt/action.hpp"

#include <cmath>

#include "aelt/errors.hpp"

namespace aelt {

double action(const Lagrangian& L, const DiscreteFunction& u) {
    if (u.dim != L.g.dim) throw InputError("action: dimension mismatch");
    const DiscreteFunction du = derivative(u);
    double s = 0.0;
    for (int i = 0; i < u.grid.n; ++i) {
        const double t = u.grid.node(i);
        const Vec xi = u.node_vec(i);
        const Vec vi = du.node_vec(i);
        const double term = L.F(t, xi, vi) + L.V(t, xi) + dot(L.f(t), xi);
        if (!std::isfinite(term))
            throw NumericalError("action: non-finite integrand at node " +
                                 std::to_string(i), s);
        s += term;
    }
    return u.grid.h * s;
}

ActionEvaluation action_gradient(const Lagrangian& L, const DiscreteFunction& u) {
    if (u.dim != L.g.dim) throw InputError("action_gradient: dimension mismatch");
    const int n = u.grid.n;
    const double h = u.grid.h;
    const DiscreteFunction du = derivative(u);

    ActionEvaluation ev;
    ev.gradient = DiscreteFunction(u.grid, u.dim);

    std::vector<Vec> fv(static_cast<std::size_t>(n));
    double value = 0.0;
    for (int i = 0; i < n; ++i) {
        const double t = u.grid.node(i);
        const Vec xi = u.node_vec(i);
        const Vec vi = du.node_vec(i);
        fv[static_cast<std::size_t>(i)] = L.F_v(t, xi, vi);
        const double term = L.F(t, xi, vi) + L.V(t, xi) + dot(L.f(t), xi);
        if (!std::isfinite(term))
            throw NumericalError("action_gradient: non-finite integrand at node " +
                                 std::to_string(i), value);
        value += term;

        Vec gi = L.F_x(t, xi, vi);
        const Vec vx = L.V_x(t, xi);
        const Vec ft = L.f(t);
        for (int k = 0; k < u.dim; ++k)
            ev.gradient.at(i, k) = h * (gi[static_cast<std::size_t>(k)] +
                                        vx[static_cast<std::size_t>(k)] +
                                        ft[static_cast<std::size_t>(k)]);
    }
    ev.value = h * value;

    double res2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const int prev = (i + n - 1) % n;
        for (int k = 0; k < u.dim; ++k) {
            ev.gradient.at(i, k) += fv[static_cast<std::size_t>(prev)][static_cast<std::size_t>(k)] -
                                    fv[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
            const double r = ev.gradient.at(i, k) / h;
            res2 += r * r;
        }
    }
    ev.residual_norm = std::sqrt(h * res2);
    return ev;
}

double fd_check(const Lagrangian& L, const DiscreteFunction& u, double step) {
    if (step <= 0.0) throw InputError("fd_check: step must be positive");
    const ActionEvaluation ev = action_gradient(L, u);
    double worst = 0.0;
    DiscreteFunction up = u;
    for (int i = 0; i < u.grid.n; ++i) {
        for (int k = 0; k < u.dim; ++k) {
            const double saved = up.at(i, k);
            up.at(i, k) = saved + step;
            const double jp = action(L, up);
            up.at(i, k) = saved - step;
            const double jm = action(L, up);
            up.at(i, k) = saved;
            const double fd = (jp - jm) / (2.0 * step);
            const double g = ev.gradient.at(i, k);
            worst = std::max(worst, std::abs(fd - g) / (1.0 + std::abs(g)));
        }
    }
    return worst;
}

}  // namespace aelt
