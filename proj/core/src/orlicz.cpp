#include "aelt/orlicz.hpp"

#include <algorithm>
#include <cmath>

#include "aelt/errors.hpp"

namespace aelt {

double modular(const GFunction& g, const DiscreteFunction& u) {
    if (u.dim != g.dim) throw InputError("modular: dimension mismatch");
    Vec vals(static_cast<std::size_t>(u.grid.n));
    for (int i = 0; i < u.grid.n; ++i) vals[static_cast<std::size_t>(i)] = g.value(u.node_vec(i));
    return integrate(u.grid, vals);
}

double luxemburg_norm(const GFunction& g, const DiscreteFunction& u) {
    if (u.dim != g.dim) throw InputError("luxemburg_norm: dimension mismatch");
    if (u.is_zero()) return 0.0;

    auto mod_at = [&](double lambda) {
        DiscreteFunction v = u;
        for (double& x : v.values) x /= lambda;
        return modular(g, v);
    };

    double maxval = 0.0;
    for (int i = 0; i < u.grid.n; ++i) maxval = std::max(maxval, norm(u.node(i)));
    double lo = 1e-12;
    double hi = std::max(1.0, modular(g, u)) * (1.0 + maxval);
    int guard = 0;
    while (mod_at(hi) > 1.0) {
        hi *= 4.0;
        if (++guard > 200)
            throw NumericalError("luxemburg_norm: bracket expansion failed", hi);
    }
    while (mod_at(lo) < 1.0 && lo > 1e-300) lo *= 0.25;

    for (int it = 0; it < 500; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double m = mod_at(mid);
        if (std::abs(m - 1.0) <= 1e-8) return mid;
        (m > 1.0 ? lo : hi) = mid;
        if (hi - lo <= 1e-15 * hi) break;
    }
    return 0.5 * (lo + hi);
}

NormReport norm_report(const GFunction& g, const DiscreteFunction& u) {
    NormReport r;
    r.luxemburg = luxemburg_norm(g, u);
    r.modular = modular(g, u);
    const double eps = 1e-10;
    if (r.luxemburg > 1.0 + eps) r.relation_side = NormReport::Side::above_one;
    else if (r.luxemburg < 1.0 - eps) r.relation_side = NormReport::Side::below_one;
    else r.relation_side = NormReport::Side::at_one;
    return r;
}

double sobolev_norm(const GFunction& g, const DiscreteFunction& u) {
    return luxemburg_norm(g, u) + luxemburg_norm(g, derivative(u));
}

GFunction conjugate_function(const GFunction& g) {
    GFunction c;
    c.dim = g.dim;
    if (g.has_analytic_conjugate()) {
        c.value = g.analytic_conjugate;
    } else {
        c.value = [g](const Vec& y) { return conjugate_numeric(g, y); };
    }
    // gradient of G* by central differences; G** = G
    c.gradient = [c_val = c.value](const Vec& y) {
        Vec out(y.size());
        Vec yp = y;
        for (std::size_t k = 0; k < y.size(); ++k) {
            const double fd = 1e-6 * (1.0 + std::abs(y[k]));
            yp[k] = y[k] + fd;
            const double up = c_val(yp);
            yp[k] = y[k] - fd;
            const double um = c_val(yp);
            yp[k] = y[k];
            out[k] = (up - um) / (2.0 * fd);
        }
        return out;
    };
    c.analytic_conjugate = g.value;
    return c;
}

double embedding_constant(const GFunction& g, double interval_length) {
    if (interval_length < 1.0)
        throw InputError("embedding_constant: interval length must be >= 1");
    const double y = 1.0 / interval_length;
    // Expand r_max until the minorant table covers the target value.
    double r_max = 1.0;
    ConvexMinorant a = convex_minorant(g, r_max);
    int guard = 0;
    while (a.values.back() < 1.5 * y) {
        r_max *= 2.0;
        a = convex_minorant(g, r_max);
        if (++guard > 60)
            throw NumericalError("embedding_constant: minorant never reaches 1/|I|", r_max);
    }
    return std::max(1.0, interval_length) * minorant_inverse(a, y);
}

double holder_gap(const GFunction& g, const DiscreteFunction& u,
                  const DiscreteFunction& v) {
    if (u.dim != v.dim || !(u.grid == v.grid))
        throw InputError("holder_gap: u and v must share a grid and dimension");
    const GFunction gc = conjugate_function(g);
    const double nu = luxemburg_norm(g, u);
    const double nv = luxemburg_norm(gc, v);
    Vec prod(static_cast<std::size_t>(u.grid.n));
    for (int i = 0; i < u.grid.n; ++i)
        prod[static_cast<std::size_t>(i)] = dot(u.node(i), v.node(i));
    return 2.0 * nu * nv - integrate(u.grid, prod);
}

CheckReport brezis_lieb_check(const GFunction& g, const Vec& x, const Vec& y,
                              double k, double eps) {
    if (!(k > 1.0)) throw InputError("brezis_lieb_check: k must exceed 1");
    if (!(eps > 0.0 && eps < 1.0 / k))
        throw InputError("brezis_lieb_check: eps must lie in (0, 1/k)");
    const double c_eps = 1.0 / (eps * (k - 1.0));

    Vec xy(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) xy[i] = x[i] + y[i];
    const double lhs = std::abs(eval_g(g, xy) - eval_g(g, x));
    const double rhs = eps * std::abs(eval_g(g, scaled(x, k)) - k * eval_g(g, x)) +
                       2.0 * eval_g(g, scaled(y, c_eps));

    CheckReport rep;
    rep.name = "brezis_lieb";
    rep.samples_used = 1;
    rep.worst_margin = rhs + 1e-10 - lhs;
    rep.status = rep.worst_margin >= 0.0 ? CheckStatus::pass : CheckStatus::fail;
    rep.witness_x = x;
    rep.witness_v = y;
    rep.details["lhs"] = lhs;
    rep.details["rhs"] = rhs;
    rep.details["C_eps"] = c_eps;
    return rep;
}

std::vector<double> modular_coercivity_probe(const GFunction& g,
                                             const DiscreteFunction& u,
                                             const std::vector<double>& scales) {
    if (u.is_zero()) throw InputError("modular_coercivity_probe: u is identically zero");
    std::vector<double> out;
    out.reserve(scales.size());
    for (double s : scales) {
        DiscreteFunction v = u;
        for (double& x : v.values) x *= s;
        out.push_back(modular(g, v) / luxemburg_norm(g, v));
    }
    return out;
}

}  // namespace aelt
