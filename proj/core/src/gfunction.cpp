#include "aelt/gfunction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "aelt/errors.hpp"

namespace aelt {

namespace {

void require_dim(const GFunction& g, const Vec& x, const char* who) {
    if (static_cast<int>(x.size()) != g.dim)
        throw InputError(std::string(who) + ": argument has dimension " +
                         std::to_string(x.size()) + ", expected " + std::to_string(g.dim));
}

// Solve A d = b in place, A is n x n row-major. Partial pivoting.
bool solve_linear(std::vector<double> A, Vec b, Vec& d) {
    const int n = static_cast<int>(b.size());
    for (int c = 0; c < n; ++c) {
        int p = c;
        for (int r = c + 1; r < n; ++r)
            if (std::abs(A[r * n + c]) > std::abs(A[p * n + c])) p = r;
        if (std::abs(A[p * n + c]) < 1e-300) return false;
        if (p != c) {
            for (int k = 0; k < n; ++k) std::swap(A[p * n + k], A[c * n + k]);
            std::swap(b[p], b[c]);
        }
        for (int r = c + 1; r < n; ++r) {
            double m = A[r * n + c] / A[c * n + c];
            for (int k = c; k < n; ++k) A[r * n + k] -= m * A[c * n + k];
            b[r] -= m * b[c];
        }
    }
    d.assign(b.size(), 0.0);
    for (int r = n - 1; r >= 0; --r) {
        double s = b[r];
        for (int k = r + 1; k < n; ++k) s -= A[r * n + k] * d[k];
        d[r] = s / A[r * n + r];
    }
    return true;
}

}  // namespace

GFunction example_quadratic() {
    GFunction g;
    g.dim = 2;
    g.value = [](const Vec& v) {
        const double d = v[0] - v[1];
        return v[0] * v[0] + d * d;
    };
    g.gradient = [](const Vec& v) {
        return Vec{4.0 * v[0] - 2.0 * v[1], -2.0 * v[0] + 2.0 * v[1]};
    };
    // Quadratic form x'Qx with Q = [[2,-1],[-1,1]]; conjugate is y'Q^{-1}y/4.
    g.analytic_conjugate = [](const Vec& y) {
        return (y[0] * y[0] + 2.0 * y[0] * y[1] + 2.0 * y[1] * y[1]) / 4.0;
    };
    return g;
}

GFunction pnorm(int dim, double p) {
    if (dim < 1) throw InputError("pnorm: dim must be positive");
    if (p <= 1.0) throw InputError("pnorm: exponent must exceed 1");
    GFunction g;
    g.dim = dim;
    g.value = [p](const Vec& x) { return std::pow(norm(x), p); };
    g.gradient = [p](const Vec& x) {
        const double r = norm(x);
        if (r == 0.0) return Vec(x.size(), 0.0);
        return scaled(x, p * std::pow(r, p - 2.0));
    };
    const double q = p / (p - 1.0);
    const double c = (1.0 - 1.0 / p) * std::pow(1.0 / p, 1.0 / (p - 1.0));
    g.analytic_conjugate = [q, c](const Vec& y) { return c * std::pow(norm(y), q); };
    return g;
}

GFunction gfunction_by_name(const std::string& name, int dim, double p) {
    if (name == "example5") return example_quadratic();
    if (name == "pnorm") return pnorm(dim, p);
    throw InputError("unknown G-function: " + name);
}

double eval_g(const GFunction& g, const Vec& x) {
    require_dim(g, x, "eval_g");
    return g.value(x);
}

Vec grad_g(const GFunction& g, const Vec& x) {
    require_dim(g, x, "grad_g");
    return g.gradient(x);
}

double conjugate_numeric(const GFunction& g, const Vec& y) {
    require_dim(g, y, "conjugate");
    const int n = g.dim;
    const double ynorm = norm(y);
    auto phi = [&](const Vec& x) { return dot(x, y) - g.value(x); };
    if (ynorm == 0.0) return 0.0;  // G >= 0 and G(0) = 0

    // Seed: best point of a coarse grid over a |y|-scaled box.
    const double R = 2.0 * (1.0 + ynorm);
    Vec x(n, 0.0);
    double best = 0.0;
    if (n <= 3) {
        const int m = 41;
        Vec cand(n);
        long total = 1;
        for (int k = 0; k < n; ++k) total *= m;
        for (long idx = 0; idx < total; ++idx) {
            long rem = idx;
            for (int k = 0; k < n; ++k) {
                cand[k] = -R + 2.0 * R * static_cast<double>(rem % m) / (m - 1);
                rem /= m;
            }
            const double v = phi(cand);
            if (v > best) { best = v; x = cand; }
        }
    } else {
        for (long idx = 0; idx < 4096; ++idx) {
            Vec cand = halton(static_cast<std::uint64_t>(idx), n);
            for (int k = 0; k < n; ++k) cand[k] = -R + 2.0 * R * cand[k];
            const double v = phi(cand);
            if (v > best) { best = v; x = cand; }
        }
    }

    // Damped Newton on grad G(x) = y with finite-difference Hessian.
    const double tol = 1e-12 * (1.0 + ynorm);
    for (int it = 0; it < 100; ++it) {
        Vec gr = g.gradient(x);
        Vec res(n);
        double rn = 0.0;
        for (int k = 0; k < n; ++k) { res[k] = y[k] - gr[k]; rn += res[k] * res[k]; }
        rn = std::sqrt(rn);
        best = std::max(best, phi(x));
        if (rn <= tol) return phi(x);

        const double fd = 1e-6 * (1.0 + norm(x));
        std::vector<double> H(static_cast<std::size_t>(n) * n);
        Vec xp = x;
        for (int c = 0; c < n; ++c) {
            xp[c] = x[c] + fd;
            Vec gp = g.gradient(xp);
            xp[c] = x[c] - fd;
            Vec gm = g.gradient(xp);
            xp[c] = x[c];
            for (int r = 0; r < n; ++r) H[r * n + c] = (gp[r] - gm[r]) / (2.0 * fd);
        }
        Vec d;
        bool have_dir = solve_linear(H, res, d);
        if (!have_dir) d = res;  // singular Hessian: fall back to ascent direction

        double alpha = 1.0;
        const double phi0 = phi(x);
        bool moved = false;
        for (int ls = 0; ls < 60; ++ls) {
            Vec xt = x;
            axpy(alpha, d, xt);
            if (phi(xt) > phi0) { x = xt; moved = true; break; }
            alpha *= 0.5;
        }
        if (!moved) {
            // Stationary up to line-search resolution; accept if residual small.
            if (rn <= 1e-6 * (1.0 + ynorm)) return phi(x);
            throw NumericalError("conjugate: Newton stalled at residual " +
                                 std::to_string(rn), best);
        }
    }
    Vec gr = g.gradient(x);
    double rn = 0.0;
    for (int k = 0; k < n; ++k) rn += (y[k] - gr[k]) * (y[k] - gr[k]);
    if (std::sqrt(rn) <= 1e-6 * (1.0 + ynorm)) return phi(x);
    throw NumericalError("conjugate: no convergence in 100 Newton iterations", best);
}

double conjugate(const GFunction& g, const Vec& y) {
    require_dim(g, y, "conjugate");
    if (g.has_analytic_conjugate()) return g.analytic_conjugate(y);
    return conjugate_numeric(g, y);
}

namespace {

CheckReport doubling_report(const std::string& name,
                            const std::function<double(const Vec&)>& f,
                            const std::vector<Vec>& samples, double threshold) {
    CheckReport rep;
    rep.name = name;
    rep.notes = "empirical doubling bound at infinity, threshold |x| >= " +
                std::to_string(threshold);
    double khat = 0.0;
    Vec wit;
    long used = 0;
    for (const auto& x : samples) {
        if (norm(x) < threshold) continue;
        ++used;
        const double fx = f(x);
        const double f2x = f(scaled(x, 2.0));
        if (fx <= 0.0) {
            if (f2x > 0.0) {
                rep.status = CheckStatus::fail;
                rep.worst_margin = -std::numeric_limits<double>::infinity();
                rep.witness_x = x;
                rep.samples_used = used;
                rep.notes += "; unbounded ratio (value 0 with nonzero double)";
                return rep;
            }
            continue;
        }
        const double ratio = f2x / fx;
        if (ratio > khat) { khat = ratio; wit = x; }
    }
    rep.samples_used = used;
    if (used == 0) {
        rep.status = CheckStatus::inconclusive;
        rep.notes += "; no samples above threshold";
        return rep;
    }
    rep.status = std::isfinite(khat) ? CheckStatus::pass : CheckStatus::fail;
    rep.details["K_hat"] = khat;
    rep.worst_margin = khat;
    rep.witness_x = wit;
    return rep;
}

}  // namespace

CheckReport check_delta2(const GFunction& g, const std::vector<Vec>& ray_samples,
                         double radius_threshold) {
    if (ray_samples.empty()) throw InputError("check_delta2: empty sample set");
    return doubling_report("delta2", [&](const Vec& x) { return eval_g(g, x); },
                           ray_samples, radius_threshold);
}

CheckReport check_nabla2(const GFunction& g, const std::vector<Vec>& ray_samples,
                         double radius_threshold) {
    if (ray_samples.empty()) throw InputError("check_nabla2: empty sample set");
    return doubling_report("nabla2",
                           [&](const Vec& x) { return conjugate_numeric(g, x); },
                           ray_samples, radius_threshold);
}

double ConvexMinorant::operator()(double r) const {
    if (r <= radii.front()) return values.front();
    if (r >= radii.back()) {
        // linear continuation of the last segment
        const std::size_t m = radii.size();
        const double s = (values[m - 1] - values[m - 2]) / (radii[m - 1] - radii[m - 2]);
        return values[m - 1] + s * (r - radii[m - 1]);
    }
    auto it = std::upper_bound(radii.begin(), radii.end(), r);
    const std::size_t i = static_cast<std::size_t>(it - radii.begin());
    const double w = (r - radii[i - 1]) / (radii[i] - radii[i - 1]);
    return values[i - 1] + w * (values[i] - values[i - 1]);
}

ConvexMinorant convex_minorant(const GFunction& g, double r_max, int n_r,
                               int n_sphere, std::uint64_t seed) {
    if (r_max <= 0.0) throw InputError("convex_minorant: r_max must be positive");
    if (n_r < 2) throw InputError("convex_minorant: n_r must be >= 2");
    if (n_sphere < 4) throw InputError("convex_minorant: n_sphere must be >= 4");

    std::vector<Vec> dirs;
    dirs.reserve(static_cast<std::size_t>(n_sphere));
    if (g.dim == 2) {
        // G is even, so half a turn covers the sphere of directions.
        for (int k = 0; k < n_sphere; ++k) {
            const double th = M_PI * static_cast<double>(k) / n_sphere;
            dirs.push_back(Vec{std::cos(th), std::sin(th)});
        }
    } else {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> nd(0.0, 1.0);
        for (int k = 0; k < n_sphere; ++k) {
            Vec d(static_cast<std::size_t>(g.dim));
            double r = 0.0;
            while (r < 1e-12) {
                for (auto& c : d) c = nd(rng);
                r = norm(d);
            }
            dirs.push_back(scaled(d, 1.0 / r));
        }
    }

    std::vector<double> radii(static_cast<std::size_t>(n_r));
    std::vector<double> minima(static_cast<std::size_t>(n_r));
    for (int i = 0; i < n_r; ++i) {
        const double r = r_max * static_cast<double>(i) / (n_r - 1);
        radii[static_cast<std::size_t>(i)] = r;
        double m = std::numeric_limits<double>::infinity();
        for (const auto& d : dirs) m = std::min(m, g.value(scaled(d, r)));
        minima[static_cast<std::size_t>(i)] = m;
    }
    minima[0] = 0.0;  // G(0) = 0 by definition

    // Lower convex hull of (radii, minima) by monotone chain.
    std::vector<std::size_t> hull;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        while (hull.size() >= 2) {
            const std::size_t a = hull[hull.size() - 2], b = hull[hull.size() - 1];
            const double cross = (radii[b] - radii[a]) * (minima[i] - minima[a]) -
                                 (minima[b] - minima[a]) * (radii[i] - radii[a]);
            if (cross <= 0.0) hull.pop_back();
            else break;
        }
        hull.push_back(i);
    }

    ConvexMinorant out;
    out.radii = radii;
    out.values.resize(radii.size());
    std::size_t seg = 0;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        while (seg + 1 < hull.size() && radii[hull[seg + 1]] <= radii[i]) ++seg;
        if (seg + 1 == hull.size()) {
            out.values[i] = minima[hull[seg]];
        } else {
            const std::size_t a = hull[seg], b = hull[seg + 1];
            const double w = (radii[i] - radii[a]) / (radii[b] - radii[a]);
            out.values[i] = minima[a] + w * (minima[b] - minima[a]);
        }
    }
    return out;
}

double minorant_inverse(const ConvexMinorant& a, double y) {
    if (y < 0.0 || y > a.values.back())
        throw InputError("minorant_inverse: value outside table range");
    if (y == 0.0) return 0.0;
    auto it = std::lower_bound(a.values.begin(), a.values.end(), y);
    std::size_t i = static_cast<std::size_t>(it - a.values.begin());
    if (i == 0) return a.radii.front();
    const double dv = a.values[i] - a.values[i - 1];
    if (dv <= 0.0) return a.radii[i - 1];
    const double w = (y - a.values[i - 1]) / dv;
    return a.radii[i - 1] + w * (a.radii[i] - a.radii[i - 1]);
}

}  // namespace aelt
