#pragma once

#include <functional>
#include <optional>
#include <string>

#include "aelt/report.hpp"
#include "aelt/util.hpp"

namespace aelt {

// A convex, even, coercive function on R^N with G(0)=0, together with its
// gradient and, when known in closed form, its Fenchel conjugate. Values are
// immutable after construction; all operations on them are pure.
struct GFunction {
    int dim = 0;
    std::function<double(const Vec&)> value;
    std::function<Vec(const Vec&)> gradient;
    std::function<double(const Vec&)> analytic_conjugate;  // may be empty

    bool has_analytic_conjugate() const { return static_cast<bool>(analytic_conjugate); }
};

// G(v) = v1^2 + (v1 - v2)^2, the built-in anisotropic quadratic form on R^2.
GFunction example_quadratic();

// Isotropic G(x) = |x|^p, p > 1, on R^dim.
GFunction pnorm(int dim, double p);

// Lookup by config name: "example5" or "pnorm" (p via parameter).
GFunction gfunction_by_name(const std::string& name, int dim = 2, double p = 2.0);

double eval_g(const GFunction& g, const Vec& x);
Vec grad_g(const GFunction& g, const Vec& x);

// Fenchel conjugate G*(y) = sup_x <x,y> - G(x). Uses the analytic form when
// present; conjugate_numeric is the grid-seeded damped-Newton path and is
// always available for cross-checks.
double conjugate(const GFunction& g, const Vec& y);
double conjugate_numeric(const GFunction& g, const Vec& y);

// Empirical doubling-constant certification at infinity:
// K_hat = max { G(2x)/G(x) : |x| >= radius_threshold }.
CheckReport check_delta2(const GFunction& g, const std::vector<Vec>& ray_samples,
                         double radius_threshold);

// Same check applied to the numerically evaluated conjugate G*.
CheckReport check_nabla2(const GFunction& g, const std::vector<Vec>& ray_samples,
                         double radius_threshold);

// Tabulated greatest convex minorant A_G: lower convex envelope of
// r -> min_{|x|=r} G(x), piecewise linear, nondecreasing, A_G(0)=0.
struct ConvexMinorant {
    std::vector<double> radii;
    std::vector<double> values;

    double operator()(double r) const;
};

ConvexMinorant convex_minorant(const GFunction& g, double r_max, int n_r = 256,
                               int n_sphere = 720, std::uint64_t seed = 0);

// Monotone piecewise-linear inversion: the r with A_G(r) = y.
double minorant_inverse(const ConvexMinorant& a, double y);

}  // namespace aelt
