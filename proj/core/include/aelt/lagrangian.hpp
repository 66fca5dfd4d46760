#pragma once

#include <functional>
#include <string>
#include <vector>

#include "aelt/gfunction.hpp"
#include "aelt/report.hpp"

namespace aelt {

// Growth and geometry constants attached to a problem instance.
struct Constants {
    double theta_F = 0.0;
    double theta_V = 0.0;
    double eps_V = 0.0;
    double Lambda = 0.0;
    double M = 0.0;
    double b = 0.0;
    double rho = 0.0;
    double p_K = 0.0;
    double zeta_F = 0.0;
    double zeta_K = 0.0;
    double zeta_W = 0.0;
    double lambda0 = 0.0;
};

// Problem data: F(t,x,v) with partials, V = K - W with gradients, forcing f,
// scalar envelope g_env, and the constants above.
struct Lagrangian {
    std::string name;
    GFunction g;
    double half_period = 1.0;  // I = [-T, T]

    std::function<double(double, const Vec&, const Vec&)> F;
    std::function<Vec(double, const Vec&, const Vec&)> F_x;
    std::function<Vec(double, const Vec&, const Vec&)> F_v;
    std::function<double(double, const Vec&)> K;
    std::function<double(double, const Vec&)> W;
    std::function<Vec(double, const Vec&)> K_x;
    std::function<Vec(double, const Vec&)> W_x;
    std::function<Vec(double)> f;
    std::function<double(double)> g_env;
    Constants c;

    bool forcing_is_zero = false;

    double V(double t, const Vec& x) const { return K(t, x) - W(t, x); }
    Vec V_x(double t, const Vec& x) const {
        Vec kx = K_x(t, x), wx = W_x(t, x);
        for (std::size_t i = 0; i < kx.size(); ++i) kx[i] -= wx[i];
        return kx;
    }
    double interval_length() const { return 2.0 * half_period; }
};

// Built-in problems. example5 is the anisotropic quadratic instance on
// I = [-1,1]; example5_f0 is the same without forcing; example5_remark swaps
// in F(t,x,v) = G(v)(2 + |x|^{9/2} - sin t).
Lagrangian example5();
Lagrangian example5_f0();
Lagrangian example5_remark();
Lagrangian problem_by_name(const std::string& name);

// Deterministic quasi-random sample cloud for the hypothesis checkers.
struct SampleCloud {
    std::vector<double> t;
    std::vector<Vec> x;
    std::vector<Vec> v;
};

SampleCloud make_cloud(const Lagrangian& L, long n_samples, double box_half_width,
                       std::uint64_t seed);

// Hypothesis checkers. Each report's worst_margin is >= 0 on pass; the
// witness is the sample achieving the minimum margin.
std::vector<CheckReport> check_F(const Lagrangian& L, const SampleCloud& cloud);
std::vector<CheckReport> check_V(const Lagrangian& L, const SampleCloud& cloud);

// Forcing smallness: integral of G*(f) + g_env against min{Lambda, b-1} rho.
CheckReport check_forcing(const Lagrangian& L);

// For each r0, search the ball |x| <= r0 for a point violating the
// legacy ball-based smallness conditions' admissible envelopes.
struct LegacyScanResolution {
    int n_r = 400;
    int n_theta = 361;
};

CheckReport check_legacy(const Lagrangian& L, const std::vector<double>& r0_grid,
                         const LegacyScanResolution& res = {});

// Scan tables for plotting.
struct ScanBox {
    double x1_min = -3.0, x1_max = 3.0;
    double x2_min = -3.0, x2_max = 3.0;
};

struct ScanRow {
    double x1 = 0.0, x2 = 0.0;
    double value = 0.0;
    bool in_A = false, in_C = false;
};

struct ScanTable {
    std::vector<ScanRow> rows;
    double max_value = 0.0;
    Vec argmax;
};

enum class HFunction { h1, h2 };

// h1 = G - V - |x|/(2C), h2 = G - V - (|x|/(2C))^2, C the embedding constant.
ScanTable scan_h(const Lagrangian& L, HFunction which, const ScanBox& box,
                 int resolution);

// Membership flags for A = {V >= bG - g} and C = {G(x/(2|I|)) <= rho/2}.
ScanTable region_scan(const Lagrangian& L, const ScanBox& box, int resolution);

}  // namespace aelt
