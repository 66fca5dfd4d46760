#include "aelt/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "aelt/orlicz.hpp"

namespace aelt {

namespace {

constexpr double kArmijo = 1e-4;
constexpr double kMinStep = 1e-16;
constexpr int kStallSweeps = 50;
constexpr double kStallDrop = 1e-14;

double path_distance(const DiscreteFunction& a, const DiscreteFunction& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        const double d = a.values[i] - b.values[i];
        s += d * d;
    }
    return std::sqrt(s);
}

DiscreteFunction lerp(const DiscreteFunction& a, const DiscreteFunction& b, double t) {
    DiscreteFunction r = a;
    for (std::size_t i = 0; i < r.values.size(); ++i)
        r.values[i] = (1.0 - t) * a.values[i] + t * b.values[i];
    return r;
}

// -gradient/h: the nodal Euler-Lagrange residual field, a mesh-independent
// descent direction whose directional derivative equals -residual_norm^2.
DiscreteFunction descent_direction(const ActionEvaluation& eval) {
    DiscreteFunction d = eval.gradient;
    const double inv_h = 1.0 / d.grid.h;
    for (double& v : d.values) v *= -inv_h;
    return d;
}

// Trial evaluations may wander into overflow territory; treat those as +inf
// so the line search simply rejects them.
double safe_action(const Lagrangian& L, const DiscreteFunction& u) {
    try {
        return action(L, u);
    } catch (const NumericalError&) {
        return std::numeric_limits<double>::infinity();
    }
}

// Backtracking Armijo step along d from u. Returns the accepted step size,
// or 0 when no step down to kMinStep decreases the action enough.
double armijo_step(const Lagrangian& L, DiscreteFunction& u, double value,
                   const DiscreteFunction& d, double residual) {
    const double slope = residual * residual;  // = -J'(u)[d]
    for (double alpha = 1.0; alpha >= kMinStep; alpha *= 0.5) {
        DiscreteFunction w = u;
        axpy(alpha, d.values, w.values);
        const double jw = safe_action(L, w);
        if (std::isfinite(jw) && jw <= value - kArmijo * alpha * slope) {
            u = std::move(w);
            return alpha;
        }
    }
    return 0.0;
}

// Redistribute interior nodes uniformly along the polygonal path.
std::vector<DiscreteFunction> respace(const std::vector<DiscreteFunction>& nodes) {
    const std::size_t m = nodes.size();
    std::vector<double> cum(m, 0.0);
    for (std::size_t k = 1; k < m; ++k)
        cum[k] = cum[k - 1] + path_distance(nodes[k - 1], nodes[k]);
    const double total = cum.back();
    if (total <= 0.0) return nodes;
    std::vector<DiscreteFunction> out;
    out.reserve(m);
    out.push_back(nodes.front());
    std::size_t seg = 0;
    for (std::size_t j = 1; j + 1 < m; ++j) {
        const double target = total * static_cast<double>(j) / static_cast<double>(m - 1);
        while (seg + 2 < m && cum[seg + 1] < target) ++seg;
        const double len = cum[seg + 1] - cum[seg];
        const double t = len > 0.0 ? (target - cum[seg]) / len : 0.0;
        out.push_back(lerp(nodes[seg], nodes[seg + 1], t));
    }
    out.push_back(nodes.back());
    return out;
}

bool lex_less(const Vec& a, const Vec& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

DiscreteFunction default_psi(const Lagrangian& L, const Grid& grid) {
    const int dim = L.g.dim;
    DiscreteFunction psi(grid, dim);
    const double c = 1.0 / std::sqrt(static_cast<double>(dim));
    for (double& v : psi.values) v = c;
    return psi;
}

DiscreteFunction find_e1(const Lagrangian& L, const DiscreteFunction& psi,
                         double rho, double lambda_max) {
    if (psi.is_zero())
        throw InputError("find_e1: psi is identically zero");
    for (double lambda = 1.0; lambda <= lambda_max; lambda *= 2.0) {
        DiscreteFunction e = psi;
        for (double& v : e.values) v *= lambda;
        if (action(L, e) < 0.0 && phi(L.g, e) > rho) return e;
    }
    std::ostringstream msg;
    msg << "find_e1: no lambda <= " << lambda_max
        << " gives J < 0 and Phi > rho; the superquadratic growth hypotheses "
           "on W may fail along psi";
    throw SearchFailure(msg.str());
}

double boundary_infimum(const Lagrangian& L, const Grid& grid, double rho,
                        int n_directions, std::uint64_t seed) {
    if (n_directions < 1)
        throw InputError("boundary_infimum: n_directions must be >= 1");
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 12345ULL);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const int dim = L.g.dim;
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k < n_directions; ++k) {
        DiscreteFunction u(grid, dim);
        if (k == 0) {
            u = default_psi(L, grid);
        } else {
            for (double& v : u.values) v = unit(rng);
        }
        const DiscreteFunction w = project_to_boundary(L.g, u, rho);
        best = std::min(best, action(L, w));
    }
    return best;
}

namespace {

// In-place Gaussian elimination with partial pivoting; solves A x = b.
Vec solve_dense(std::vector<Vec> a, Vec b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (a[piv][col] == 0.0)
            throw NumericalError("mountain_pass: singular Hessian in polish", 0.0);
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r][col] / a[col][col];
            if (f == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    Vec x(n, 0.0);
    for (std::size_t r = n; r-- > 0;) {
        double s = b[r];
        for (std::size_t c = r + 1; c < n; ++c) s -= a[r][c] * x[c];
        x[r] = s / a[r][r];
    }
    return x;
}

// Polish a saddle candidate with damped Newton on grad J(u) = 0, using a
// finite-difference Hessian of the discrete action. Newton does not care
// about the sign of the curvature, so saddles are as good as minima.
long polish_saddle(const Lagrangian& L, DiscreteFunction& u, double tol,
                   long budget, std::vector<std::pair<double, double>>* trace) {
    const std::size_t dim = u.values.size();
    const long max_newton = std::min<long>(budget, 200);
    for (long it = 0; it < max_newton; ++it) {
        const ActionEvaluation eval = action_gradient(L, u);
        if (trace) trace->emplace_back(eval.value, eval.residual_norm);
        if (eval.residual_norm <= tol) return it;

        // Column-wise FD Hessian of the discrete action.
        std::vector<Vec> h(dim, Vec(dim, 0.0));
        for (std::size_t i = 0; i < dim; ++i) {
            const double delta = 1e-6 * (1.0 + std::abs(u.values[i]));
            DiscreteFunction probe = u;
            probe.values[i] += delta;
            const Vec gp = action_gradient(L, probe).gradient.values;
            for (std::size_t r = 0; r < dim; ++r)
                h[r][i] = (gp[r] - eval.gradient.values[r]) / delta;
        }
        for (std::size_t r = 0; r < dim; ++r)  // symmetrize
            for (std::size_t c = r + 1; c < dim; ++c)
                h[r][c] = h[c][r] = 0.5 * (h[r][c] + h[c][r]);

        const Vec step = solve_dense(std::move(h), scaled(eval.gradient.values, -1.0));
        bool accepted = false;
        for (double alpha = 1.0; alpha >= 1e-8; alpha *= 0.5) {
            DiscreteFunction w = u;
            axpy(alpha, step, w.values);
            double res_w;
            try {
                res_w = action_gradient(L, w).residual_norm;
            } catch (const NumericalError&) {
                continue;
            }
            if (res_w <= (1.0 - kArmijo * alpha) * eval.residual_norm) {
                u = std::move(w);
                accepted = true;
                break;
            }
        }
        if (!accepted)
            throw NonConvergence("mountain_pass: Newton polish stalled above tolerance",
                                 trace ? *trace : std::vector<std::pair<double, double>>{});
    }
    throw NonConvergence("mountain_pass: polish budget exhausted",
                         trace ? *trace : std::vector<std::pair<double, double>>{});
}

DiscreteFunction constant_field(const Grid& grid, const Vec& x) {
    DiscreteFunction u(grid, static_cast<int>(x.size()));
    for (int i = 0; i < grid.n; ++i)
        for (std::size_t kk = 0; kk < x.size(); ++kk)
            u.at(i, static_cast<int>(kk)) = x[kk];
    return u;
}

// Saddle seed from the reduction to constant fields: along every ray the
// action rises and then falls, so max over the radius followed by min over
// the direction sits next to the lowest pass of the ridge. Planar problems
// only; other dimensions fall back to the path candidate alone.
DiscreteFunction constant_saddle_seed(const Lagrangian& L, const Grid& grid) {
    double best_theta = 0.0, best_val = std::numeric_limits<double>::infinity();
    Vec best_x{0.0, 0.0};
    for (int ia = 0; ia < 360; ++ia) {
        const double theta = 2.0 * M_PI * ia / 360.0;
        const Vec e{std::cos(theta), std::sin(theta)};
        double ray_max = -std::numeric_limits<double>::infinity();
        Vec ray_arg = e;
        for (int is = 0; is < 120; ++is) {
            const double s = 1e-3 * std::pow(10.0 / 1e-3, is / 119.0);
            const Vec x = scaled(e, s);
            const double j = safe_action(L, constant_field(grid, x));
            if (j > ray_max) {
                ray_max = j;
                ray_arg = x;
            }
        }
        if (ray_max < best_val) {
            best_val = ray_max;
            best_theta = theta;
            best_x = ray_arg;
        }
    }
    (void)best_theta;
    return constant_field(grid, best_x);
}

}  // namespace

CriticalPoint mountain_pass(const Lagrangian& L, const DiscreteFunction& e0,
                            const DiscreteFunction& e1, const SolverParams& params) {
    if (!(e0.grid == e1.grid) || e0.dim != e1.dim)
        throw InputError("mountain_pass: e0 and e1 live on different grids");
    if (path_distance(e0, e1) == 0.0)
        throw InputError("mountain_pass: e0 and e1 coincide");

    const int m = std::max(3, params.path_nodes);
    std::vector<DiscreteFunction> nodes;
    nodes.reserve(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j)
        nodes.push_back(lerp(e0, e1, static_cast<double>(j) / (m - 1)));
    std::vector<double> energies(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) energies[static_cast<std::size_t>(j)] = action(L, nodes[static_cast<std::size_t>(j)]);

    CriticalPoint cp;
    cp.kind = CriticalPoint::Kind::mountain_pass;
    double prev_max = std::numeric_limits<double>::infinity();
    int slow_sweeps = 0;
    long sweep = 0;
    std::size_t k = 1;
    const long path_budget = std::max<long>(100, params.max_iter / 4);

    for (; sweep < path_budget; ++sweep) {
        // Max-energy node over the interior (endpoints are pinned).
        k = 1;
        for (std::size_t j = 2; j + 1 < nodes.size(); ++j)
            if (energies[j] > energies[k]) k = j;
        const double max_energy = energies[k];

        ActionEvaluation eval = action_gradient(L, nodes[k]);
        cp.trace.emplace_back(max_energy, eval.residual_norm);
        if (eval.residual_norm <= params.tol) {
            cp.u = nodes[k];
            cp.value = eval.value;
            cp.residual = eval.residual_norm;
            cp.iterations = sweep;
            return cp;
        }

        // Descend the max node only (moving the whole string at once lets it
        // tunnel under the ridge). J is unbounded below, so the step is
        // capped by the neighbor spacing: the peak comes down, never runs away.
        {
            const DiscreteFunction d = descent_direction(eval);
            const double dnorm = norm(d.values);
            const double cap = 0.5 * std::min(path_distance(nodes[k - 1], nodes[k]),
                                              path_distance(nodes[k], nodes[k + 1]));
            if (dnorm > 0.0 && cap > 0.0) {
                DiscreteFunction capped = d;
                if (dnorm > cap)
                    for (double& v : capped.values) v *= cap / dnorm;
                if (armijo_step(L, nodes[k], energies[k], capped,
                                eval.residual_norm * std::min(1.0, cap / dnorm)) > 0.0)
                    energies[k] = action(L, nodes[k]);
            }
        }

        // Re-space if doing so does not raise the path max.
        std::vector<DiscreteFunction> cand = respace(nodes);
        std::vector<double> cand_e(cand.size());
        for (std::size_t j = 0; j < cand.size(); ++j) cand_e[j] = action(L, cand[j]);
        const double cand_max = *std::max_element(cand_e.begin() + 1, cand_e.end() - 1);
        const double cur_max = *std::max_element(energies.begin() + 1, energies.end() - 1);
        if (cand_max <= cur_max + 1e-12) {
            nodes = std::move(cand);
            energies = std::move(cand_e);
        }

        // Once the peak stops moving the path has localized the saddle; hand
        // over to the residual polish.
        const double new_max = *std::max_element(energies.begin() + 1, energies.end() - 1);
        slow_sweeps =
            (prev_max - new_max < 1e-5 * (1.0 + std::abs(new_max))) ? slow_sweeps + 1 : 0;
        prev_max = new_max;
        if (slow_sweeps >= 200) break;
    }

    k = 1;
    for (std::size_t j = 2; j + 1 < nodes.size(); ++j)
        if (energies[j] > energies[k]) k = j;

    // A valid pass value must dominate both endpoints; a polish that drops
    // below that level has slid off the ridge into a neighbouring basin.
    const double floor =
        std::max(safe_action(L, e0), safe_action(L, e1));

    // Polish candidates in order of preference: the localized path peak, then
    // the constant-field saddle seed. The polish is recorded separately: the
    // public trace keeps the sweep-wise path max, which is non-increasing by
    // construction, while J may move in both directions during the polish.
    std::vector<DiscreteFunction> candidates;
    candidates.push_back(nodes[k]);
    if (e0.dim == 2) candidates.push_back(constant_saddle_seed(L, e0.grid));

    std::string last_error = "mountain_pass: no polish candidate";
    for (DiscreteFunction& u : candidates) {
        std::vector<std::pair<double, double>> polish_trace = cp.trace;
        long polish_iters = 0;
        try {
            polish_iters = polish_saddle(L, u, params.tol, params.max_iter, &polish_trace);
        } catch (const NonConvergence& e) {
            last_error = e.what();
            continue;
        }
        const ActionEvaluation final_eval = action_gradient(L, u);
        if (!(final_eval.value > floor)) {
            last_error =
                "mountain_pass: polish left the ridge (value below the endpoints)";
            continue;
        }
        cp.u = std::move(u);
        cp.value = final_eval.value;
        cp.residual = final_eval.residual_norm;
        cp.iterations = sweep + polish_iters;
        return cp;
    }
    throw NonConvergence(last_error, cp.trace);
}

namespace {

struct DescentOutcome {
    DiscreteFunction u;
    double value = 0.0;
    double residual = 0.0;
    long iterations = 0;
    std::vector<std::pair<double, double>> trace;
    bool converged = false;
    bool boundary_stall = false;
};

// Projected descent inside {Phi <= rho} from one start.
DescentOutcome descend_in_omega(const Lagrangian& L, DiscreteFunction u, double rho,
                                const SolverParams& params, long budget) {
    DescentOutcome out;
    double value = action(L, u);
    for (long it = 0; it < budget; ++it) {
        ActionEvaluation eval = action_gradient(L, u);
        out.trace.emplace_back(eval.value, eval.residual_norm);
        value = eval.value;
        if (eval.residual_norm <= params.tol && phi(L.g, u) < rho) {
            out.u = std::move(u);
            out.value = value;
            out.residual = eval.residual_norm;
            out.iterations = it;
            out.converged = true;
            return out;
        }
        const DiscreteFunction d = descent_direction(eval);
        const double slope = eval.residual_norm * eval.residual_norm;
        bool accepted = false;
        for (double alpha = 1.0; alpha >= kMinStep; alpha *= 0.5) {
            DiscreteFunction w = u;
            axpy(alpha, d.values, w.values);
            if (phi(L.g, w) > rho) {
                if (w.is_zero()) continue;
                w = project_to_boundary(L.g, w, rho);
            }
            const double jw = safe_action(L, w);
            if (std::isfinite(jw) && jw <= value - kArmijo * alpha * slope) {
                u = std::move(w);
                value = jw;
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            out.boundary_stall = phi(L.g, u) >= rho * (1.0 - 1e-6);
            break;
        }
    }
    out.value = value;
    ActionEvaluation eval = action_gradient(L, u);
    out.residual = eval.residual_norm;
    out.iterations = static_cast<long>(out.trace.size());
    out.u = std::move(u);
    return out;
}

}  // namespace

CriticalPoint minimize_in_omega(const Lagrangian& L, const Grid& grid, double rho,
                                const SolverParams& params) {
    if (rho <= 0.0) throw InputError("minimize_in_omega: rho must be positive");
    const int starts = std::max(1, params.starts);
    const int dim = L.g.dim;
    const DiscreteFunction psi = default_psi(L, grid);
    std::mt19937_64 rng(params.seed * 0x9e3779b97f4a7c15ULL + 54321ULL);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);

    std::vector<DiscreteFunction> seeds;
    seeds.emplace_back(grid, dim);  // the zero start
    // J(lambda psi) only turns negative deep inside the scaling regime
    // (the W term beats K once lambda^{zeta_W - zeta_K} dominates), so the
    // psi seeds sweep several decades below lambda0.
    const double lam0 = L.c.lambda0 > 0.0 ? L.c.lambda0 : 0.03;
    for (double s : {1.0, 1e-2, 1e-3, 1e-4}) {
        if (static_cast<int>(seeds.size()) >= starts) break;
        DiscreteFunction u = psi;
        for (double& v : u.values) v *= lam0 * s;
        if (phi(L.g, u) < rho) seeds.push_back(std::move(u));
    }
    while (static_cast<int>(seeds.size()) < starts) {
        DiscreteFunction u(grid, dim);
        for (double& v : u.values) v = unit(rng);
        seeds.push_back(project_to_boundary(L.g, u, 0.5 * rho));
    }

    const long budget = std::max<long>(1000, params.max_iter / starts);
    std::vector<DescentOutcome> runs;
    runs.reserve(seeds.size());
    for (auto& s : seeds) runs.push_back(descend_in_omega(L, std::move(s), rho, params, budget));

    const DescentOutcome* best = nullptr;
    for (const auto& r : runs) {
        if (!r.converged) continue;
        if (best == nullptr || r.value < best->value ||
            (r.value == best->value && r.residual < best->residual) ||
            (r.value == best->value && r.residual == best->residual &&
             lex_less(r.u.values, best->u.values)))
            best = &r;
    }
    if (best == nullptr) {
        bool all_boundary = true;
        for (const auto& r : runs) all_boundary = all_boundary && r.boundary_stall;
        if (all_boundary)
            throw BoundaryTrap("minimize_in_omega: every start stalled on the boundary of Omega");
        const DescentOutcome* lowest = &runs.front();
        for (const auto& r : runs)
            if (r.value < lowest->value) lowest = &r;
        throw NonConvergence("minimize_in_omega: no start reached the residual tolerance",
                             lowest->trace);
    }

    CriticalPoint cp;
    cp.kind = CriticalPoint::Kind::omega_minimizer;
    cp.u = best->u;
    cp.value = best->value;
    cp.residual = best->residual;
    cp.iterations = best->iterations;
    cp.trace = best->trace;
    cp.interior_margin = rho - phi(L.g, cp.u);
    return cp;
}

TwoSolutionResult two_solution_run(const Lagrangian& L, const Grid& grid,
                                   const SolverParams& params) {
    TwoSolutionResult res;

    const SampleCloud cloud = make_cloud(L, 1500, 3.0, params.seed);
    for (auto& r : check_F(L, cloud)) res.checks.push_back(std::move(r));
    for (auto& r : check_V(L, cloud)) res.checks.push_back(std::move(r));
    res.checks.push_back(check_forcing(L));
    res.hypotheses_verified = true;
    std::ostringstream failing;
    for (const auto& r : res.checks) {
        if (r.status == CheckStatus::fail) {
            res.hypotheses_verified = false;
            failing << ' ' << r.name;
        }
    }
    if (!res.hypotheses_verified && !params.force)
        throw HypothesisFailure("two_solution_run: hypothesis checks failed:" + failing.str(),
                                res.checks);

    const double rho = L.c.rho;
    const DiscreteFunction e0(grid, L.g.dim);
    const DiscreteFunction e1 =
        find_e1(L, default_psi(L, grid), rho, params.lambda_max);
    res.boundary_estimate = boundary_infimum(L, grid, rho, 200, params.seed);
    res.mountain = mountain_pass(L, e0, e1, params);
    res.minimizer = minimize_in_omega(L, grid, rho, params);

    DiscreteFunction diff = res.mountain.u;
    for (std::size_t i = 0; i < diff.values.size(); ++i)
        diff.values[i] -= res.minimizer.u.values[i];
    res.separation = sobolev_norm(L.g, diff);

    const double c1 = res.mountain.value, c2 = res.minimizer.value;
    const bool signs = L.forcing_is_zero ? (c1 > 0.0 && c2 < 0.0)
                                         : (c1 > 0.0 && c2 <= 0.0);
    res.distinct = signs && (c1 - c2 > 0.0) && res.separation > params.sep_tol;
    return res;
}

}  // namespace aelt
