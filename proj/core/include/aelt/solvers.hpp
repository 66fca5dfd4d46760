#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "aelt/action.hpp"
#include "aelt/errors.hpp"
#include "aelt/discretization.hpp"
#include "aelt/lagrangian.hpp"
#include "aelt/report.hpp"

namespace aelt {

struct CriticalPoint {
    enum class Kind { mountain_pass, omega_minimizer };
    DiscreteFunction u;
    double value = 0.0;
    double residual = 0.0;
    Kind kind = Kind::mountain_pass;
    long iterations = 0;
    std::vector<std::pair<double, double>> trace;  // (value, residual)
    double interior_margin = 0.0;                  // rho - phi(u), minimizer only
};

struct SolverParams {
    int path_nodes = 17;
    double tol = 1e-4;
    long max_iter = 50000;
    int starts = 8;
    double sep_tol = 1e-3;
    double lambda_max = 65536.0;
    std::uint64_t seed = 1;
    bool force = false;  // skip the hypothesis gate in two_solution_run
};

// e = lambda psi with J(e) < 0 and Phi(e) > rho, lambda found by doubling.
DiscreteFunction find_e1(const Lagrangian& L, const DiscreteFunction& psi,
                         double rho, double lambda_max);

// Constant field psi = (1,...,1)/sqrt(N), the default endpoint direction.
DiscreteFunction default_psi(const Lagrangian& L, const Grid& grid);

// Min of J over random directions scaled onto Phi = rho; an upper estimate
// of the boundary infimum used to sanity-check the minimax geometry.
double boundary_infimum(const Lagrangian& L, const Grid& grid, double rho,
                        int n_directions, std::uint64_t seed = 1);

// Numerical minimax over discrete paths from e0 to e1: repeatedly descend the
// path's max-energy node and re-space, until that node's residual meets tol.
CriticalPoint mountain_pass(const Lagrangian& L, const DiscreteFunction& e0,
                            const DiscreteFunction& e1, const SolverParams& params);

// Multi-start projected descent inside the sublevel set Phi < rho, monitored
// the way the near-minimizer principle prescribes (non-increasing values,
// slope bounded by sqrt(eps_n)).
CriticalPoint minimize_in_omega(const Lagrangian& L, const Grid& grid, double rho,
                                const SolverParams& params);

struct TwoSolutionResult {
    CriticalPoint mountain;
    CriticalPoint minimizer;
    double separation = 0.0;  // Sobolev-norm distance between the two points
    bool distinct = false;
    double boundary_estimate = 0.0;
    std::vector<CheckReport> checks;  // populated by the hypothesis gate
    bool hypotheses_verified = false;
};

// Full pipeline: hypothesis gate, find_e1, boundary_infimum, mountain_pass,
// minimize_in_omega, distinctness certificate.
TwoSolutionResult two_solution_run(const Lagrangian& L, const Grid& grid,
                                   const SolverParams& params);

// Thrown by two_solution_run when required hypothesis checks fail and
// params.force is not set.
struct HypothesisFailure : Error {
    HypothesisFailure(const std::string& msg, std::vector<CheckReport> reps)
        : Error(msg), reports(std::move(reps)) {}
    std::vector<CheckReport> reports;
};

}  // namespace aelt
