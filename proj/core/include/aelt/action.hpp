#pragma once

#include "aelt/discretization.hpp"
#include "aelt/lagrangian.hpp"

namespace aelt {

// Discrete action value with its exact discrete gradient. residual_norm is
// the L2 norm of the nodal Euler-Lagrange residual (gradient entries divided
// by h, h-weighted), so stopping thresholds carry across resolutions.
struct ActionEvaluation {
    double value = 0.0;
    DiscreteFunction gradient;
    double residual_norm = 0.0;
};

// J(u) = integral of F(t,u,u') + V(t,u) + <f,u> over I.
double action(const Lagrangian& L, const DiscreteFunction& u);

// Exact gradient of the discrete action: node i receives
// h (F_x + V_x + f)(t_i) plus the backward difference of F_v (the discrete
// adjoint of the forward difference), so discrete integration by parts is exact.
ActionEvaluation action_gradient(const Lagrangian& L, const DiscreteFunction& u);

// Max relative mismatch between central differences of the action and the
// assembled gradient over all nodal coordinates.
double fd_check(const Lagrangian& L, const DiscreteFunction& u, double step);

}  // namespace aelt
