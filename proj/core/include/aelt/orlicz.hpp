#pragma once

#include "aelt/discretization.hpp"
#include "aelt/gfunction.hpp"
#include "aelt/report.hpp"

namespace aelt {

// Modular R_G(u) = integral of G(u) over I (periodic rectangle quadrature).
double modular(const GFunction& g, const DiscreteFunction& u);

// Luxemburg norm inf{ lambda > 0 : R_G(u/lambda) <= 1 } by bisection.
// The returned lambda satisfies |R_G(u/lambda) - 1| <= 1e-8 for u != 0.
double luxemburg_norm(const GFunction& g, const DiscreteFunction& u);

// Norm, modular and which side of the norm-modular relation the pair sits on.
struct NormReport {
    double luxemburg = 0.0;
    double modular = 0.0;
    enum class Side { below_one, above_one, at_one } relation_side = Side::at_one;
};

NormReport norm_report(const GFunction& g, const DiscreteFunction& u);

// ||u||_G + ||u'||_G.
double sobolev_norm(const GFunction& g, const DiscreteFunction& u);

// A GFunction wrapping G* (analytic when G carries one, numeric otherwise).
GFunction conjugate_function(const GFunction& g);

// C_{inf,G} = max{1, |I|} * A_G^{-1}(1/|I|), built from the tabulated minorant.
double embedding_constant(const GFunction& g, double interval_length);

// 2 ||u||_G ||v||_{G*} - integral <u,v>; must be >= -1e-8.
double holder_gap(const GFunction& g, const DiscreteFunction& u,
                  const DiscreteFunction& v);

// |G(x+y) - G(x)| <= eps |G(kx) - kG(x)| + 2 G(C_eps y), C_eps = 1/(eps(k-1)).
CheckReport brezis_lieb_check(const GFunction& g, const Vec& x, const Vec& y,
                              double k, double eps);

// R_G(s u)/||s u||_G for each scale; increasing once the norm exceeds 1.
std::vector<double> modular_coercivity_probe(const GFunction& g,
                                             const DiscreteFunction& u,
                                             const std::vector<double>& scales);

}  // namespace aelt
