#include <cmath>

#include <doctest.h>

#include "aelt/errors.hpp"
#include "aelt/gfunction.hpp"

using namespace aelt;

namespace {
const double kLambdaMin = (3.0 - std::sqrt(5.0)) / 2.0;
}

TEST_CASE("example quadratic values and gradient") {
    const GFunction g = example_quadratic();
    CHECK(eval_g(g, {0.0, 0.0}) == 0.0);
    CHECK(eval_g(g, {1.0, 0.0}) == doctest::Approx(2.0));
    CHECK(eval_g(g, {1.0, 1.0}) == doctest::Approx(1.0));
    CHECK(eval_g(g, {-1.0, -1.0}) == doctest::Approx(1.0));  // even

    // Gradient vs central differences.
    const Vec x{0.7, -0.3};
    const Vec gr = grad_g(g, x);
    const double step = 1e-6;
    for (int k = 0; k < 2; ++k) {
        Vec xp = x, xm = x;
        xp[static_cast<std::size_t>(k)] += step;
        xm[static_cast<std::size_t>(k)] -= step;
        const double fd = (eval_g(g, xp) - eval_g(g, xm)) / (2.0 * step);
        CHECK(gr[static_cast<std::size_t>(k)] == doctest::Approx(fd).epsilon(1e-7));
    }

    CHECK_THROWS_AS(eval_g(g, Vec{1.0}), InputError);
}

TEST_CASE("analytic conjugate of the quadratic") {
    const GFunction g = example_quadratic();
    REQUIRE(g.has_analytic_conjugate());
    // G*(s,s) = 5 s^2 / 4.
    for (double s : {0.1, 0.5, 1.0, 3.0})
        CHECK(conjugate(g, {s, s}) == doctest::Approx(1.25 * s * s).epsilon(1e-12));
    CHECK(conjugate(g, {0.0, 0.0}) == 0.0);
}

TEST_CASE("numeric conjugate agrees with the analytic one") {
    const GFunction g = example_quadratic();
    for (double a : {-1.5, -0.3, 0.2, 0.9, 2.0}) {
        for (double b : {-0.8, 0.0, 0.6, 1.7}) {
            const Vec y{a, b};
            CHECK(conjugate_numeric(g, y) ==
                  doctest::Approx(g.analytic_conjugate(y)).epsilon(1e-8));
        }
    }
}

TEST_CASE("pnorm conjugate closed form") {
    const double p = 3.0;
    const GFunction g = pnorm(2, p);
    const double q = p / (p - 1.0);
    for (double r : {0.4, 1.0, 2.5}) {
        const Vec y{r, 0.0};
        const double expected =
            (1.0 - 1.0 / p) * std::pow(1.0 / p, 1.0 / (p - 1.0)) * std::pow(r, q);
        CHECK(conjugate(g, y) == doctest::Approx(expected).epsilon(1e-7));
        CHECK(conjugate_numeric(g, y) == doctest::Approx(expected).epsilon(1e-6));
    }
}

TEST_CASE("Fenchel inequality and its equality case") {
    const GFunction g = example_quadratic();
    for (double a : {-1.0, 0.3, 1.2}) {
        for (double b : {-0.7, 0.0, 2.0}) {
            const Vec x{a, b};
            for (double c : {-0.5, 0.8}) {
                const Vec y{c, a - c};
                CHECK(dot(x, y) <= eval_g(g, x) + conjugate(g, y) + 1e-8);
            }
            // Equality at y = grad G(x).
            const Vec y = grad_g(g, x);
            CHECK(dot(x, y) ==
                  doctest::Approx(eval_g(g, x) + conjugate(g, y)).epsilon(1e-8));
        }
    }
}

TEST_CASE("doubling checks certify the quadratic") {
    const GFunction g = example_quadratic();
    std::vector<Vec> samples;
    for (int i = 0; i < 90; ++i) {
        const double a = M_PI * i / 90.0;
        samples.push_back({20.0 * std::cos(a), 20.0 * std::sin(a)});
    }
    const CheckReport d2 = check_delta2(g, samples, 10.0);
    CHECK(d2.passed());
    CHECK(d2.details.at("K_hat") == doctest::Approx(4.0).epsilon(1e-10));
    const CheckReport n2 = check_nabla2(g, samples, 10.0);
    CHECK(n2.passed());
    CHECK(n2.details.at("K_hat") == doctest::Approx(4.0).epsilon(1e-6));

    // Below-threshold samples only: inconclusive, not a silent pass.
    const CheckReport low = check_delta2(g, {Vec{1.0, 0.0}}, 10.0);
    CHECK(low.status == CheckStatus::inconclusive);
}

TEST_CASE("convex minorant of the quadratic is the small eigenvalue parabola") {
    const GFunction g = example_quadratic();
    const ConvexMinorant a = convex_minorant(g, 4.0);
    for (double r : {0.5, 1.0, 2.0, 3.0}) {
        CHECK(a(r) == doctest::Approx(kLambdaMin * r * r).epsilon(2e-3));
        // The angular sampling only overestimates the radial minimum, so the
        // tabulated envelope sits (weakly) above the exact parabola.
        CHECK(a(r) >= kLambdaMin * r * r * (1.0 - 1e-9));
    }
    CHECK(a(0.0) == 0.0);
    // Monotone piecewise-linear inversion round-trip.
    const double y = a(1.3);
    CHECK(a(minorant_inverse(a, y)) == doctest::Approx(y).epsilon(1e-10));
}
