#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mvphase/numerics.hpp"
#include "oracles.hpp"

using namespace mvphase;

namespace {
constexpr double kSqrtPi = 1.772453850905516027;
}

TEST_CASE("gamma_fn matches known values") {
    CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(gamma_fn(0.5) == doctest::Approx(kSqrtPi).epsilon(1e-13));
    CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-13));
    // frozen mpmath references
    CHECK(gamma_fn(0.1) == doctest::Approx(9.513507698668731836).epsilon(1e-12));
    CHECK(gamma_fn(7.3) == doctest::Approx(1271.4236336639092731).epsilon(1e-12));
    CHECK(gamma_fn(29.5) == doctest::Approx(1.6348125198274266444e30).epsilon(1e-12));
    CHECK(gamma_fn(-0.5) == doctest::Approx(-3.5449077018110320546).epsilon(1e-12));
    CHECK(gamma_fn(-2.5) == doctest::Approx(-0.94530872048294188123).epsilon(1e-12));
    CHECK(gamma_fn(-7.7) == doctest::Approx(1.8207416684152617427e-4).epsilon(1e-12));
}

TEST_CASE("gamma_fn poles throw") {
    CHECK_THROWS_AS(gamma_fn(0.0), std::domain_error);
    CHECK_THROWS_AS(gamma_fn(-1.0), std::domain_error);
    CHECK_THROWS_AS(gamma_fn(-12.0), std::domain_error);
}

TEST_CASE("gamma_fn recurrence Gamma(x+1) = x Gamma(x)") {
    for (int i = 0; i < 100; ++i) {
        const double x = 0.1 + (20.0 - 0.1) * i / 99.0;
        const double lhs = gamma_fn(x + 1.0);
        const double rhs = x * gamma_fn(x);
        CHECK(std::abs(lhs - rhs) <= 1e-11 * std::abs(lhs));
    }
}

TEST_CASE("gamma_fn agrees with std::tgamma") {
    oracle::Rng rng(42);
    for (int i = 0; i < 200; ++i) {
        const double x = rng.uniform(0.05, 30.0);
        CHECK(gamma_fn(x) == doctest::Approx(std::tgamma(x)).epsilon(1e-12));
    }
}

TEST_CASE("integrate handles Gaussian-decay examples") {
    QuadratureSpec spec;
    CHECK(integrate([](double x) { return std::exp(-x * x); }, spec, 1.0) ==
          doctest::Approx(kSqrtPi).epsilon(1e-10));
    CHECK(integrate([](double x) { return x * x * std::exp(-x * x / 2.0); }, spec, 1.0) ==
          doctest::Approx(std::sqrt(2.0 * 3.14159265358979323846)).epsilon(1e-10));
    CHECK(std::abs(integrate([](double x) { return x * std::exp(-x * x); }, spec, 1.0)) < 1e-12);
}

TEST_CASE("integrate is linear on random Gaussian-decay functions") {
    QuadratureSpec spec;
    oracle::Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const double s1 = rng.uniform(0.5, 2.0), s2 = rng.uniform(0.5, 2.0);
        const double alpha = rng.uniform(-3.0, 3.0), beta = rng.uniform(-3.0, 3.0);
        auto f = [=](double x) { return std::exp(-x * x / (2 * s1 * s1)); };
        auto g = [=](double x) { return x * x * std::exp(-x * x / (2 * s2 * s2)); };
        auto combo = [=](double x) { return alpha * f(x) + beta * g(x); };
        const double lhs = integrate(combo, spec, 2.0);
        const double rhs = alpha * integrate(f, spec, 2.0) + beta * integrate(g, spec, 2.0);
        const double tol = 10.0 * std::max(spec.abs_tol, spec.rel_tol * std::abs(rhs));
        CHECK(std::abs(lhs - rhs) <=
              std::max(tol, 1e-9 * (std::abs(alpha) + std::abs(beta))));
    }
}

TEST_CASE("integrate_interval matches Simpson oracle") {
    QuadratureSpec spec;
    auto f = [](double x) { return std::cos(3.0 * x) * std::exp(-x * x / 4.0); };
    const double lib = integrate_interval(f, -10.0, 10.0, spec);
    const double ref = oracle::simpson(f, -10.0, 10.0, 20000);
    CHECK(lib == doctest::Approx(ref).epsilon(1e-9));
}

TEST_CASE("integrate_interval throws when the budget is exhausted") {
    QuadratureSpec spec;
    spec.rel_tol = 1e-15;
    spec.abs_tol = 1e-300;
    spec.max_subdivisions = 2;
    auto f = [](double x) { return 1.0 / (1.0 + x * x) + std::sin(40.0 * x); };
    CHECK_THROWS_AS(integrate_interval(f, -30.0, 30.0, spec), QuadratureToleranceError);
}

TEST_CASE("find_root solves the bracketed examples") {
    auto cube = [](double x) { return x * x * x - 1.0; };
    CHECK(find_root(cube, {0.0, 2.0, cube(0.0), cube(2.0)}, 1e-12) ==
          doctest::Approx(1.0).epsilon(1e-10));
    auto cosine = [](double x) { return std::cos(x); };
    CHECK(find_root(cosine, {1.0, 2.0, cosine(1.0), cosine(2.0)}, 1e-12) ==
          doctest::Approx(1.57079632679489662).epsilon(1e-10));
    auto ident = [](double x) { return x; };
    CHECK(std::abs(find_root(ident, {-1.0, 1.0, -1.0, 1.0}, 1e-12)) < 1e-10);
}

TEST_CASE("find_root rejects invalid brackets") {
    auto f = [](double x) { return x * x + 1.0; };
    CHECK_THROWS_AS(find_root(f, {0.0, 1.0, f(0.0), f(1.0)}, 1e-10), BracketError);
    CHECK_THROWS_AS(find_root(f, {1.0, 0.0, f(1.0), f(0.0)}, 1e-10), BracketError);
}

TEST_CASE("find_root residual stays near the noise floor") {
    oracle::Rng rng(11);
    for (int trial = 0; trial < 25; ++trial) {
        const double shift = rng.uniform(-0.8, 0.8);
        auto f = [=](double x) { return std::tanh(2.0 * (x - shift)) + 0.1 * (x - shift); };
        const double lo = -2.0, hi = 2.0;
        const double r = find_root(f, {lo, hi, f(lo), f(hi)}, 1e-12);
        const double floor_tol =
            std::abs(f(lo)) * 1e-9 + std::abs(f(hi)) * 1e-9 + 1e-12;
        CHECK(std::abs(f(r)) <= floor_tol);
    }
}

TEST_CASE("central_diff examples") {
    auto sq = [](double x) { return x * x; };
    CHECK(central_diff(sq, 1.0, 1e-4) == doctest::Approx(2.0).epsilon(1e-8));
    auto c = [](double) { return 3.5; };
    CHECK(central_diff(c, 0.3, 1e-4) == doctest::Approx(0.0));
    CHECK(central_diff([](double x) { return std::sin(x); }, 0.0, 1e-4) ==
          doctest::Approx(1.0).epsilon(1e-8));
    CHECK_THROWS_AS(central_diff(sq, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("solve_depressed_cubic reconstructs roots") {
    std::array<double, 3> roots{};
    // x^3 - x = 0
    CHECK(solve_depressed_cubic(1.0, 0.0, roots) == 3);
    CHECK(roots[0] == doctest::Approx(-1.0));
    CHECK(roots[1] == doctest::Approx(0.0).epsilon(0).scale(1));
    CHECK(roots[2] == doctest::Approx(1.0));
    // single root: x^3 + x - 2 = 0 at x = 1 (c1 = -1, c0 = 2)
    CHECK(solve_depressed_cubic(-1.0, 2.0, roots) == 1);
    CHECK(roots[0] == doctest::Approx(1.0).epsilon(1e-12));
    // degenerate: x^3 = 0
    CHECK(solve_depressed_cubic(0.0, 0.0, roots) == 1);
    CHECK(roots[0] == 0.0);

    oracle::Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const double c1 = rng.uniform(-4.0, 4.0);
        const double c0 = rng.uniform(-4.0, 4.0);
        const int n = solve_depressed_cubic(c1, c0, roots);
        for (int i = 0; i < n; ++i) {
            const double x = roots[static_cast<std::size_t>(i)];
            CHECK(std::abs(x * x * x - c1 * x - c0) <= 1e-9 * (1.0 + std::abs(x * x * x)));
        }
    }
}
