#pragma once

#include <array>
#include <functional>

#include "mvphase/errors.hpp"

namespace mvphase {

/// Tolerances and budget for adaptive quadrature.
struct QuadratureSpec {
    double rel_tol = 1e-10;
    double abs_tol = 1e-13;
    int max_subdivisions = 2000;

    void validate() const;
};

/// Sign-changing interval for bracketed root finding: lo < hi, f_lo * f_hi <= 0.
struct Bracket {
    double lo;
    double hi;
    double f_lo;
    double f_hi;
};

/// Gamma function (Lanczos approximation (g = 7, 9 coefficients),
/// reflection for x < 0.5); named gamma_fn to avoid the POSIX ::gamma. Throws std::domain_error at the poles.
double gamma_fn(double x);

/// Integral of f over the whole real line. `decay_hint` sets the scale beyond
/// which |f| is negligible; the domain is truncated where log|f| drops 40 nats
/// below its sampled peak, then handled by adaptive Gauss-Kronrod.
double integrate(const std::function<double(double)>& f, const QuadratureSpec& spec,
                 double decay_hint);

/// Integral of f over [a, b] by adaptive 15-point Gauss-Kronrod.
/// Throws QuadratureToleranceError if max_subdivisions is exhausted.
double integrate_interval(const std::function<double(double)>& f, double a, double b,
                          const QuadratureSpec& spec);

/// Brent's method on a validated bracket; returns a root located to width <= tol.
double find_root(const std::function<double(double)>& f, const Bracket& bracket, double tol);

/// Second-order central difference (f(x+h) - f(x-h)) / (2h), h > 0.
double central_diff(const std::function<double(double)>& f, double x, double h);

/// Real roots of the depressed cubic x^3 - c1*x - c0 = 0, ascending.
/// Returns the number of real roots written to `roots` (1 or 3).
int solve_depressed_cubic(double c1, double c0, std::array<double, 3>& roots);

}  // namespace mvphase
