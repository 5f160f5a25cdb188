// Test-only reference implementations, independent of the library's
// quadrature/root-finding code paths.
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

/// Composite Simpson rule on [a, b] with n panels (n made even).
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 4000) {
    if (n % 2 != 0) ++n;
    const double h = (b - a) / n;
    double acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) acc += f(a + h * i) * (i % 2 == 0 ? 2.0 : 4.0);
    return acc * h / 3.0;
}

/// Brute-force sign-change scan followed by plain bisection.
inline std::vector<double> scan_roots(const std::function<double(double)>& f, double lo,
                                      double hi, int n_grid = 200, int bisections = 80) {
    std::vector<double> roots;
    double prev_x = lo, prev_f = f(lo);
    for (int i = 1; i <= n_grid; ++i) {
        const double x = lo + (hi - lo) * i / n_grid;
        const double fx = f(x);
        if (prev_f == 0.0) roots.push_back(prev_x);
        if (prev_f * fx < 0.0) {
            double a = prev_x, b = x, fa = prev_f;
            for (int k = 0; k < bisections; ++k) {
                const double m = 0.5 * (a + b);
                const double fm = f(m);
                if (fa * fm <= 0.0)
                    b = m;
                else {
                    a = m;
                    fa = fm;
                }
            }
            roots.push_back(0.5 * (a + b));
        }
        prev_x = x;
        prev_f = fx;
    }
    return roots;
}

/// Deterministic xorshift-based uniform in [lo, hi] for sampled property tests.
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed ^ 0x9e3779b97f4a7c15ULL) {}
    double uniform(double lo, double hi) {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        const double u = static_cast<double>(state >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }
};

}  // namespace oracle
