#include "mvphase/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mvphase {

namespace {

// log1p(t) - t, accurate for all t >= 0; the direct difference loses relative
// precision for small t, so the series sum_{k>=2} (-1)^{k-1} t^k / k is used
// below 1/8.
double log1p_minus_x(double t) {
    if (t < 0.125) {
        double s = 0.0;
        double tk = t * t;
        double sign = -1.0;
        for (int k = 2; k <= 26; ++k) {
            s += sign * tk / static_cast<double>(k);
            tk *= t;
            sign = -sign;
            if (tk < 1e-20 * std::abs(s) * static_cast<double>(k)) break;
        }
        return s;
    }
    return std::log1p(t) - t;
}

struct ExponentPeak {
    double x_peak;
    double e_peak;
    double crit_lo;  // leftmost critical point
    double crit_hi;  // rightmost critical point
};

// Critical points of the exponent are the real roots of the cubic
// x^3 - c1 x - c0 with c1 = a - theta - nu sm^2 (additive: a - theta),
// c0 = theta mu; the outermost roots are local maxima.
ExponentPeak locate_peak(const ModelParams& p, double mu) {
    const bool additive = p.sigma_m <= sigma_switch(p);
    const double c1 = additive ? (p.a - p.theta)
                               : (p.a - p.theta - p.nu * p.sigma_m * p.sigma_m);
    const double c0 = p.theta * mu;
    std::array<double, 3> roots{};
    const int n = solve_depressed_cubic(c1, c0, roots);

    ExponentPeak out{};
    out.crit_lo = roots[0];
    out.crit_hi = roots[static_cast<std::size_t>(n - 1)];
    out.x_peak = roots[0];
    out.e_peak = log_unnormalized(p, mu, roots[0]);
    for (int i = 1; i < n; ++i) {
        const double e = log_unnormalized(p, mu, roots[static_cast<std::size_t>(i)]);
        if (e > out.e_peak) {
            out.e_peak = e;
            out.x_peak = roots[static_cast<std::size_t>(i)];
        }
    }
    return out;
}

// Outward crossing of log_unnormalized below (e_peak - nats), one per side.
// The exponent decreases monotonically beyond the outermost critical points.
double tail_bound(const ModelParams& p, double mu, const ExponentPeak& pk, double nats,
                  bool right) {
    const double target = pk.e_peak - nats;
    auto above = [&](double x) { return log_unnormalized(p, mu, x) > target; };

    double start = right ? pk.crit_hi : pk.crit_lo;
    if (!above(start)) start = pk.x_peak;  // outermost peak itself is below the floor

    const double dir = right ? 1.0 : -1.0;
    double step = std::max({1.0, p.sigma_a, p.sigma_m});
    double probe = start + dir * step;
    while (above(probe)) {
        step *= 2.0;
        probe = start + dir * step;
        if (step > 1e12) break;
    }

    auto g = [&](double x) { return log_unnormalized(p, mu, x) - target; };
    const double glo = g(right ? start : probe);
    const double ghi = g(right ? probe : start);
    Bracket br{right ? start : probe, right ? probe : start, glo, ghi};
    return find_root(g, br, 1e-10 * (1.0 + std::abs(probe)));
}

}  // namespace

double log_unnormalized(const ModelParams& p, double mu, double x) {
    const double sa = p.sigma_a;
    const double sm = p.sigma_m;
    if (sm <= sigma_switch(p)) {
        // Dawson-Shiino limit
        return (2.0 / (sa * sa)) *
               ((p.a - p.theta) * x * x / 2.0 - x * x * x * x / 4.0 + p.theta * mu * x);
    }
    const double sm2 = sm * sm;
    const double u = sm * x / sa;
    const double t = u * u;
    const double c = p.a - p.theta - p.nu * sm2;
    // full exponent A log(1+t) + B arctan(u) - x^2/sm^2 rearranged so the
    // sa^2/sm^4 log term and the Gaussian term never cancel explicitly
    return (c / sm2) * std::log1p(t) + (sa * sa / (sm2 * sm2)) * log1p_minus_x(t) +
           (2.0 * p.theta * mu / (sa * sm)) * std::atan(u);
}

StationaryDensity::StationaryDensity(const ModelParams& p, double mu, const QuadratureSpec& spec)
    : params_(p), mu_(mu), spec_(spec) {
    p.validate();
    spec.validate();
    if (!std::isfinite(mu)) throw std::invalid_argument("StationaryDensity: mu must be finite");

    const ExponentPeak pk = locate_peak(p, mu);
    exponent_peak_ = pk.e_peak;
    peak_x_ = pk.x_peak;
    const double right = tail_bound(p, mu, pk, 40.0, true);
    const double left = tail_bound(p, mu, pk, 40.0, false);
    trunc_ = std::max(std::abs(left), std::abs(right));

    auto w = [&](double x) { return std::exp(log_unnormalized(p, mu, x) - exponent_peak_); };
    const double z = integrate_interval(w, -trunc_, trunc_, spec_);
    log_norm_ = exponent_peak_ + std::log(z);
}

double StationaryDensity::window(double nats) const {
    const ExponentPeak pk = locate_peak(params_, mu_);
    const double right = tail_bound(params_, mu_, pk, nats, true);
    const double left = tail_bound(params_, mu_, pk, nats, false);
    return std::max(std::abs(left), std::abs(right));
}

double StationaryDensity::moment(int k) const {
    if (k < 0 || k > 12)
        throw std::invalid_argument("StationaryDensity::moment: k must lie in [0, 12]");
    // widen the window so the x^k weight cannot promote the discarded tail
    const double bound =
        (k == 0) ? trunc_ : window(40.0 + static_cast<double>(k) * std::log1p(trunc_));
    auto f = [&](double x) {
        double xk = 1.0;
        for (int i = 0; i < k; ++i) xk *= x;
        return xk * std::exp(log_unnormalized(params_, mu_, x) - log_norm_);
    };
    return integrate_interval(f, -bound, bound, spec_);
}

StationaryDensity normalize(const ModelParams& p, double mu, const QuadratureSpec& spec) {
    return StationaryDensity(p, mu, spec);
}

double moment(const StationaryDensity& d, int k) { return d.moment(k); }

}  // namespace mvphase
