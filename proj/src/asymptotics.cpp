#include "mvphase/asymptotics.hpp"

#include <cmath>
#include <limits>

namespace mvphase {

double dawson_m2(double sigma_a, double theta, const QuadratureSpec& spec) {
    if (!(sigma_a > 0.0)) throw std::invalid_argument("dawson_m2: sigma_a must be > 0");
    ModelParams p;
    p.nu = 1.0;
    p.sigma_a = sigma_a;
    p.sigma_m = 0.0;
    p.a = 1.0;
    p.theta = theta;
    const StationaryDensity d(p, 0.0, spec);
    return d.moment(2);
}

DawsonMoments moment_hierarchy(double m2, double sigma_a, double theta) {
    if (!(m2 > 0.0)) throw std::invalid_argument("moment_hierarchy: m2 must be > 0");
    const double s2 = sigma_a * sigma_a;
    DawsonMoments m;
    m.m2 = m2;
    m.sigma_a = sigma_a;
    m.theta = theta;
    m.m4 = (1.0 - theta) * m2 + 0.5 * s2;            // p = 2, m0 = 1
    m.m6 = (1.0 - theta) * m.m4 + 1.5 * s2 * m.m2;   // p = 3
    m.m8 = (1.0 - theta) * m.m6 + 2.5 * s2 * m.m4;   // p = 4
    m.m10 = (1.0 - theta) * m.m8 + 3.5 * s2 * m.m6;  // p = 5
    return m;
}

GradientForms small_sigma_m_gradient_forms(double nu, double sigma_a, double theta,
                                           const QuadratureSpec& spec) {
    const double m2 = dawson_m2(sigma_a, theta, spec);
    const DawsonMoments m = moment_hierarchy(m2, sigma_a, theta);
    const double s2 = sigma_a * sigma_a;
    const double s4 = s2 * s2;

    GradientForms out;
    out.raw = (m.m8 - m.m10) / (3.0 * s4) + (m.m6 - m.m4) / (3.0 * s2) -
              (1.0 - theta) * (m.m6 - m.m8) / s4 + m.m2 -
              nu * ((m.m4 - m.m6) / s2 + m.m2);

    const double th = theta;
    out.closed_form =
        m2 * (nu / 2.0 - 0.25 + th * th * nu / s2 - th * th / (6.0 * s2) - th * nu / s2 +
              th / (12.0 * s2) + 1.0 / (12.0 * s2) + th * th * th * th / (6.0 * s4) -
              th * th * th / (2.0 * s4) + th * th / (2.0 * s4) - th / (6.0 * s4)) -
        th * nu / 2.0 + 5.0 * th / 24.0 + 1.0 / 24.0 - th * th * th / (12.0 * s2) +
        th * th / (6.0 * s2) - th / (12.0 * s2);
    return out;
}

double small_sigma_m_gradient(double nu, double sigma_a, double theta,
                              const QuadratureSpec& spec) {
    const GradientForms g = small_sigma_m_gradient_forms(nu, sigma_a, theta, spec);
    const double scale = std::max({std::abs(g.raw), std::abs(g.closed_form), 1e-30});
    if (std::abs(g.raw - g.closed_form) > 1e-9 * scale) {
        throw GradientFormMismatch(
            "small_sigma_m_gradient: moment combination " + std::to_string(g.raw) +
            " and m2-reduced form " + std::to_string(g.closed_form) +
            " disagree (the reduction holds only at theta = 1; theta = " +
            std::to_string(theta) + ")");
    }
    return g.raw;
}

double gradient_at_critical(double nu, double m2_at_crit) {
    if (!(m2_at_crit > 0.0 && m2_at_crit < 1.0))
        throw std::invalid_argument("gradient_at_critical: m2_at_crit must lie in (0, 1)");
    return 0.5 * (0.5 - nu) * (1.0 - m2_at_crit);
}

double large_sigma_m_sign_change(double nu) {
    if (!(nu >= 0.0 && nu < 0.5))
        throw std::domain_error("large_sigma_m_sign_change: requires 0 <= nu < 0.5");
    constexpr double pi = 3.141592653589793238462643383279502884;
    return pi * gamma_fn(1.0 - nu) / gamma_fn(0.5 - nu);
}

SmallSigmaMReport validate_small_sigma_m(double nu, double sigma_a, double theta,
                                         const QuadratureSpec& spec) {
    SmallSigmaMReport rep;
    rep.sigma_m_values = {0.05, 0.1, 0.2};

    ModelParams p;
    p.nu = nu;
    p.sigma_a = sigma_a;
    p.a = 1.0;
    p.theta = theta;

    p.sigma_m = 0.0;
    rep.slope_additive = self_consistency_slope_analytic(p, spec);
    for (std::size_t i = 0; i < 3; ++i) {
        p.sigma_m = rep.sigma_m_values[i];
        rep.slope_values[i] = self_consistency_slope_analytic(p, spec);
    }

    const double d1 = rep.slope_values[0] - rep.slope_additive;  // sigma_m = 0.05
    const double d2 = rep.slope_values[1] - rep.slope_additive;  // sigma_m = 0.10
    const double d3 = rep.slope_values[2] - rep.slope_additive;  // sigma_m = 0.20
    const double h2 = 0.05 * 0.05;
    // Richardson-extrapolated sigma_m^2 coefficient and the c1-free ratio that
    // is ~16 when the residual is O(sigma_m^4)
    rep.c1_fitted = (4.0 * d1 / h2 - d2 / h2) / 3.0;
    rep.richardson_ratio = (d3 - 4.0 * d2) / (d2 - 4.0 * d1);

    const GradientForms g = small_sigma_m_gradient_forms(nu, sigma_a, theta, spec);
    const double scale = 2.0 / (sigma_a * sigma_a);
    rep.c1_model_raw = scale * g.raw;
    rep.c1_model_closed = scale * g.closed_form;
    return rep;
}

LargeSigmaMReport validate_large_sigma_m(double nu, double sigma_a, const QuadratureSpec& spec) {
    if (!(nu >= 0.0 && nu <= 1.0))
        throw std::invalid_argument("validate_large_sigma_m: nu must lie in [0, 1]");
    LargeSigmaMReport rep;
    rep.sigma_m_values = {20.0, 50.0, 100.0};

    ModelParams p;
    p.nu = nu;
    p.sigma_a = sigma_a;
    p.a = 1.0;
    p.theta = 1.0;
    for (std::size_t i = 0; i < 3; ++i) {
        p.sigma_m = rep.sigma_m_values[i];
        rep.slope_values[i] = self_consistency_slope_analytic(p, spec);
    }

    if (nu > 0.5) {
        rep.threshold = std::numeric_limits<double>::quiet_NaN();
        rep.consistent = rep.slope_values[2] < 0.0;
    } else if (nu < 0.5) {
        rep.threshold = large_sigma_m_sign_change(nu);
        const double expected = rep.threshold - sigma_a;  // >0 means stable limit
        rep.consistent = (rep.slope_values[2] > 0.0) == (expected > 0.0);
    } else {
        rep.threshold = 0.0;
        rep.consistent = true;  // boundary interpretation: no sign asserted
    }
    return rep;
}

}  // namespace mvphase
