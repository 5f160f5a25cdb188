#pragma once

#include <array>

#include "mvphase/selfconsistency.hpp"

namespace mvphase {

/// First five even moments of the symmetric Dawson-Shiino stationary measure
/// (a = 1), linked by the linear hierarchy
///   m_{2p} = (1 - theta) m_{2p-2} + (2p-3)/2 * sigma_a^2 * m_{2p-4}.
struct DawsonMoments {
    double m2 = 0.0;
    double m4 = 0.0;
    double m6 = 0.0;
    double m8 = 0.0;
    double m10 = 0.0;
    double sigma_a = 0.0;
    double theta = 0.0;
    double a = 1.0;
};

/// Second moment of the symmetric additive-limit density (a = 1) by quadrature.
double dawson_m2(double sigma_a, double theta, const QuadratureSpec& spec);

/// Fill m4..m10 from m2 via the hierarchy recursion (a = 1).
DawsonMoments moment_hierarchy(double m2, double sigma_a, double theta);

/// The two closed forms of the sigma_m^2 coefficient of the slope expansion:
/// the raw five-moment combination and its m2-only reduction. They coincide
/// identically at theta = 1; both are in the sigma_a^2/2-scaled normalization
/// (multiply by 2/sigma_a^2 for the slope of the normalized map at the
/// critical temperature).
struct GradientForms {
    double raw = 0.0;
    double closed_form = 0.0;
};

GradientForms small_sigma_m_gradient_forms(double nu, double sigma_a, double theta,
                                           const QuadratureSpec& spec);

/// Raw moment-combination gradient; throws GradientFormMismatch when the two
/// closed forms disagree beyond 1e-9 relative.
double small_sigma_m_gradient(double nu, double sigma_a, double theta,
                              const QuadratureSpec& spec);

/// Gradient of the phase-transition contour at the critical temperature for
/// theta = 1: (1/2)(1/2 - nu)(1 - m2). Requires 0 < m2_at_crit < 1.
double gradient_at_critical(double nu, double m2_at_crit);

/// sigma_a below which the large-sigma_m limit of the slope is positive:
/// pi * Gamma(1 - nu) / Gamma(1/2 - nu). Domain error for nu >= 0.5.
double large_sigma_m_sign_change(double nu);

/// Small-sigma_m validation: slope values at sigma_m in {0, 0.05, 0.1, 0.2},
/// the fitted sigma_m^2 coefficient, its closed-form prediction (scaled to the
/// normalized map), and the Richardson ratio diagnosing an O(sigma_m^4)
/// residual (about 16 when sigma_m halves).
struct SmallSigmaMReport {
    std::array<double, 3> sigma_m_values{};
    std::array<double, 3> slope_values{};
    double slope_additive = 0.0;
    double c1_fitted = 0.0;
    double c1_model_raw = 0.0;          // (2/sa^2) * raw combination
    double c1_model_closed = 0.0;       // (2/sa^2) * m2-only form
    double richardson_ratio = 0.0;
};

SmallSigmaMReport validate_small_sigma_m(double nu, double sigma_a, double theta,
                                         const QuadratureSpec& spec);

/// Large-sigma_m validation: slope signs at sigma_m in {20, 50, 100} checked
/// against the threshold formula (nu < 0.5) or strict negativity (nu > 0.5).
struct LargeSigmaMReport {
    std::array<double, 3> sigma_m_values{};
    std::array<double, 3> slope_values{};
    double threshold = 0.0;  // NaN when nu >= 0.5
    bool consistent = false;
};

LargeSigmaMReport validate_large_sigma_m(double nu, double sigma_a, const QuadratureSpec& spec);

}  // namespace mvphase
