#pragma once

#include <vector>

#include "mvphase/density.hpp"

namespace mvphase {

enum class PhaseLabel { Stable, Unstable };

/// Roots of the self-consistency map, its derivative at zero, and the phase.
/// Roots are sorted ascending, always contain 0, and come in +/- pairs.
struct SelfConsistencyReport {
    ModelParams params;
    std::vector<double> roots;
    double derivative_at_zero = 0.0;
    PhaseLabel phase = PhaseLabel::Unstable;
};

/// Self-consistency map: first moment of the stationary measure built at
/// candidate mean mu, minus mu. Its roots are the admissible stationary means.
double self_consistency(const ModelParams& p, double mu, const QuadratureSpec& spec);

/// Derivative of the self-consistency map at mu = 0, by differentiation under
/// the integral: (2 theta/(sa sm)) * E[x arctan(sm x / sa)] - 1 under the
/// symmetric measure; additive branch (2 theta / sa^2) * m2 - 1.
double self_consistency_slope_analytic(const ModelParams& p, const QuadratureSpec& spec);

/// Central-difference derivative of the self-consistency map at mu = 0.
double self_consistency_slope_fd(const ModelParams& p, double h, const QuadratureSpec& spec);

/// Scan, bracket and refine all stationary means; classify the phase by the
/// sign of the analytic slope at zero. Throws RootCountError when the root
/// count lands outside {1, 3} (a quadrature/grid failure, not a model state).
SelfConsistencyReport find_stationary_means(const ModelParams& p, const QuadratureSpec& spec);

}  // namespace mvphase
