#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mvphase/asymptotics.hpp"

namespace mvphase {

/// Rectangular evaluation grid in the (sigma_a, sigma_m) quarter-plane.
struct ContourGrid {
    double sigma_a_lo = 0.1;
    double sigma_a_hi = 2.0;
    double sigma_m_lo = 0.0;
    double sigma_m_hi = 3.0;
    int nx = 64;  // sigma_a resolution
    int ny = 64;  // sigma_m resolution

    void validate() const;
};

/// Polyline approximation of the phase-transition contour (zero set of the
/// self-consistency slope at zero) at fixed nu. Points are ordered along the
/// curve; chains touching sigma_m = 0 come first.
struct PhaseContour {
    double nu = 0.0;
    std::vector<std::pair<double, double>> points;  // (sigma_a, sigma_m)
    ContourGrid grid;
    bool refined = false;
};

enum class SweepKind {
    Ray,     // sigma_m = ratio * sigma_a, sweep sigma_a
    SigmaM,  // fixed sigma_a, sweep sigma_m
    Theta,   // fixed (sigma_a, sigma_m), sweep theta
};

/// One-parameter path through model space for bifurcation diagrams.
struct SweepPath {
    SweepKind kind = SweepKind::Ray;
    double lo = 0.1;
    double hi = 2.0;
    double ratio = 0.0;      // Ray only
    ModelParams base;        // carries nu, a, theta and the fixed noise levels
};

struct BifurcationDiagram {
    double nu = 0.0;
    SweepPath path;
    std::vector<std::pair<double, std::vector<double>>> samples;  // (value, roots)
};

/// Root counts along a sigma_m sweep, run-length encoded into arrow notation:
/// "3→1", "1→3→1", or with a trailing arrow ("3→") when no transition occurs.
struct PhaseSequence {
    std::vector<int> counts;
    std::string notation;
};

/// Critical additive noise of the Dawson-Shiino limit: the unique sigma_a root
/// of the additive slope, bracketed in [0.05, 10]. Requires theta > 0, a > 0.
double critical_sigma_dawson(double theta, double a, const QuadratureSpec& spec);

/// Stable iff the analytic slope at zero is positive.
PhaseLabel classify(const ModelParams& p, const QuadratureSpec& spec);

/// Marching squares on the slope's sign grid, with per-edge bisection until
/// |slope| < 1e-5 at every output point. Empty contour when no sign change.
PhaseContour trace_contour(double nu, const ContourGrid& grid, const QuadratureSpec& spec,
                           unsigned threads = 0, double a = 1.0, double theta = 1.0);

/// Stationary means recorded along a sweep path.
BifurcationDiagram bifurcation(double nu, const SweepPath& path, int n_samples,
                               const QuadratureSpec& spec);

/// Root counts along sigma_m in [0, sigma_m_max] at fixed sigma_a (a = theta = 1
/// by default), encoded into arrow notation. Requires n_samples >= 2.
PhaseSequence phase_sequence(double nu, double sigma_a, double sigma_m_max, int n_samples,
                             const QuadratureSpec& spec, double a = 1.0, double theta = 1.0);

/// Run-length encode a sequence of root counts into the arrow notation.
std::string encode_sequence(const std::vector<int>& counts);

struct NuThresholds {
    double nu1 = 0.0;  // contour peak equals its large-sigma_m asymptote
    double nu2 = 0.0;  // threshold formula crosses sigma_c
    double nu3 = 0.0;  // small-sigma_m contour gradient changes sign
};

struct NuThresholdOptions {
    int contour_nx = 64;
    int contour_ny = 64;
    double sigma_m_max = 40.0;
    double nu_lo = 0.03;
    double nu_hi = 0.25;
    double nu_tol = 0.01;
    unsigned threads = 0;
};

/// Numerical estimates of the three interpretation thresholds at a = theta = 1.
NuThresholds estimate_nu_thresholds(const QuadratureSpec& spec,
                                    const NuThresholdOptions& opts = {});

}  // namespace mvphase
