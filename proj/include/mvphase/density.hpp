#pragma once

#include "mvphase/model.hpp"
#include "mvphase/numerics.hpp"

namespace mvphase {

/// Multiplicative-noise level below which the analytic additive (Dawson-Shiino)
/// limit replaces the full exponent. The full form suffers catastrophic
/// cancellation between its sigma_a^2/sigma_m^4 log term and -x^2/sigma_m^2.
inline double sigma_switch(const ModelParams& p) { return 1e-3 * p.sigma_a; }

/// Log of the unnormalized stationary measure at candidate mean mu:
///   [(a - theta - nu sm^2 + sa^2/sm^2)/sm^2] log(1 + (sm/sa)^2 x^2)
///   + [2 theta mu/(sa sm)] arctan(sm x / sa) - x^2/sm^2
/// evaluated in a cancellation-free rearrangement; for sm <= sigma_switch the
/// additive limit (2/sa^2)((a-theta) x^2/2 - x^4/4 + theta mu x) applies.
double log_unnormalized(const ModelParams& p, double mu, double x);

/// Normalized stationary measure with log-space evaluation. Immutable after
/// construction; all evaluations are pure.
class StationaryDensity {
public:
    StationaryDensity(const ModelParams& p, double mu, const QuadratureSpec& spec);

    double log_pdf(double x) const { return log_unnormalized(params_, mu_, x) - log_norm_; }
    double pdf(double x) const { return std::exp(log_pdf(x)); }

    /// k-th moment of the density, k in [0, 12].
    double moment(int k) const;

    /// Half-width of the window where the exponent stays within `nats` of its
    /// peak; integrals against weights growing like x^k use
    /// window(40 + k*log1p(trunc())).
    double window(double nats) const;

    const ModelParams& params() const { return params_; }
    double mu() const { return mu_; }
    double log_norm() const { return log_norm_; }
    double trunc() const { return trunc_; }
    const QuadratureSpec& quadrature() const { return spec_; }

private:
    ModelParams params_;
    double mu_;
    QuadratureSpec spec_;
    double exponent_peak_;  // max of log_unnormalized over x
    double peak_x_;
    double log_norm_;
    double trunc_;
};

/// Construct the normalized stationary measure for (p, mu).
StationaryDensity normalize(const ModelParams& p, double mu, const QuadratureSpec& spec);

/// k-th moment of a normalized density.
double moment(const StationaryDensity& d, int k);

}  // namespace mvphase
