#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace mvphase {

/// Model point of the mean-field SDE with bistable drift, additive noise
/// sigma_a, multiplicative noise sigma_m and integral-interpretation
/// parameter nu (1 = Ito, 1/2 = Stratonovich, 0 = Klimontovich).
struct ModelParams {
    double nu = 1.0;
    double sigma_a = 1.0;
    double sigma_m = 0.0;
    double a = 1.0;
    double theta = 1.0;

    void validate() const {
        if (!(nu >= 0.0 && nu <= 1.0))
            throw std::invalid_argument("ModelParams: nu must lie in [0, 1]");
        if (!(sigma_a > 0.0))
            throw std::invalid_argument("ModelParams: sigma_a must be > 0");
        if (!(sigma_m >= 0.0))
            throw std::invalid_argument("ModelParams: sigma_m must be >= 0");
        if (!(theta >= 0.0))
            throw std::invalid_argument("ModelParams: theta must be >= 0");
        if (!std::isfinite(a))
            throw std::invalid_argument("ModelParams: a must be finite");
    }
};

/// Ito-form drift: a*x - x^3 + (1 - nu)*sigma_m^2*x - theta*(x - mu).
/// The (1 - nu) term is the interpretation correction (1-nu)*g(x)*g'(x)
/// for g(x) = sigma_m*x; all non-Ito interpretations reduce to this.
inline double ito_drift(const ModelParams& p, double mu, double x) {
    return p.a * x - x * x * x + (1.0 - p.nu) * p.sigma_m * p.sigma_m * x -
           p.theta * (x - mu);
}

/// Diffusion coefficient sqrt(sigma_a^2 + sigma_m^2 x^2) >= sigma_a.
inline double diffusion(const ModelParams& p, double x) {
    return std::sqrt(p.sigma_a * p.sigma_a + p.sigma_m * p.sigma_m * x * x);
}

/// Extrema count of the nu-corrected potential: 3 wells if
/// a + (1 - nu)*sigma_m^2 > 0, else 1.
inline int effective_well_count(const ModelParams& p) {
    return (p.a + (1.0 - p.nu) * p.sigma_m * p.sigma_m > 0.0) ? 3 : 1;
}

}  // namespace mvphase
