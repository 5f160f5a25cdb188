#include "mvphase/selfconsistency.hpp"

#include <algorithm>
#include <cmath>

namespace mvphase {

namespace {

constexpr int kScanPoints = 200;
constexpr double kRootRefineTol = 1e-9;
constexpr double kDedupTol = 1e-6;
constexpr double kZeroSnap = 1e-7;

double scan_mu_max(const ModelParams& p) {
    const double corrected = std::max(p.a, 0.0) + (1.0 - p.nu) * p.sigma_m * p.sigma_m + p.theta;
    return std::max(3.0, 2.0 * std::sqrt(corrected));
}

}  // namespace

double self_consistency(const ModelParams& p, double mu, const QuadratureSpec& spec) {
    const StationaryDensity d(p, mu, spec);
    return d.moment(1) - mu;
}

double self_consistency_slope_analytic(const ModelParams& p, const QuadratureSpec& spec) {
    p.validate();
    const StationaryDensity d(p, 0.0, spec);
    if (p.sigma_m <= sigma_switch(p)) {
        return 2.0 * p.theta / (p.sigma_a * p.sigma_a) * d.moment(2) - 1.0;
    }
    // E[x arctan(sm x / sa)]: the arctan factor is bounded, x weighs the tail
    // like the first moment does
    const double bound = d.window(40.0 + std::log1p(d.trunc()));
    auto f = [&](double x) {
        return x * std::atan(p.sigma_m * x / p.sigma_a) *
               std::exp(log_unnormalized(p, 0.0, x) - d.log_norm());
    };
    const double integral = integrate_interval(f, -bound, bound, spec);
    return 2.0 * p.theta / (p.sigma_a * p.sigma_m) * integral - 1.0;
}

double self_consistency_slope_fd(const ModelParams& p, double h, const QuadratureSpec& spec) {
    p.validate();
    return central_diff([&](double mu) { return self_consistency(p, mu, spec); }, 0.0, h);
}

SelfConsistencyReport find_stationary_means(const ModelParams& p, const QuadratureSpec& spec) {
    p.validate();
    SelfConsistencyReport report;
    report.params = p;
    report.derivative_at_zero = self_consistency_slope_analytic(p, spec);
    report.phase = report.derivative_at_zero > 0.0 ? PhaseLabel::Stable : PhaseLabel::Unstable;

    auto f = [&](double mu) { return self_consistency(p, mu, spec); };

    const double mu_max = scan_mu_max(p);
    const double step = mu_max / static_cast<double>(kScanPoints);

    std::vector<double> positive;
    double prev_mu = step;
    double prev_f = f(prev_mu);
    for (int i = 2; i <= kScanPoints; ++i) {
        const double mu = step * static_cast<double>(i);
        const double fv = f(mu);
        if (prev_f == 0.0) {
            positive.push_back(prev_mu);
        } else if (prev_f * fv < 0.0) {
            const Bracket br{prev_mu, mu, prev_f, fv};
            positive.push_back(find_root(f, br, kRootRefineTol));
        }
        prev_mu = mu;
        prev_f = fv;
    }

    // A stable phase very close to the transition has its nonzero root below
    // the first grid point; bracket it against a small mu where F > 0.
    if (report.derivative_at_zero > 0.0 && positive.empty()) {
        double lo = step;
        double f_lo = f(lo);
        int halvings = 0;
        while (f_lo <= 0.0 && halvings < 48) {
            lo *= 0.5;
            f_lo = f(lo);
            ++halvings;
        }
        if (f_lo > 0.0) {
            double hi = lo * 2.0;
            double f_hi = f(hi);
            while (f_hi > 0.0 && hi < mu_max) {
                hi = std::min(hi * 2.0, mu_max);
                f_hi = f(hi);
            }
            if (f_hi < 0.0) {
                const Bracket br{lo, hi, f_lo, f_hi};
                positive.push_back(find_root(f, br, kRootRefineTol));
            }
        }
    }

    // deduplicate and drop roots that are numerically zero
    std::sort(positive.begin(), positive.end());
    std::vector<double> unique_pos;
    for (double r : positive) {
        if (std::abs(r) < kZeroSnap) continue;
        if (!unique_pos.empty() && std::abs(r - unique_pos.back()) < kDedupTol) continue;
        unique_pos.push_back(r);
    }

    const std::size_t count = 1 + 2 * unique_pos.size();
    if (count != 1 && count != 3) {
        throw RootCountError("find_stationary_means: " + std::to_string(count) +
                             " roots after deduplication (nu=" + std::to_string(p.nu) +
                             ", sigma_a=" + std::to_string(p.sigma_a) +
                             ", sigma_m=" + std::to_string(p.sigma_m) + ")");
    }

    for (double r : unique_pos) report.roots.push_back(-r);
    std::reverse(report.roots.begin(), report.roots.end());
    report.roots.push_back(0.0);
    for (double r : unique_pos) report.roots.push_back(r);
    std::sort(report.roots.begin(), report.roots.end());
    return report;
}

}  // namespace mvphase
