#include "mvphase/particles.hpp"

#include <atomic>
#include <cmath>

#include "mvphase/errors.hpp"
#include "mvphase/parallel.hpp"
#include "mvphase/rng.hpp"

namespace mvphase {

namespace {

constexpr std::size_t kBlock = 1024;  // fixed reduction block, scheduling-independent
constexpr double kBlowUpLimit = 1e6;
constexpr std::uint64_t kInitCounterBase = 1ULL << 62;  // separates init draws from step draws

double blocked_sum(const std::vector<double>& v) {
    const std::size_t nblocks = (v.size() + kBlock - 1) / kBlock;
    double total = 0.0;
    for (std::size_t b = 0; b < nblocks; ++b) {
        double partial = 0.0;
        const std::size_t end = std::min(v.size(), (b + 1) * kBlock);
        for (std::size_t i = b * kBlock; i < end; ++i) partial += v[i];
        total += partial;
    }
    return total;
}

}  // namespace

ParticleEnsemble make_ensemble(const ModelParams& p, std::size_t n, double dt,
                               std::uint64_t seed, InitCondition init, NoiseForm noise_form) {
    p.validate();
    if (n < 1) throw std::invalid_argument("make_ensemble: n must be >= 1");
    if (!(dt > 0.0)) throw std::invalid_argument("make_ensemble: dt must be > 0");

    ParticleEnsemble e;
    e.params = p;
    e.dt = dt;
    e.seed = seed;
    e.noise_form = noise_form;
    e.states.resize(n);

    const double well = std::sqrt(std::max(p.a, 1.0));
    switch (init) {
        case InitCondition::AllPositive:
            for (auto& x : e.states) x = well;
            break;
        case InitCondition::SymmetricPair:
            for (std::size_t i = 0; i < n; ++i) e.states[i] = (i % 2 == 0) ? well : -well;
            break;
        case InitCondition::Gaussian:
            for (std::size_t i = 0; i < n; ++i)
                e.states[i] = 0.5 * rng::normal_pair(seed, i, kInitCounterBase).z1;
            break;
    }
    return e;
}

double ensemble_mean(const ParticleEnsemble& e) {
    return blocked_sum(e.states) / static_cast<double>(e.states.size());
}

void step(ParticleEnsemble& e) {
    const ModelParams& p = e.params;
    const std::size_t n = e.states.size();
    const double mean = ensemble_mean(e);
    const double dt = e.dt;
    const double sqrt_dt = std::sqrt(dt);
    const double corr = (1.0 - p.nu) * p.sigma_m * p.sigma_m;

    if (e.scratch_.size() != n) e.scratch_.resize(n);
    std::atomic<bool> blew_up{false};

    parallel_for_blocks(n, kBlock, e.threads, [&](std::size_t i0, std::size_t i1) {
        for (std::size_t i = i0; i < i1; ++i) {
            const double x = e.states[i];
            const double drift =
                p.a * x - x * x * x + corr * x - p.theta * (x - mean);
            const auto z = rng::normal_pair(e.seed, i, e.step_index);
            double noise;
            if (e.noise_form == NoiseForm::TwoNoise) {
                noise = p.sigma_a * z.z1 + p.sigma_m * x * z.z2;
            } else {
                noise = diffusion(p, x) * z.z1;
            }
            const double next = x + drift * dt + noise * sqrt_dt;
            if (!(std::abs(next) <= kBlowUpLimit))
                blew_up.store(true, std::memory_order_relaxed);
            e.scratch_[i] = next;
        }
    });

    if (blew_up.load())
        throw BlowUpError("step: particle state exceeded 1e6 at t=" + std::to_string(e.time) +
                          " (timestep too large)");
    e.states.swap(e.scratch_);
    e.time += dt;
    ++e.step_index;
}

MeanTrajectory simulate(const ModelParams& p, std::size_t n, const SimOptions& opts) {
    if (!(opts.t_end > opts.burn_in))
        throw std::invalid_argument("simulate: t_end must exceed burn_in");

    ParticleEnsemble e = make_ensemble(p, n, opts.dt, opts.seed, opts.init, opts.noise_form);
    e.threads = opts.threads;

    MeanTrajectory traj;
    traj.burn_in = opts.burn_in;
    traj.hysteresis = opts.hysteresis;

    const auto total_steps = static_cast<std::uint64_t>(std::llround(opts.t_end / opts.dt));
    const auto stride = static_cast<std::uint64_t>(
        std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(0.01 / opts.dt))));
    traj.times.reserve(total_steps / stride + 2);
    traj.means.reserve(total_steps / stride + 2);

    int state_sign = 0;
    auto record = [&](double t, double m) {
        traj.times.push_back(t);
        traj.means.push_back(m);
        if (state_sign == 0) {
            if (std::abs(m) > opts.hysteresis) state_sign = m > 0.0 ? 1 : -1;
        } else if (m * static_cast<double>(state_sign) < -opts.hysteresis) {
            traj.transitions.push_back({t, state_sign, -state_sign});
            state_sign = -state_sign;
        }
    };

    record(0.0, ensemble_mean(e));
    for (std::uint64_t s = 1; s <= total_steps; ++s) {
        step(e);
        if (s % stride == 0 || s == total_steps) record(e.time, ensemble_mean(e));
    }
    return traj;
}

TransitionStats transition_stats(const MeanTrajectory& traj, double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("transition_stats: delta must be > 0");
    TransitionStats stats;
    int state_sign = 0;
    std::vector<double> times;
    for (std::size_t i = 0; i < traj.means.size(); ++i) {
        const double m = traj.means[i];
        if (state_sign == 0) {
            if (std::abs(m) > delta) state_sign = m > 0.0 ? 1 : -1;
        } else if (m * static_cast<double>(state_sign) < -delta) {
            times.push_back(traj.times[i]);
            state_sign = -state_sign;
        }
    }
    stats.count = static_cast<int>(times.size());
    if (times.size() >= 2) {
        double sum = 0.0;
        for (std::size_t i = 1; i < times.size(); ++i) sum += times[i] - times[i - 1];
        stats.mean_residence = sum / static_cast<double>(times.size() - 1);
    }
    return stats;
}

TrajectorySummary summarize(const MeanTrajectory& traj) {
    TrajectorySummary s;
    std::vector<double> post;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        if (traj.times[i] >= traj.burn_in) post.push_back(traj.means[i]);
    }
    if (post.empty()) return s;

    double sum = 0.0, sum2 = 0.0;
    for (double m : post) {
        sum += m;
        sum2 += m * m;
    }
    const auto np = static_cast<double>(post.size());
    s.time_average = sum / np;
    s.second_moment = sum2 / np;

    // batch means absorb the autocorrelation of the recorded series
    const std::size_t batches = std::min<std::size_t>(32, post.size());
    if (batches >= 2) {
        const std::size_t len = post.size() / batches;
        double bsum = 0.0, bsum2 = 0.0;
        for (std::size_t b = 0; b < batches; ++b) {
            double acc = 0.0;
            for (std::size_t i = b * len; i < (b + 1) * len; ++i) acc += post[i];
            const double bm = acc / static_cast<double>(len);
            bsum += bm;
            bsum2 += bm * bm;
        }
        const auto nb = static_cast<double>(batches);
        const double var = std::max(0.0, (bsum2 - bsum * bsum / nb) / (nb - 1.0));
        s.std_error = std::sqrt(var / nb);
    }
    s.transition_count = static_cast<int>(traj.transitions.size());
    return s;
}

}  // namespace mvphase
