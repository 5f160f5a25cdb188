#pragma once

#include <cstdint>
#include <vector>

#include "mvphase/model.hpp"

namespace mvphase {

enum class NoiseForm {
    TwoNoise,     // sigma_a xi1 + sigma_m X xi2 (independent normals)
    SingleNoise,  // sqrt(sigma_a^2 + sigma_m^2 X^2) xi (equal in law)
};

enum class InitCondition {
    AllPositive,    // all particles at +sqrt(max(a, 1))
    SymmetricPair,  // half at +sqrt(max(a, 1)), half at -sqrt(max(a, 1))
    Gaussian,       // N(0, 0.5^2) draws from the seed
};

/// n-particle state advanced by Euler-Maruyama on the Ito-corrected drift.
/// Per-particle noise comes from counter-based streams split off the master
/// seed, so trajectories are bitwise reproducible for any worker count.
struct ParticleEnsemble {
    ModelParams params;
    std::vector<double> states;
    double time = 0.0;
    double dt = 1e-3;
    std::uint64_t seed = 0;
    std::uint64_t step_index = 0;
    NoiseForm noise_form = NoiseForm::TwoNoise;
    unsigned threads = 0;

private:
    std::vector<double> scratch_;
    friend void step(ParticleEnsemble& e);
    friend double ensemble_mean(const ParticleEnsemble& e);
};

ParticleEnsemble make_ensemble(const ModelParams& p, std::size_t n, double dt,
                               std::uint64_t seed, InitCondition init = InitCondition::AllPositive,
                               NoiseForm noise_form = NoiseForm::TwoNoise);

/// Empirical mean of the current states (fixed-blocked deterministic sum).
double ensemble_mean(const ParticleEnsemble& e);

/// One Euler-Maruyama step: every particle reads the pre-step snapshot and the
/// pre-step mean. Throws BlowUpError if any |state| exceeds 1e6.
void step(ParticleEnsemble& e);

struct Transition {
    double time;
    int from_sign;
    int to_sign;
};

/// Recorded empirical-mean path with hysteresis-filtered sign transitions.
struct MeanTrajectory {
    std::vector<double> times;
    std::vector<double> means;
    std::vector<Transition> transitions;
    double burn_in = 0.0;
    double hysteresis = 0.25;
};

struct SimOptions {
    double t_end = 100.0;
    double dt = 1e-3;
    double burn_in = 0.0;
    std::uint64_t seed = 0;
    InitCondition init = InitCondition::AllPositive;
    NoiseForm noise_form = NoiseForm::TwoNoise;
    double hysteresis = 0.25;
    unsigned threads = 0;
};

/// Simulate and record the empirical mean every max(1, floor(0.01/dt)) steps.
/// Deterministic given (p, n, options): the seed fixes every noise draw.
MeanTrajectory simulate(const ModelParams& p, std::size_t n, const SimOptions& opts);

struct TransitionStats {
    int count = 0;
    double mean_residence = 0.0;  // 0 when fewer than 2 transitions
};

/// Re-count sign transitions of the recorded means with hysteresis band
/// +/- delta and report the mean residence time between them.
TransitionStats transition_stats(const MeanTrajectory& traj, double delta);

struct TrajectorySummary {
    double time_average = 0.0;   // over samples after burn_in
    double std_error = 0.0;      // batch-means standard error of the average
    double second_moment = 0.0;  // time average of mean^2 after burn_in
    int transition_count = 0;
};

/// Batch-means summary of the post-burn-in segment.
TrajectorySummary summarize(const MeanTrajectory& traj);

}  // namespace mvphase
