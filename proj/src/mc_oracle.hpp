#pragma once

#include <cstdint>

#include "error_engine.hpp"

namespace lh::mc {

struct PathConfig {
    long n_paths = 100000;
    int n_steps = 2000;
    std::uint64_t seed = 1;
    bool antithetic = false;
    int n_threads = 1;
};

struct MCEstimate {
    double mse_hat = 0.0;
    double std_error = 0.0;
    long n_paths = 0;
    double mean_error = 0.0;  // diagnostic: mean of H - c - gains
};

// Small deterministic generator (xoshiro256++ seeded via splitmix64); one
// independent substream per path so results are thread-count invariant.
struct Rng {
    std::uint64_t s[4];
    explicit Rng(std::uint64_t seed);
    std::uint64_t next_u64();
    double next_uniform();       // (0, 1)
    double next_normal();        // Box-Muller, no caching
};

// Exact increment of the driving Levy process X over dt (BS and NIG only).
double sample_increment(const LevyModel& model, double dt, Rng& rng);

// Discrete-time hedge of the claim along simulated paths; per-path squared
// error averaged with a standard error.
MCEstimate simulate_hedge(const LevyModel& model, const PayoffTransform& pt,
                          const DeltaStrategy& strategy, double s0, double capital,
                          double maturity, const PathConfig& path_cfg,
                          const quad::QuadConfig& quad_cfg);

struct MomentCheckResult {
    double sample_mean = 0.0;
    double target = 0.0;
    double std_error = 0.0;
    double z_score = 0.0;
    bool pass = false;
};

// verifies E[S_t^u] = S_0^u e^{t kappa(u)} within 4 standard errors
MomentCheckResult moment_check(const LevyModel& model, double u, double t, long n_paths,
                               std::uint64_t seed);

} // namespace lh::mc
