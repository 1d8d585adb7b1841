#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "medest/estimators.hpp"
#include "medest/population.hpp"
#include "medest/rng.hpp"

namespace medest {

struct McConfig {
    int n = 0;                          // sample size
    std::uint64_t replicates = 100000;
    std::uint64_t seed = 42;
    int workers = 1;
};

/// Per-estimator simulation outcome. std_error is the standard error of the
/// mse estimate itself (sd of the squared errors / sqrt(replicates)), which
/// is what "within 3 standard errors of exact" checks use.
struct McEstimatorResult {
    std::string name;
    double mse = 0.0;
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t replicates = 0;       // replicates actually included
    std::uint64_t failures = 0;         // replicates where evaluation threw
};

struct McResult {
    std::uint64_t replicates = 0;
    double mean_ybar = 0.0;
    double mean_m = 0.0;
    std::vector<McEstimatorResult> estimators;
};

/// One without-replacement sample of cfg-many indices drawn by a partial
/// Fisher-Yates pass over `perm`, which must be a permutation of
/// 0..pop_size-1 and stays one afterwards -- callers keep a single
/// permutation alive across replicates instead of refilling it each draw.
void draw_srswor(Xoshiro256pp& rng, std::span<int> perm, int n,
                 std::span<int> out);

/// Simulates cfg.replicates draws and evaluates every spec on each sample.
/// mbar is the mean of the exact sample-median distribution (the family's
/// anchor constant). Replicates are split across cfg.workers contiguous
/// blocks with one RNG substream per worker, so a given (seed, workers)
/// pair reproduces bit-identically.
McResult mc_run(const Population& pop, std::span<const EstimatorSpec> specs,
                double mbar, const McConfig& cfg);

}  // namespace medest
