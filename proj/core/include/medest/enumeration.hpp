#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "medest/estimators.hpp"
#include "medest/population.hpp"

namespace medest {

/// Streaming first and second moments of the triple (ybar, xbar, m) over a
/// stream of samples. Uses the pairwise-update (Welford) recurrences so a
/// billion-sample enumeration neither overflows nor drifts, and supports
/// merging so worker shards can be combined deterministically.
class MomentAccumulator {
public:
    void add(double ybar, double xbar, double m) noexcept;
    void merge(const MomentAccumulator& other) noexcept;

    std::uint64_t count() const noexcept { return count_; }
    // mean / m2 index order: 0=ybar, 1=xbar, 2=m; m2 holds the upper
    // triangle (00, 01, 02, 11, 12, 22) of sums of centered products.
    const std::array<double, 3>& means() const noexcept { return mean_; }
    const std::array<double, 6>& m2() const noexcept { return m2_; }

private:
    std::uint64_t count_ = 0;
    std::array<double, 3> mean_{};
    std::array<double, 6> m2_{};
};

/// Moments of the exact sampling distribution of (ybar, xbar, m) under
/// without-replacement sampling of n units. Variances and covariances are
/// population-style (divide by the number of samples, not samples-1): the
/// enumeration covers the entire sample space, so there is nothing to
/// correct for.
struct DistributionSummary {
    std::uint64_t samples = 0;
    double mean_ybar = 0.0;
    double mean_xbar = 0.0;
    double mean_m = 0.0;
    double var_ybar = 0.0;
    double var_xbar = 0.0;
    double var_m = 0.0;
    double cov_ym = 0.0;   // Cov(ybar, m)
    double cov_yx = 0.0;   // Cov(ybar, xbar)
    double cov_xm = 0.0;   // Cov(xbar, m)
};

DistributionSummary summarize(const MomentAccumulator& acc);

/// Median of the values at the given positions of `sorted`, where `sorted`
/// must be ascending; used by the fast paths. The general-purpose overloads
/// take raw sample values and select in a scratch buffer.
double sample_median(std::span<const double> values);
double sample_median(std::span<const double> values,
                     std::vector<double>& scratch);

/// Walks all C(N, n) subsets and accumulates (ybar, xbar, m). workers > 1
/// splits the enumeration into contiguous rank ranges; shard accumulators
/// are merged in rank order, so the result is deterministic for any worker
/// count and shard results agree with the single-threaded walk to roundoff.
/// Throws capacity_error when C(N, n) does not fit in a signed 64-bit count.
DistributionSummary exact_sampling_distribution(const Population& pop, int n,
                                                int workers = 1);

/// Exact mean squared error E[(t - Ybar)^2] of one family member over the
/// full sample space, plus how many samples the estimator was undefined on
/// (singular t1 bracket etc. -- those samples are excluded from the mean).
struct ExactMseResult {
    double mse = 0.0;
    double mean = 0.0;              // E[t]
    std::uint64_t samples = 0;      // samples actually included
    std::uint64_t failures = 0;     // samples where evaluation threw
};

ExactMseResult exact_estimator_mse(const Population& pop, int n,
                                   const EstimatorSpec& spec, double mbar,
                                   int workers = 1);

/// Analytic distribution of the sample median for odd n over a population
/// with distinct y values: the median equals the i-th order statistic
/// y_(i) in exactly C(i-1, h) * C(N-i, h) of the C(N, n) samples, where
/// h = (n-1)/2. Returned counts are indexed by i-1 (ascending y order).
/// Throws std::domain_error for even n and ties_error on duplicate y.
std::vector<std::uint64_t> median_position_counts(const Population& pop,
                                                  int n);

/// First and second moments of m, and Cov(ybar, m), via the analytic
/// order-statistic route above -- no enumeration. Same domain restrictions
/// as median_position_counts.
struct MedianMoments {
    double mean_m = 0.0;
    double var_m = 0.0;
    double cov_ym = 0.0;
};

MedianMoments median_distribution_fast(const Population& pop, int n);

}  // namespace medest
