#include "medest/enumeration.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "medest/combinatorics.hpp"
#include "medest/errors.hpp"

namespace medest {

void MomentAccumulator::add(double ybar, double xbar, double m) noexcept {
    const double v[3] = {ybar, xbar, m};
    ++count_;
    const double inv_n = 1.0 / static_cast<double>(count_);
    double before[3];
    double after[3];
    for (int j = 0; j < 3; ++j) {
        before[j] = v[j] - mean_[j];
        mean_[j] += before[j] * inv_n;
        after[j] = v[j] - mean_[j];
    }
    // Upper triangle: C_ab += (v_a - old mean_a)(v_b - new mean_b).
    m2_[0] += before[0] * after[0];
    m2_[1] += before[0] * after[1];
    m2_[2] += before[0] * after[2];
    m2_[3] += before[1] * after[1];
    m2_[4] += before[1] * after[2];
    m2_[5] += before[2] * after[2];
}

void MomentAccumulator::merge(const MomentAccumulator& other) noexcept {
    if (other.count_ == 0) return;
    if (count_ == 0) {
        *this = other;
        return;
    }
    const auto na = static_cast<double>(count_);
    const auto nb = static_cast<double>(other.count_);
    const double nab = na + nb;
    double delta[3];
    for (int j = 0; j < 3; ++j) {
        delta[j] = other.mean_[j] - mean_[j];
        mean_[j] += delta[j] * (nb / nab);
    }
    const double scale = na * nb / nab;
    static constexpr int kRow[6] = {0, 0, 0, 1, 1, 2};
    static constexpr int kCol[6] = {0, 1, 2, 1, 2, 2};
    for (int t = 0; t < 6; ++t) {
        m2_[t] += other.m2_[t] + delta[kRow[t]] * delta[kCol[t]] * scale;
    }
    count_ += other.count_;
}

DistributionSummary summarize(const MomentAccumulator& acc) {
    if (acc.count() == 0) {
        throw std::domain_error("summarize: empty accumulator");
    }
    const double inv_n = 1.0 / static_cast<double>(acc.count());
    DistributionSummary out;
    out.samples = acc.count();
    out.mean_ybar = acc.means()[0];
    out.mean_xbar = acc.means()[1];
    out.mean_m = acc.means()[2];
    out.var_ybar = acc.m2()[0] * inv_n;
    out.cov_yx = acc.m2()[1] * inv_n;
    out.cov_ym = acc.m2()[2] * inv_n;
    out.var_xbar = acc.m2()[3] * inv_n;
    out.cov_xm = acc.m2()[4] * inv_n;
    out.var_m = acc.m2()[5] * inv_n;
    return out;
}

double sample_median(std::span<const double> values,
                     std::vector<double>& scratch) {
    if (values.empty()) {
        throw std::domain_error("sample_median: empty sample");
    }
    scratch.assign(values.begin(), values.end());
    const std::size_t upper = values.size() / 2;
    std::nth_element(scratch.begin(),
                     scratch.begin() + static_cast<std::ptrdiff_t>(upper),
                     scratch.end());
    const double hi = scratch[upper];
    if (values.size() % 2 == 1) return hi;
    const double lo = *std::max_element(
        scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(upper));
    return 0.5 * (lo + hi);
}

double sample_median(std::span<const double> values) {
    std::vector<double> scratch;
    return sample_median(values, scratch);
}

namespace {

// Population rearranged in ascending-y order. Lexicographic index subsets
// of this ordering visit exactly the C(N, n) unit subsets, and within any
// subset the y values are already sorted -- the sample median is a
// positional read instead of a per-sample selection.
struct SortedView {
    std::vector<double> ys;
    std::vector<double> xs;
};

SortedView sorted_by_y(const Population& pop) {
    std::vector<int> order(pop.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return pop.y()[static_cast<std::size_t>(a)] <
               pop.y()[static_cast<std::size_t>(b)];
    });
    SortedView view;
    view.ys.reserve(pop.size());
    view.xs.reserve(pop.size());
    for (int i : order) {
        view.ys.push_back(pop.y()[static_cast<std::size_t>(i)]);
        view.xs.push_back(pop.x()[static_cast<std::size_t>(i)]);
    }
    return view;
}

// Walks `count` subsets starting at `first`, feeding each sample's
// (ybar, xbar, m) to `sink`. Per-position running sums are reused across
// steps; since they are always the plain left-to-right sum over the current
// subset, every sample's values are bit-identical no matter which rank the
// walk started from -- worker splits cannot perturb results.
template <typename Sink>
void walk(const SortedView& view, int n, std::uint64_t first,
          std::uint64_t count, Sink&& sink) {
    const int N = static_cast<int>(view.ys.size());
    CombinationCursor cursor = CombinationCursor::at_rank(N, n, first);
    const double* ys = view.ys.data();
    const double* xs = view.xs.data();
    const int* idx = cursor.indices().data();

    std::vector<double> sumy(static_cast<std::size_t>(n));
    std::vector<double> sumx(static_cast<std::size_t>(n));
    const auto refresh = [&](int from) {
        double sy = from == 0 ? 0.0 : sumy[static_cast<std::size_t>(from - 1)];
        double sx = from == 0 ? 0.0 : sumx[static_cast<std::size_t>(from - 1)];
        for (int j = from; j < n; ++j) {
            sy += ys[idx[j]];
            sx += xs[idx[j]];
            sumy[static_cast<std::size_t>(j)] = sy;
            sumx[static_cast<std::size_t>(j)] = sx;
        }
    };
    refresh(0);

    const int h1 = (n - 1) / 2;
    const int h2 = n / 2;
    const double inv_n = 1.0 / n;
    const std::size_t last = static_cast<std::size_t>(n - 1);
    for (std::uint64_t k = 0; k < count; ++k) {
        const double m = 0.5 * (ys[idx[h1]] + ys[idx[h2]]);
        sink(sumy[last] * inv_n, sumx[last] * inv_n, m);
        const int changed = cursor.step();
        if (changed < 0) break;
        refresh(changed);
    }
}

// Runs `job(shard, first, count)` over a contiguous partition of
// [0, total) using one thread per shard; shards merge in rank order.
template <typename Shard, typename Job>
std::vector<Shard> run_sharded(std::uint64_t total, int workers, Job job) {
    const std::uint64_t requested =
        static_cast<std::uint64_t>(std::max(workers, 1));
    const int used =
        static_cast<int>(std::max<std::uint64_t>(std::min(requested, total), 1));
    std::vector<Shard> shards(static_cast<std::size_t>(used));
    if (used == 1) {
        job(shards[0], 0, total);
        return shards;
    }
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(used));
    for (int w = 0; w < used; ++w) {
        // total/used splits evenly up to remainder spread over the front.
        const std::uint64_t first =
            total / static_cast<std::uint64_t>(used) *
                static_cast<std::uint64_t>(w) +
            std::min<std::uint64_t>(static_cast<std::uint64_t>(w),
                                    total % static_cast<std::uint64_t>(used));
        const std::uint64_t next =
            total / static_cast<std::uint64_t>(used) *
                static_cast<std::uint64_t>(w + 1) +
            std::min<std::uint64_t>(static_cast<std::uint64_t>(w + 1),
                                    total % static_cast<std::uint64_t>(used));
        threads.emplace_back([&, w, first, next] {
            job(shards[static_cast<std::size_t>(w)], first, next - first);
        });
    }
    for (auto& t : threads) t.join();
    return shards;
}

void check_sample_size(const Population& pop, int n) {
    if (n < 1 || static_cast<std::size_t>(n) > pop.size()) {
        throw std::domain_error("sample size n=" + std::to_string(n) +
                                " out of range for population of " +
                                std::to_string(pop.size()));
    }
}

}  // namespace

DistributionSummary exact_sampling_distribution(const Population& pop, int n,
                                                int workers) {
    check_sample_size(pop, n);
    const int N = static_cast<int>(pop.size());
    const std::uint64_t total = binomial(N, n);
    const SortedView view = sorted_by_y(pop);

    auto shards = run_sharded<MomentAccumulator>(
        total, workers,
        [&](MomentAccumulator& acc, std::uint64_t first, std::uint64_t count) {
            walk(view, n, first, count,
                 [&acc](double ybar, double xbar, double m) {
                     acc.add(ybar, xbar, m);
                 });
        });
    MomentAccumulator acc;
    for (const auto& shard : shards) acc.merge(shard);
    return summarize(acc);
}

namespace {

// Scalar counterpart of MomentAccumulator for the estimator value stream.
struct ValueAccumulator {
    std::uint64_t count = 0;
    std::uint64_t failures = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double v) noexcept {
        ++count;
        const double before = v - mean;
        mean += before / static_cast<double>(count);
        m2 += before * (v - mean);
    }

    void merge(const ValueAccumulator& other) noexcept {
        failures += other.failures;
        if (other.count == 0) return;
        if (count == 0) {
            const std::uint64_t keep = failures;
            *this = other;
            failures = keep;
            return;
        }
        const auto na = static_cast<double>(count);
        const auto nb = static_cast<double>(other.count);
        const double delta = other.mean - mean;
        mean += delta * (nb / (na + nb));
        m2 += other.m2 + delta * delta * (na * nb / (na + nb));
        count += other.count;
    }
};

}  // namespace

ExactMseResult exact_estimator_mse(const Population& pop, int n,
                                   const EstimatorSpec& spec, double mbar,
                                   int workers) {
    check_sample_size(pop, n);
    const int N = static_cast<int>(pop.size());
    const std::uint64_t total = binomial(N, n);
    const SortedView view = sorted_by_y(pop);

    double ysum = 0.0;
    for (double v : view.ys) ysum += v;
    const double ybar_pop = ysum / static_cast<double>(N);

    auto shards = run_sharded<ValueAccumulator>(
        total, workers,
        [&](ValueAccumulator& acc, std::uint64_t first, std::uint64_t count) {
            walk(view, n, first, count,
                 [&](double ybar, double /*xbar*/, double m) {
                     try {
                         acc.add(combined_estimate(spec, ybar, m, mbar));
                     } catch (const evaluation_error&) {
                         ++acc.failures;
                     }
                 });
        });
    ValueAccumulator acc;
    for (const auto& shard : shards) acc.merge(shard);

    if (acc.count == 0) {
        throw evaluation_error("estimator '" + spec.name +
                               "' is undefined on every sample");
    }
    ExactMseResult out;
    out.samples = acc.count;
    out.failures = acc.failures;
    out.mean = acc.mean;
    // E[(t - Ybar)^2] over the enumerated space = Var(t) + (E[t] - Ybar)^2.
    const double bias = acc.mean - ybar_pop;
    out.mse = acc.m2 / static_cast<double>(acc.count) + bias * bias;
    return out;
}

std::vector<std::uint64_t> median_position_counts(const Population& pop,
                                                  int n) {
    check_sample_size(pop, n);
    if (n % 2 == 0) {
        throw std::domain_error(
            "median_position_counts: analytic route needs odd n");
    }
    const int N = static_cast<int>(pop.size());
    std::vector<double> sorted(pop.y().begin(), pop.y().end());
    std::sort(sorted.begin(), sorted.end());
    for (int i = 1; i < N; ++i) {
        if (sorted[static_cast<std::size_t>(i)] ==
            sorted[static_cast<std::size_t>(i - 1)]) {
            throw ties_error(
                "analytic median distribution needs distinct y values "
                "(duplicate " +
                std::to_string(sorted[static_cast<std::size_t>(i)]) +
                "); use full enumeration instead");
        }
    }
    // With h units below and h above the median, the i-th smallest unit
    // (0-based) is the sample median in C(i, h) * C(N-1-i, h) subsets.
    const int h = (n - 1) / 2;
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(N), 0);
    for (int i = 0; i < N; ++i) {
        if (i < h || N - 1 - i < h) continue;
        counts[static_cast<std::size_t>(i)] =
            binomial(i, h) * binomial(N - 1 - i, h);
    }
    return counts;
}

MedianMoments median_distribution_fast(const Population& pop, int n) {
    const auto counts = median_position_counts(pop, n);
    const int N = static_cast<int>(pop.size());
    const int h = (n - 1) / 2;
    const std::uint64_t total = binomial(N, n);
    const double inv_total = 1.0 / static_cast<double>(total);

    std::vector<double> sorted(pop.y().begin(), pop.y().end());
    std::sort(sorted.begin(), sorted.end());

    double all = 0.0;
    for (double v : sorted) all += v;
    const double ybar_pop = all / static_cast<double>(N);

    MedianMoments out;
    for (int i = 0; i < N; ++i) {
        if (counts[static_cast<std::size_t>(i)] != 0) {
            out.mean_m +=
                static_cast<double>(counts[static_cast<std::size_t>(i)]) *
                inv_total * sorted[static_cast<std::size_t>(i)];
        }
    }

    double prefix = 0.0;       // sum of sorted[0..i-1]
    for (int i = 0; i < N; ++i) {
        const double yi = sorted[static_cast<std::size_t>(i)];
        const std::uint64_t c = counts[static_cast<std::size_t>(i)];
        if (c != 0) {
            const double p = static_cast<double>(c) * inv_total;
            const double dm = yi - out.mean_m;
            out.var_m += p * dm * dm;
            // Conditional on the median landing at position i, each of the
            // i units below contributes with probability h/i and each of
            // the N-1-i units above with probability h/(N-1-i), so the
            // conditional mean of ybar is a three-term average.
            const double suffix = all - prefix - yi;
            double cond = yi;
            if (h > 0) {
                cond += static_cast<double>(h) * prefix /
                            static_cast<double>(i) +
                        static_cast<double>(h) * suffix /
                            static_cast<double>(N - 1 - i);
            }
            cond /= static_cast<double>(n);
            out.cov_ym += p * (cond - ybar_pop) * dm;
        }
        prefix += yi;
    }
    return out;
}

}  // namespace medest
