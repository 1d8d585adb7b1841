#include "medest/montecarlo.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "medest/enumeration.hpp"
#include "medest/errors.hpp"

namespace medest {

void draw_srswor(Xoshiro256pp& rng, std::span<int> perm, int n,
                 std::span<int> out) {
    const auto big_n = static_cast<std::uint64_t>(perm.size());
    if (n < 1 || static_cast<std::uint64_t>(n) > big_n) {
        throw std::domain_error("draw_srswor: need 1 <= n <= N");
    }
    // Partial Fisher-Yates: after n swaps the head holds a uniform
    // n-subset in uniform order, and perm remains a permutation, so the
    // next call needs no reset.
    for (int j = 0; j < n; ++j) {
        const std::uint64_t pick =
            static_cast<std::uint64_t>(j) +
            rng.below(big_n - static_cast<std::uint64_t>(j));
        std::swap(perm[static_cast<std::size_t>(j)],
                  perm[static_cast<std::size_t>(pick)]);
        out[static_cast<std::size_t>(j)] = perm[static_cast<std::size_t>(j)];
    }
}

namespace {

// Welford pair for one estimator: squared-error stream (for the MSE and
// its standard error) and the estimate stream's running mean.
struct SpecAccumulator {
    std::uint64_t count = 0;
    std::uint64_t failures = 0;
    double sq_mean = 0.0;
    double sq_m2 = 0.0;
    double value_mean = 0.0;

    void add(double value, double ybar_pop) noexcept {
        ++count;
        const double inv = 1.0 / static_cast<double>(count);
        const double err = value - ybar_pop;
        const double sq = err * err;
        const double before = sq - sq_mean;
        sq_mean += before * inv;
        sq_m2 += before * (sq - sq_mean);
        value_mean += (value - value_mean) * inv;
    }

    void merge(const SpecAccumulator& other) noexcept {
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
        const double delta = other.sq_mean - sq_mean;
        sq_mean += delta * (nb / (na + nb));
        sq_m2 += other.sq_m2 + delta * delta * (na * nb / (na + nb));
        value_mean += (other.value_mean - value_mean) * (nb / (na + nb));
        count += other.count;
    }
};

struct WorkerState {
    std::vector<SpecAccumulator> specs;
    std::uint64_t replicates = 0;
    double ybar_mean = 0.0;
    double m_mean = 0.0;
};

}  // namespace

McResult mc_run(const Population& pop, std::span<const EstimatorSpec> specs,
                double mbar, const McConfig& cfg) {
    const auto big_n = static_cast<int>(pop.size());
    if (cfg.n < 1 || cfg.n > big_n) {
        throw std::domain_error("mc_run: sample size out of range");
    }
    if (cfg.replicates == 0) {
        throw std::domain_error("mc_run: need at least one replicate");
    }
    const int workers = std::max(
        1, static_cast<int>(std::min<std::uint64_t>(
               static_cast<std::uint64_t>(std::max(cfg.workers, 1)),
               cfg.replicates)));

    double ysum = 0.0;
    for (double v : pop.y()) ysum += v;
    const double ybar_pop = ysum / static_cast<double>(big_n);

    std::vector<WorkerState> states(static_cast<std::size_t>(workers));
    auto run_block = [&](WorkerState& state, int worker,
                         std::uint64_t replicates) {
        state.specs.resize(specs.size());
        Xoshiro256pp rng = Xoshiro256pp::substream(cfg.seed, worker);
        std::vector<int> perm(static_cast<std::size_t>(big_n));
        std::iota(perm.begin(), perm.end(), 0);
        std::vector<int> sample(static_cast<std::size_t>(cfg.n));
        std::vector<double> ys(static_cast<std::size_t>(cfg.n));
        std::vector<double> scratch;

        for (std::uint64_t r = 0; r < replicates; ++r) {
            draw_srswor(rng, perm, cfg.n, sample);
            double sum_y = 0.0;
            for (int j = 0; j < cfg.n; ++j) {
                const double y = pop.y()[static_cast<std::size_t>(
                    sample[static_cast<std::size_t>(j)])];
                ys[static_cast<std::size_t>(j)] = y;
                sum_y += y;
            }
            const double ybar_s = sum_y / static_cast<double>(cfg.n);
            const double m_s = sample_median(ys, scratch);

            ++state.replicates;
            const double inv = 1.0 / static_cast<double>(state.replicates);
            state.ybar_mean += (ybar_s - state.ybar_mean) * inv;
            state.m_mean += (m_s - state.m_mean) * inv;

            for (std::size_t s = 0; s < specs.size(); ++s) {
                try {
                    state.specs[s].add(
                        combined_estimate(specs[s], ybar_s, m_s, mbar),
                        ybar_pop);
                } catch (const evaluation_error&) {
                    ++state.specs[s].failures;
                }
            }
        }
    };

    if (workers == 1) {
        run_block(states[0], 0, cfg.replicates);
    } else {
        const std::uint64_t per = cfg.replicates / static_cast<std::uint64_t>(workers);
        const std::uint64_t extra = cfg.replicates % static_cast<std::uint64_t>(workers);
        std::vector<std::thread> threads;
        threads.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            const std::uint64_t block =
                per + (static_cast<std::uint64_t>(w) < extra ? 1 : 0);
            threads.emplace_back([&, w, block] {
                run_block(states[static_cast<std::size_t>(w)], w, block);
            });
        }
        for (auto& t : threads) t.join();
    }

    McResult out;
    std::vector<SpecAccumulator> merged(specs.size());
    double weight = 0.0;
    for (const auto& state : states) {
        if (state.replicates == 0) continue;
        const auto nb = static_cast<double>(state.replicates);
        weight += nb;
        out.replicates += state.replicates;
        out.mean_ybar += (state.ybar_mean - out.mean_ybar) * (nb / weight);
        out.mean_m += (state.m_mean - out.mean_m) * (nb / weight);
        for (std::size_t s = 0; s < specs.size(); ++s) {
            merged[s].merge(state.specs[s]);
        }
    }

    out.estimators.reserve(specs.size());
    for (std::size_t s = 0; s < specs.size(); ++s) {
        McEstimatorResult r;
        r.name = specs[s].name;
        r.replicates = merged[s].count;
        r.failures = merged[s].failures;
        if (merged[s].count > 0) {
            r.mse = merged[s].sq_mean;
            r.mean = merged[s].value_mean;
            if (merged[s].count > 1) {
                const auto n = static_cast<double>(merged[s].count);
                r.std_error = std::sqrt(merged[s].sq_m2 / (n - 1.0) / n);
            }
        }
        out.estimators.push_back(std::move(r));
    }
    return out;
}

}  // namespace medest
