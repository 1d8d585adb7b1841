#include "medest/combinatorics.hpp"

#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "medest/errors.hpp"

namespace medest {

namespace {

constexpr std::uint64_t kCountCap =
    static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max());

}  // namespace

std::uint64_t binomial(int n, int k) {
    if (n < 0 || k < 0) {
        throw std::domain_error("binomial: negative argument");
    }
    if (k > n) return 0;
    if (k > n - k) k = n - k;

    // Multiply/divide in factor order; each intermediate is itself a
    // binomial coefficient C(n-k+i, i), so checking every step against the
    // cap is exact. Reducing the step's factor/divisor pair by their gcd
    // leaves a divisor that is coprime to the factor and therefore divides
    // the running result evenly.
    std::uint64_t result = 1;
    for (int i = 1; i <= k; ++i) {
        std::uint64_t factor = static_cast<std::uint64_t>(n - k + i);
        std::uint64_t divisor = static_cast<std::uint64_t>(i);
        const std::uint64_t g = std::gcd(factor, divisor);
        factor /= g;
        divisor /= g;
        result /= divisor;
        if (result > kCountCap / factor) {
            throw capacity_error(
                "binomial(" + std::to_string(n) + ", " + std::to_string(k) +
                ") exceeds 2^63-1; exact enumeration is out of reach -- use "
                "the Monte Carlo mode instead");
        }
        result *= factor;
    }
    return result;
}

std::vector<int> unrank_combination(std::uint64_t rank, int N, int n) {
    const std::uint64_t total = binomial(N, n);
    if (rank >= total) {
        throw std::domain_error("unrank_combination: rank " +
                                std::to_string(rank) + " out of range for C(" +
                                std::to_string(N) + ", " + std::to_string(n) +
                                ")");
    }
    // Combinatorial number system: at each position greedily take the
    // smallest candidate c such that the subsets starting below c are
    // exhausted by `rank`.
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(n));
    int next = 0;
    for (int pos = 0; pos < n; ++pos) {
        int c = next;
        for (;;) {
            const std::uint64_t block = binomial(N - c - 1, n - pos - 1);
            if (rank < block) break;
            rank -= block;
            ++c;
        }
        out.push_back(c);
        next = c + 1;
    }
    return out;
}

CombinationCursor::CombinationCursor(int N, int n) : N_(N) {
    if (n < 1 || n > N) {
        throw std::domain_error("CombinationCursor: need 1 <= n <= N");
    }
    indices_.resize(static_cast<std::size_t>(n));
    std::iota(indices_.begin(), indices_.end(), 0);
}

CombinationCursor CombinationCursor::at_rank(int N, int n,
                                             std::uint64_t rank) {
    CombinationCursor cursor(N, n);
    cursor.indices_ = unrank_combination(rank, N, n);
    return cursor;
}

int CombinationCursor::step() noexcept {
    const int n = size();
    // Rightmost index that can still move right.
    int pos = n - 1;
    while (pos >= 0 && indices_[static_cast<std::size_t>(pos)] == N_ - n + pos) {
        --pos;
    }
    if (pos < 0) return -1;
    int value = ++indices_[static_cast<std::size_t>(pos)];
    for (int tail = pos + 1; tail < n; ++tail) {
        indices_[static_cast<std::size_t>(tail)] = ++value;
    }
    return pos;
}

}  // namespace medest
