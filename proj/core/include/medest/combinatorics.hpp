#pragma once

#include <cstdint>
#include <vector>

namespace medest {

/// C(n, k) as a 64-bit count. Counts are capped at 2^63-1; anything larger
/// throws capacity_error instead of wrapping.
std::uint64_t binomial(int n, int k);

/// The rank-th n-subset of {0..N-1} in lexicographic order (combinatorial
/// number system). Throws std::domain_error when rank >= C(N,n).
std::vector<int> unrank_combination(std::uint64_t rank, int N, int n);

/// Walks the n-subsets of {0..N-1} in lexicographic order. Construction at
/// an arbitrary rank enables contiguous-range partitioning of the C(N,n)
/// space across workers.
class CombinationCursor {
public:
    /// Cursor at rank 0, i.e. {0,1,...,n-1}. Requires 0 < n <= N.
    CombinationCursor(int N, int n);

    /// Cursor at an arbitrary rank.
    static CombinationCursor at_rank(int N, int n, std::uint64_t rank);

    int universe() const noexcept { return N_; }
    int size() const noexcept { return static_cast<int>(indices_.size()); }

    /// Strictly increasing indices of the current subset.
    const std::vector<int>& indices() const noexcept { return indices_; }

    /// Advance to the lexicographic successor. Returns the lowest position
    /// whose index changed, or -1 when the last subset has been consumed.
    int step() noexcept;

private:
    int N_;
    std::vector<int> indices_;
};

}  // namespace medest
