#include "medest/combinatorics.hpp"

#include <cstdint>
#include <set>
#include <vector>

#include "doctest.h"

#include "medest/errors.hpp"

using namespace medest;

TEST_CASE("binomial matches known values") {
    CHECK(binomial(0, 0) == 1);
    CHECK(binomial(5, 0) == 1);
    CHECK(binomial(5, 5) == 1);
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(5, 3) == 10);
    CHECK(binomial(34, 3) == 5984);
    CHECK(binomial(34, 5) == 278256);
    CHECK(binomial(40, 10) == 847660528);
    CHECK(binomial(20, 3) == 1140);
    CHECK(binomial(3, 5) == 0);
    // Largest full row that fits in 63 bits.
    CHECK(binomial(66, 33) == 7219428434016265740ULL);
}

TEST_CASE("binomial rejects out-of-range input") {
    CHECK_THROWS_AS(binomial(-1, 0), std::domain_error);
    CHECK_THROWS_AS(binomial(5, -2), std::domain_error);
    CHECK_THROWS_AS(binomial(68, 34), capacity_error);
    CHECK_THROWS_AS(binomial(120, 60), capacity_error);
}

TEST_CASE("binomial satisfies the Pascal identity") {
    for (int n = 2; n <= 40; ++n) {
        for (int k = 1; k < n; ++k) {
            CHECK(binomial(n, k) ==
                  binomial(n - 1, k - 1) + binomial(n - 1, k));
        }
    }
}

TEST_CASE("unrank_combination walks C(5,3) in lexicographic order") {
    const std::vector<std::vector<int>> expected = {
        {0, 1, 2}, {0, 1, 3}, {0, 1, 4}, {0, 2, 3}, {0, 2, 4},
        {0, 3, 4}, {1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4},
    };
    for (std::uint64_t rank = 0; rank < expected.size(); ++rank) {
        CHECK(unrank_combination(rank, 5, 3) == expected[rank]);
    }
    CHECK_THROWS_AS(unrank_combination(10, 5, 3), std::domain_error);
}

TEST_CASE("unrank_combination endpoints") {
    CHECK(unrank_combination(0, 10, 4) == std::vector<int>{0, 1, 2, 3});
    CHECK(unrank_combination(binomial(10, 4) - 1, 10, 4) ==
          std::vector<int>{6, 7, 8, 9});
}

TEST_CASE("cursor visits every subset once and matches unrank") {
    const int N = 7;
    const int n = 3;
    CombinationCursor cursor(N, n);
    std::set<std::vector<int>> seen;
    std::uint64_t rank = 0;
    for (;;) {
        CHECK(cursor.indices() == unrank_combination(rank, N, n));
        CHECK(seen.insert(cursor.indices()).second);
        const int changed = cursor.step();
        if (changed < 0) break;
        // All positions at or above the reported one were rewritten,
        // everything below is untouched and still strictly increasing.
        for (int i = 1; i < n; ++i) {
            CHECK(cursor.indices()[static_cast<std::size_t>(i - 1)] <
                  cursor.indices()[static_cast<std::size_t>(i)]);
        }
        ++rank;
    }
    CHECK(seen.size() == binomial(N, n));
    // Exhausted cursor stays exhausted.
    CHECK(cursor.step() == -1);
    CHECK(cursor.indices() == std::vector<int>{4, 5, 6});
}

TEST_CASE("cursor reports the lowest changed position") {
    CombinationCursor cursor(5, 3);           // {0,1,2}
    CHECK(cursor.step() == 2);                // {0,1,3}
    CHECK(cursor.step() == 2);                // {0,1,4}
    CHECK(cursor.step() == 1);                // {0,2,3}
    CHECK(cursor.indices() == std::vector<int>{0, 2, 3});
}

TEST_CASE("at_rank resumes mid-stream") {
    const int N = 9;
    const int n = 4;
    const std::uint64_t total = binomial(N, n);
    for (std::uint64_t start : {std::uint64_t{0}, total / 3, total - 1}) {
        CombinationCursor cursor = CombinationCursor::at_rank(N, n, start);
        for (std::uint64_t rank = start; rank < total; ++rank) {
            CHECK(cursor.indices() == unrank_combination(rank, N, n));
            cursor.step();
        }
    }
}

TEST_CASE("cursor validates the subset size") {
    CHECK_THROWS_AS(CombinationCursor(5, 0), std::domain_error);
    CHECK_THROWS_AS(CombinationCursor(5, 6), std::domain_error);
    CHECK(CombinationCursor(5, 5).step() == -1);
}
