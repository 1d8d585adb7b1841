#pragma once

#include <cstdint>

namespace medest {

/// splitmix64 step; used to spin seeds into full xoshiro state and to derive
/// independent per-worker substreams from one user seed.
inline std::uint64_t splitmix64_next(std::uint64_t& state) noexcept {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// xoshiro256++ -- small, fast, and fully specified here so simulation
/// output is bit-identical across platforms and standard libraries (the
/// <random> engines' distributions are not portable).
class Xoshiro256pp {
public:
    explicit Xoshiro256pp(std::uint64_t seed) noexcept {
        std::uint64_t sm = seed;
        for (auto& word : s_) word = splitmix64_next(sm);
    }

    /// Substream `stream` of the given seed: the splitmix sequence is one
    /// long ribbon of state words and each stream takes the next four, so
    /// workers get disjoint, reproducible generators.
    static Xoshiro256pp substream(std::uint64_t seed, int stream) noexcept {
        std::uint64_t sm = seed;
        Xoshiro256pp rng(0);
        for (int skip = 0; skip < 4 * stream; ++skip) splitmix64_next(sm);
        for (auto& word : rng.s_) word = splitmix64_next(sm);
        return rng;
    }

    using result_type = std::uint64_t;
    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type{0}; }

    result_type operator()() noexcept {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform draw from [0, bound) by rejection -- no modulo bias, and
    /// again independent of any library implementation.
    std::uint64_t below(std::uint64_t bound) noexcept {
        const std::uint64_t limit = max() - max() % bound;
        std::uint64_t draw;
        do {
            draw = (*this)();
        } while (draw >= limit);
        return draw % bound;
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t v, int k) noexcept {
        return (v << k) | (v >> (64 - k));
    }

    std::uint64_t s_[4];
};

}  // namespace medest
