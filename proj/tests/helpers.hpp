#pragma once

#include <cmath>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "medest/population.hpp"
#include "medest/rng.hpp"

namespace medest::testing {

inline std::string fixture_path(const std::string& name) {
    return std::string(MEDEST_SOURCE_DIR) + "/fixtures/" + name;
}

/// y = 1..5, x = 2y: every moment is hand-checkable. With n = 3 the exact
/// sampling distribution has Mbar = 3, V(ybar) = 1/3, V(xbar) = 4/3,
/// V(m) = 3/5, Cov(ybar, m) = 2/5, Cov(ybar, xbar) = 2/3.
inline Population make_p5() {
    return Population("p5", {1, 2, 3, 4, 5}, {2, 4, 6, 8, 10});
}

/// Small random population with distinct y values (uniform grid jittered),
/// suitable for both enumeration and the analytic median route.
inline Population random_population(Xoshiro256pp& rng, int n_units) {
    std::vector<double> y;
    std::vector<double> x;
    y.reserve(static_cast<std::size_t>(n_units));
    x.reserve(static_cast<std::size_t>(n_units));
    const auto uniform = [&rng] {
        return static_cast<double>(rng() >> 11) * 0x1.0p-53;
    };
    for (int i = 0; i < n_units; ++i) {
        // Offset per index keeps y values distinct.
        y.push_back(10.0 * i + 5.0 * uniform() + 1.0);
        x.push_back(50.0 * uniform() + 10.0 + 0.3 * y.back());
    }
    return Population("random", std::move(y), std::move(x));
}

inline double rel_err(double value, double reference) {
    if (reference == 0.0) return std::abs(value);
    return std::abs(value - reference) / std::abs(reference);
}

/// Captures std::cout (and optionally std::cerr) while alive; used to test
/// the CLI driver in-process.
class CaptureStream {
public:
    explicit CaptureStream(std::ostream& stream)
        : stream_(stream), saved_(stream.rdbuf(buffer_.rdbuf())) {}
    ~CaptureStream() { stream_.rdbuf(saved_); }
    CaptureStream(const CaptureStream&) = delete;
    CaptureStream& operator=(const CaptureStream&) = delete;

    std::string text() const { return buffer_.str(); }

private:
    std::ostream& stream_;
    std::ostringstream buffer_;
    std::streambuf* saved_;
};

}  // namespace medest::testing
