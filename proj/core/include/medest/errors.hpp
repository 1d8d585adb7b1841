#pragma once

#include <stdexcept>
#include <string>

namespace medest {

/// Malformed input data (CSV populations, parameter files, spec records).
/// The message carries the 1-based line number where applicable.
class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
    parse_error(const std::string& what, std::size_t line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}

    /// 1-based line number, 0 if not tied to a specific line.
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_ = 0;
};

/// A problem size that does not fit the 64-bit counting machinery,
/// e.g. C(N,n) beyond 2^63-1. The message points at the Monte Carlo path.
class capacity_error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An estimator is undefined on a concrete sample (zero denominator,
/// non-positive base under a fractional exponent, ...).
class evaluation_error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The analytic median path requires distinct y-values; enumeration does not.
class ties_error : public std::domain_error {
    using std::domain_error::domain_error;
};

}  // namespace medest
