#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace medest {

/// A finite population of paired (y, x) values: y is the study variable
/// whose mean is being estimated, x the known auxiliary variable.
/// Immutable after construction; invariants are checked once.
class Population {
public:
    /// Requires size(y) == size(x) >= 2 and all values finite.
    Population(std::string name, std::vector<double> y, std::vector<double> x);

    const std::string& name() const noexcept { return name_; }
    std::size_t size() const noexcept { return y_.size(); }
    std::span<const double> y() const noexcept { return y_; }
    std::span<const double> x() const noexcept { return x_; }

private:
    std::string name_;
    std::vector<double> y_;
    std::vector<double> x_;
};

/// Descriptive parameters of a population. Variances/covariance use the
/// N-1 divisor; the skewness coefficient uses N-divisor central moments.
/// rho_xy and beta1_x are NaN when undefined (constant y or x).
struct PopulationParams {
    std::size_t n_units = 0;  // N
    double ybar = 0.0;        // population mean of y
    double xbar = 0.0;        // population mean of x
    double s2y = 0.0;         // variance of y
    double s2x = 0.0;         // variance of x
    double sxy = 0.0;         // covariance of (y, x)
    double rho_xy = 0.0;      // correlation of (x, y)
    double beta1_x = 0.0;     // skewness coefficient mu3^2 / mu2^3 of x
};

/// Parse a `y,x` CSV stream into a Population. Accepts \n or \r\n line
/// endings; blank lines are ignored. Throws parse_error with the offending
/// line number for malformed rows, non-numeric cells, wrong column counts,
/// or fewer than 2 data rows.
Population load_population(std::istream& in, std::string name = "population");

/// Convenience file-path overload; the population name is the file stem.
Population load_population_file(const std::string& path);

/// r-th central moment with the N divisor: (1/N) sum (v_i - mean)^r.
/// Throws std::domain_error on an empty list or r < 1.
double central_moment(std::span<const double> values, int r);

/// Pearson's squared skewness mu3^2 / mu2^3.
/// Throws std::domain_error when the data are constant (mu2 == 0).
double skewness_beta1(std::span<const double> values);

PopulationParams population_params(const Population& pop);

/// Variance of the sample mean under without-replacement sampling:
/// ((1 - n/N)/n) * S2. Throws std::domain_error unless 1 <= n <= N.
double srswor_variance_of_mean(double s2, std::size_t n, std::size_t n_units);

}  // namespace medest
