#include "medest/population.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <utility>

#include "medest/errors.hpp"

namespace medest {

namespace {

bool all_finite(std::span<const double> values) {
    for (double v : values) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

double mean(std::span<const double> values) {
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

// Trim ASCII whitespace (incl. the \r a Windows file leaves before \n).
std::string_view trimmed(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\f\v");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\f\v");
    return s.substr(first, last - first + 1);
}

bool parse_double(std::string_view text, double& out) {
    const std::string buf(text);
    char* end = nullptr;
    out = std::strtod(buf.c_str(), &end);
    return end == buf.c_str() + buf.size() && !buf.empty() &&
           std::isfinite(out);
}

}  // namespace

Population::Population(std::string name, std::vector<double> y,
                       std::vector<double> x)
    : name_(std::move(name)), y_(std::move(y)), x_(std::move(x)) {
    if (y_.size() != x_.size()) {
        throw std::invalid_argument(
            "population '" + name_ + "': y and x lengths differ (" +
            std::to_string(y_.size()) + " vs " + std::to_string(x_.size()) +
            ")");
    }
    if (y_.size() < 2) {
        throw std::invalid_argument("population '" + name_ +
                                    "': need at least 2 units");
    }
    if (!all_finite(y_) || !all_finite(x_)) {
        throw std::invalid_argument("population '" + name_ +
                                    "': values must be finite");
    }
}

Population load_population(std::istream& in, std::string name) {
    std::vector<double> ys;
    std::vector<double> xs;
    std::string line;
    std::size_t lineno = 0;
    bool header_checked = false;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string_view row = trimmed(line);
        if (row.empty() || row.front() == '#') continue;

        const auto comma = row.find(',');
        if (comma == std::string_view::npos) {
            throw parse_error("expected two comma-separated columns", lineno);
        }
        const std::string_view left = trimmed(row.substr(0, comma));
        const std::string_view right = trimmed(row.substr(comma + 1));
        if (right.find(',') != std::string_view::npos) {
            throw parse_error("expected exactly two columns", lineno);
        }

        double y = 0.0;
        double x = 0.0;
        if (!parse_double(left, y) || !parse_double(right, x)) {
            // Tolerate a single "y,x"-style header row, nothing else.
            if (!header_checked && ys.empty()) {
                header_checked = true;
                continue;
            }
            throw parse_error("non-numeric value in row", lineno);
        }
        header_checked = true;
        ys.push_back(y);
        xs.push_back(x);
    }
    if (ys.size() < 2) {
        throw parse_error("population needs at least 2 data rows, got " +
                          std::to_string(ys.size()));
    }
    return Population(std::move(name), std::move(ys), std::move(xs));
}

Population load_population_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw parse_error("cannot open population file: " + path);
    }
    // Name the population after the file stem ("data/pop1.csv" -> "pop1").
    const auto slash = path.find_last_of("/\\");
    std::string stem =
        slash == std::string::npos ? path : path.substr(slash + 1);
    const auto dot = stem.find_last_of('.');
    if (dot != std::string::npos && dot > 0) stem.resize(dot);
    try {
        return load_population(in, std::move(stem));
    } catch (const parse_error& err) {
        throw parse_error(path + ": " + err.what());
    }
}

double central_moment(std::span<const double> values, int r) {
    if (values.empty()) {
        throw std::domain_error("central_moment: empty value list");
    }
    if (r < 1) {
        throw std::domain_error("central_moment: order must be >= 1");
    }
    const double mu = mean(values);
    double sum = 0.0;
    for (double v : values) sum += std::pow(v - mu, r);
    return sum / static_cast<double>(values.size());
}

double skewness_beta1(std::span<const double> values) {
    const double mu2 = central_moment(values, 2);
    if (mu2 <= 0.0) {
        throw std::domain_error("skewness_beta1: constant data");
    }
    const double mu3 = central_moment(values, 3);
    return mu3 * mu3 / (mu2 * mu2 * mu2);
}

PopulationParams population_params(const Population& pop) {
    const auto y = pop.y();
    const auto x = pop.x();
    const auto n = static_cast<double>(pop.size());

    PopulationParams out;
    out.n_units = pop.size();
    out.ybar = mean(y);
    out.xbar = mean(x);

    double syy = 0.0;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < pop.size(); ++i) {
        const double dy = y[i] - out.ybar;
        const double dx = x[i] - out.xbar;
        syy += dy * dy;
        sxx += dx * dx;
        sxy += dy * dx;
    }
    out.s2y = syy / (n - 1.0);
    out.s2x = sxx / (n - 1.0);
    out.sxy = sxy / (n - 1.0);

    const double denom = std::sqrt(out.s2y * out.s2x);
    out.rho_xy = denom > 0.0 ? out.sxy / denom
                             : std::numeric_limits<double>::quiet_NaN();
    try {
        out.beta1_x = skewness_beta1(x);
    } catch (const std::domain_error&) {
        out.beta1_x = std::numeric_limits<double>::quiet_NaN();
    }
    return out;
}

double srswor_variance_of_mean(double s2, std::size_t n, std::size_t n_units) {
    if (n < 1 || n > n_units) {
        throw std::domain_error("srswor_variance_of_mean: need 1 <= n <= N");
    }
    const auto nd = static_cast<double>(n);
    const auto big_n = static_cast<double>(n_units);
    return (1.0 - nd / big_n) / nd * s2;
}

}  // namespace medest
