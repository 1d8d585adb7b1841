#include "medest/estimators.hpp"

#include <cmath>
#include <cstdlib>
#include <istream>
#include <limits>
#include <ostream>

#include "medest/errors.hpp"

namespace medest {

namespace {

constexpr std::string_view kPresetNames[] = {
    "q1", "q2", "q3", "q4", "q5", "q6", "q7", "q8", "q9", "q10",
};

bool is_integral(double v) noexcept { return v == std::nearbyint(v); }

}  // namespace

std::string_view preset_name(PresetId id) noexcept {
    return kPresetNames[static_cast<int>(id)];
}

std::optional<PresetId> preset_from_name(std::string_view name) noexcept {
    for (int i = 0; i < 10; ++i) {
        if (name == kPresetNames[i]) return static_cast<PresetId>(i);
    }
    return std::nullopt;
}

EstimatorSpec preset(PresetId id, double beta1, double rho) {
    EstimatorSpec s;
    s.name = preset_name(id);
    switch (id) {
        case PresetId::q1:
            s.w0 = 1.0;
            break;
        case PresetId::q2:
            s.w1 = 1.0;
            break;
        case PresetId::q3:
            s.w1 = 1.0;
            s.a = beta1;
            s.b = rho;
            break;
        case PresetId::q4:
            s.w1 = 1.0;
            s.a = rho;
            s.b = beta1;
            break;
        case PresetId::q5:
            s.w2 = 1.0;
            break;
        case PresetId::q6:
            s.w2 = 1.0;
            s.a = beta1;
            s.b = rho;
            break;
        case PresetId::q7:
            s.w2 = 1.0;
            s.a = rho;
            s.b = beta1;
            break;
        case PresetId::q8:
            s.w1 = 1.0;
            s.w2 = 1.0;
            s.a = beta1;
            s.b = rho;
            break;
        case PresetId::q9:
            s.w1 = 1.0;
            s.w2 = 1.0;
            s.a = rho;
            s.b = beta1;
            break;
        case PresetId::q10:
            s.w1 = 1.0;
            s.w2 = 1.0;
            break;
    }
    return s;
}

double nu(double a, double b, double mbar) {
    const double denom = a * mbar + b;
    if (denom == 0.0) {
        throw std::domain_error("nu: a*Mbar + b is zero");
    }
    return a * mbar / denom;
}

double t1_estimate(double ybar_s, double m_s, double mbar, double a, double b,
                   double alpha, double g) {
    const double mstar_bar = a * mbar + b;
    const double mstar = a * m_s + b;
    const double denom = alpha * mstar + (1.0 - alpha) * mstar_bar;
    if (denom == 0.0) {
        throw evaluation_error("t1: transformed denominator is zero");
    }
    const double base = mstar_bar / denom;
    if (base < 0.0 && !is_integral(g)) {
        throw evaluation_error("t1: negative base under fractional exponent");
    }
    if (base == 0.0 && g < 0.0) {
        throw evaluation_error("t1: zero base under negative exponent");
    }
    return ybar_s * std::pow(base, g);
}

double t2_estimate(double ybar_s, double m_s, double mbar, double a,
                   double b, double delta) {
    const double mstar_bar = a * mbar + b;
    const double mstar = a * m_s + b;
    const double denom = mstar_bar + mstar;
    if (denom == 0.0) {
        throw evaluation_error("t2: transformed sum is zero");
    }
    return ybar_s * std::exp(delta * (mstar_bar - mstar) / denom);
}

double combined_estimate(const EstimatorSpec& spec, double ybar_s, double m_s,
                         double mbar) {
    double value = spec.w0 * ybar_s;
    if (spec.w1 != 0.0) {
        value += spec.w1 * t1_estimate(ybar_s, m_s, mbar, spec.a, spec.b,
                                       spec.alpha, spec.g);
    }
    if (spec.w2 != 0.0) {
        value += spec.w2 *
                 t2_estimate(ybar_s, m_s, mbar, spec.a, spec.b, spec.delta);
    }
    return value;
}

bool unit_weight_sum(const EstimatorSpec& spec) noexcept {
    return std::abs(spec.w0 + spec.w1 + spec.w2 - 1.0) <= 1e-9;
}

void write_estimator_spec(const EstimatorSpec& spec, std::ostream& out) {
    const auto old_precision =
        out.precision(std::numeric_limits<double>::max_digits10);
    out << "name=" << spec.name << '\n'
        << "w0=" << spec.w0 << '\n'
        << "w1=" << spec.w1 << '\n'
        << "w2=" << spec.w2 << '\n'
        << "a=" << spec.a << '\n'
        << "b=" << spec.b << '\n'
        << "alpha=" << spec.alpha << '\n'
        << "g=" << spec.g << '\n'
        << "delta=" << spec.delta << '\n';
    out.precision(old_precision);
}

EstimatorSpec parse_estimator_spec(std::istream& in) {
    EstimatorSpec spec;
    spec.name = "custom";
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto start = line.find_first_not_of(" \t");
        if (start == std::string::npos || line[start] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw parse_error("expected key=value", lineno);
        }
        const std::string key = line.substr(start, eq - start);
        const std::string value = line.substr(eq + 1);
        if (key == "name") {
            spec.name = value;
            continue;
        }
        char* end = nullptr;
        const double number = std::strtod(value.c_str(), &end);
        if (end != value.c_str() + value.size() || value.empty() ||
            !std::isfinite(number)) {
            throw parse_error("non-numeric value for '" + key + "'", lineno);
        }
        if (key == "w0") spec.w0 = number;
        else if (key == "w1") spec.w1 = number;
        else if (key == "w2") spec.w2 = number;
        else if (key == "a") spec.a = number;
        else if (key == "b") spec.b = number;
        else if (key == "alpha") spec.alpha = number;
        else if (key == "g") spec.g = number;
        else if (key == "delta") spec.delta = number;
        else throw parse_error("unknown key '" + key + "'", lineno);
    }
    return spec;
}

}  // namespace medest
