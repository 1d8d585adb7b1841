#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace medest {

/// One member of the median-based family
///
///   t = w0*ybar + w1*t1 + w2*t2
///   t1 = ybar * [Mstar / (alpha*mstar + (1-alpha)*Mstar)]^g
///   t2 = ybar * exp[delta*(Mstar - mstar) / (Mstar + mstar)]
///
/// where Mstar = a*Mbar + b and mstar = a*m + b transform the known mean of
/// sample medians Mbar and the observed sample median m. The weight sum is
/// deliberately not constrained to 1: the q8-q10 catalog members use
/// w1 = w2 = 1 and reports flag that instead of rejecting it.
struct EstimatorSpec {
    std::string name;
    double w0 = 0.0;
    double w1 = 0.0;
    double w2 = 0.0;
    double a = 1.0;
    double b = 0.0;
    double alpha = 1.0;
    double g = 1.0;
    double delta = 1.0;
};

/// Catalog members q1..q10. a/b cells marked "-" in the catalog are filled
/// with the neutral transform (a=1, b=0); unused alpha/g/delta with 1.
enum class PresetId { q1, q2, q3, q4, q5, q6, q7, q8, q9, q10 };

inline constexpr PresetId kAllPresets[] = {
    PresetId::q1, PresetId::q2, PresetId::q3, PresetId::q4, PresetId::q5,
    PresetId::q6, PresetId::q7, PresetId::q8, PresetId::q9, PresetId::q10,
};

std::string_view preset_name(PresetId id) noexcept;
std::optional<PresetId> preset_from_name(std::string_view name) noexcept;

/// Instantiate a catalog row. beta1/rho are the auxiliary-variable skewness
/// and the (x,y) correlation of the target population; they fill the a/b
/// slots of q3/q4 and q6-q9.
EstimatorSpec preset(PresetId id, double beta1, double rho);

/// nu = a*Mbar / (a*Mbar + b), the scale factor the transform (a,b) induces
/// on the relative error of m. Throws std::domain_error when a*Mbar+b == 0.
double nu(double a, double b, double mbar);

/// Ratio-type component t1. Throws evaluation_error when the bracket is
/// singular (zero denominator, or non-positive base under fractional g).
double t1_estimate(double ybar_s, double m_s, double mbar,
                   double a, double b, double alpha, double g);

/// Exponential component t2. Throws evaluation_error when Mstar + mstar == 0.
double t2_estimate(double ybar_s, double m_s, double mbar,
                   double a, double b, double delta);

/// w0*ybar + w1*t1 + w2*t2. Components with zero weight are not evaluated,
/// so their (neutral or not) parameters can never raise an error.
double combined_estimate(const EstimatorSpec& spec, double ybar_s, double m_s,
                         double mbar);

/// True when w0+w1+w2 is 1 within 1e-9.
bool unit_weight_sum(const EstimatorSpec& spec) noexcept;

/// Flat key=value serialization (name, w0, w1, w2, a, b, alpha, g, delta),
/// one pair per line, as accepted by the CLI.
void write_estimator_spec(const EstimatorSpec& spec, std::ostream& out);
EstimatorSpec parse_estimator_spec(std::istream& in);

}  // namespace medest
