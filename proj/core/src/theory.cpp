#include "medest/theory.hpp"

#include <cmath>
#include <stdexcept>

#include "medest/errors.hpp"

namespace medest {

namespace {

void require_nonzero(double value, const char* what) {
    if (value == 0.0) {
        throw std::domain_error(std::string("relative moments: ") + what +
                                " is zero");
    }
}

}  // namespace

double RelativeMoments::cpr_mm() const {
    require_nonzero(mbar, "Mbar");
    return v_m / (mbar * mbar);
}

double RelativeMoments::cpr_ym() const {
    require_nonzero(ybar, "Ybar");
    require_nonzero(mbar, "Mbar");
    return cov_ym / (ybar * mbar);
}

double RelativeMoments::cpr_xx() const {
    require_nonzero(xbar, "Xbar");
    return v_xbar / (xbar * xbar);
}

double RelativeMoments::cpr_yx() const {
    require_nonzero(ybar, "Ybar");
    require_nonzero(xbar, "Xbar");
    return cov_yx / (ybar * xbar);
}

double composite_w(const EstimatorSpec& spec) noexcept {
    return spec.alpha * spec.g * spec.w1 + 0.5 * spec.delta * spec.w2;
}

double bias_t1(const RelativeMoments& mom, double nu_value, double alpha,
               double g) {
    const double quad = alpha * nu_value * (g + 1.0) / 2.0;
    return mom.ybar * g * alpha * nu_value *
           (quad * mom.cpr_mm() - mom.cpr_ym());
}

double bias_t2(const RelativeMoments& mom, double nu_value, double delta) {
    const double nu2 = nu_value * nu_value;
    const double quad = delta * nu2 / 4.0 + delta * delta * nu2 / 8.0;
    return mom.ybar * (quad * mom.cpr_mm() -
                       0.5 * delta * nu_value * mom.cpr_ym());
}

double bias_t(const RelativeMoments& mom, const EstimatorSpec& spec,
              double nu_value) {
    const double nu2 = nu_value * nu_value;
    const double quad =
        spec.w1 * spec.g * (spec.g + 1.0) * spec.alpha * spec.alpha / 2.0 +
        (spec.delta / 4.0 + spec.delta * spec.delta / 8.0) * spec.w2;
    return mom.ybar * (nu2 * quad * mom.cpr_mm() -
                       nu_value * composite_w(spec) * mom.cpr_ym());
}

double mse_t(const RelativeMoments& mom, double nu_value, double w) {
    require_nonzero(mom.mbar, "Mbar");
    const double ratio = mom.ybar / mom.mbar;
    const double slope = nu_value * ratio * w;
    return mom.v_ybar + slope * slope * mom.v_m - 2.0 * slope * mom.cov_ym;
}

double mse_t(const RelativeMoments& mom, const EstimatorSpec& spec) {
    return mse_t(mom, nu(spec.a, spec.b, mom.mbar), composite_w(spec));
}

double bias_classical_ratio(const RelativeMoments& mom) {
    return mom.ybar * (mom.cpr_xx() - mom.cpr_yx());
}

double mse_classical_ratio(const RelativeMoments& mom) {
    require_nonzero(mom.xbar, "Xbar");
    const double ratio = mom.ybar / mom.xbar;
    return mom.v_ybar + ratio * ratio * mom.v_xbar -
           2.0 * ratio * mom.cov_yx;
}

double k_opt(const RelativeMoments& mom, double nu_value) {
    require_nonzero(mom.mbar, "Mbar");
    require_nonzero(mom.v_m, "V(m)");
    if (nu_value == 0.0) {
        throw std::domain_error("k_opt: nu is zero");
    }
    const double ratio = mom.ybar / mom.mbar;
    return mom.cov_ym / (nu_value * ratio * mom.v_m);
}

double corr_ym(const RelativeMoments& mom) {
    const double denom = std::sqrt(mom.v_ybar * mom.v_m);
    require_nonzero(denom, "sqrt(V(ybar) V(m))");
    return mom.cov_ym / denom;
}

double min_mse(const RelativeMoments& mom) {
    const double rho = corr_ym(mom);
    return mom.v_ybar * (1.0 - rho * rho);
}

WeightSolution solve_weights(const RelativeMoments& mom, double nu_value,
                             double alpha, double g, double delta, double k) {
    const double b1 = bias_t1(mom, nu_value, alpha, g);
    const double b2 = bias_t2(mom, nu_value, delta);
    const double c1 = alpha * g;          // slope contributed per unit w1
    const double c2 = 0.5 * delta;        // slope contributed per unit w2

    // First column of the system is (1, 0, 0), so the determinant reduces
    // to the lower-right 2x2.
    const double det = c1 * b2 - c2 * b1;
    const double scale =
        std::abs(c1 * b2) + std::abs(c2 * b1) + std::abs(b1) + std::abs(b2);
    if (det == 0.0 || std::abs(det) <= 1e-13 * scale) {
        throw evaluation_error(
            "weight system is singular: the two bias/slope columns are "
            "proportional");
    }
    WeightSolution out;
    out.determinant = det;
    out.w1 = k * b2 / det;
    out.w2 = -k * b1 / det;
    out.w0 = 1.0 - out.w1 - out.w2;
    return out;
}

double pre_percent(double mse_reference, double mse_candidate) {
    if (!(mse_candidate > 0.0)) {
        throw std::domain_error("pre_percent: candidate MSE must be positive");
    }
    return 100.0 * mse_reference / mse_candidate;
}

}  // namespace medest
