#pragma once

#include "medest/estimators.hpp"

namespace medest {

/// Ingredients of the first-order bias and MSE expressions. Vybar, Vxbar and
/// Vm are the variances of the sample mean of y, of x, and of the sample
/// median; Cov_* the corresponding covariances. These are exact sampling
/// moments (from enumeration, the analytic median route, or a published
/// table) -- the "theory" here is in the Taylor expansion of the estimator,
/// not in the moments.
struct RelativeMoments {
    double ybar = 0.0;      // population mean of y
    double mbar = 0.0;      // mean of the sample-median distribution
    double xbar = 0.0;      // population mean of x (classical ratio only)
    double v_ybar = 0.0;
    double v_xbar = 0.0;
    double v_m = 0.0;
    double cov_ym = 0.0;
    double cov_yx = 0.0;

    // Relative second moments: C'_mm = V(m)/Mbar^2, C'_ym = Cov/(Ybar*Mbar),
    // and the x analogues used by the classical ratio estimator.
    double cpr_mm() const;
    double cpr_ym() const;
    double cpr_xx() const;
    double cpr_yx() const;
};

/// Composite slope w = alpha*g*w1 + (delta/2)*w2. To first order the family
/// member behaves like ybar - nu*R*w*(m - Mbar), so its MSE depends on the
/// weights only through this scalar (and nu).
double composite_w(const EstimatorSpec& spec) noexcept;

/// First-order biases. R = Ybar/Mbar throughout.
double bias_t1(const RelativeMoments& mom, double nu_value, double alpha,
               double g);
double bias_t2(const RelativeMoments& mom, double nu_value, double delta);
double bias_t(const RelativeMoments& mom, const EstimatorSpec& spec,
              double nu_value);

/// First-order MSE of the family member: V(ybar) + nu^2 R^2 w^2 V(m)
/// - 2 nu R w Cov(ybar, m). `w` is the composite slope above, so the same
/// routine serves both catalog members and the k-grid in the optimum search.
double mse_t(const RelativeMoments& mom, double nu_value, double w);
double mse_t(const RelativeMoments& mom, const EstimatorSpec& spec);

/// Classical ratio estimator ybar * Xbar/xbar, for reference columns.
double bias_classical_ratio(const RelativeMoments& mom);
double mse_classical_ratio(const RelativeMoments& mom);

/// Value of nu*w minimizing mse_t, split as k = Cov(ybar,m) / (nu R V(m)),
/// and the minimum itself, V(ybar) * (1 - corr(ybar, m)^2).
double k_opt(const RelativeMoments& mom, double nu_value);
double min_mse(const RelativeMoments& mom);
double corr_ym(const RelativeMoments& mom);

/// Weights placing the family member at the optimum: solves
///   w0 +       w1 +           w2 = 1
///        alpha*g*w1 + (delta/2)*w2 = k
///         B(t1)*w1 +     B(t2)*w2 = 0
/// so the combined estimator has slope k and its first-order bias collapses
/// to the -nu*k*C'_ym term alone.
struct WeightSolution {
    double w0 = 0.0;
    double w1 = 0.0;
    double w2 = 0.0;
    double determinant = 0.0;   // of the 3x3 system, for singularity checks
};

/// Throws evaluation_error when the system is singular (determinant ~ 0),
/// e.g. when B(t1)/alpha*g and B(t2)/(delta/2) are proportional.
WeightSolution solve_weights(const RelativeMoments& mom, double nu_value,
                             double alpha, double g, double delta, double k);

/// Percent relative efficiency: 100 * MSE(reference) / MSE(candidate).
double pre_percent(double mse_reference, double mse_candidate);

}  // namespace medest
