#pragma once

namespace tricomi {

/// Modified Bessel function of the second kind, K_order(z), for real order
/// >= 0 and z > 0. Evaluated from the integral representation
///
///     K_v(z) = \int_0^\infty exp(-z cosh s) cosh(v s) ds
///
/// by adaptive Gauss-Kronrod on a truncated range. The integrand is always
/// taken in scaled form exp(-z (cosh s - 1)) cosh(v s), so besselk_scaled stays
/// finite where exp(-z) underflows. Target accuracy is ~1e-13 relative.
///
/// All functions throw ParameterError for order < 0, z <= 0, or non-finite input.
double besselk(double order, double z);

/// exp(z) K_order(z).
double besselk_scaled(double order, double z);

/// dK_order/dz from the recurrence -K_{order+1}(z) + (order/z) K_order(z).
double besselk_dz(double order, double z);

/// K_{order+1}(z) / K_order(z), computed from scaled values.
double besselk_ratio(double order, double z);

struct BesselEval {
    double order = 0.0;
    double argument = 0.0;
    double value = 0.0;         // K_order(z); underflows to 0 for z beyond ~745
    double scaled_value = 0.0;  // exp(z) K_order(z)
};

BesselEval evaluate_besselk(double order, double z);

}  // namespace tricomi
