#include "tricomi/besselk.hpp"

#include <cmath>
#include <string>

#include "tricomi/errors.hpp"
#include "tricomi/quadrature.hpp"

namespace tricomi {

namespace {

constexpr double kRelTol = 1e-14;

// Drop the integrand once it is this many e-folds below its peak.
constexpr double kTailLogDrop = 52.0;

void check_args(double order, double z, const char* who) {
    if (!std::isfinite(order) || order < 0.0) {
        throw ParameterError(std::string(who) + ": order must be finite and >= 0");
    }
    if (!std::isfinite(z) || z <= 0.0) {
        throw ParameterError(std::string(who) + ": argument must be finite and > 0");
    }
}

double log_cosh(double a) {
    a = std::abs(a);
    return a + std::log1p(std::exp(-2.0 * a)) - std::log(2.0);
}

// log of the scaled integrand exp(-z (cosh s - 1)) cosh(v s).
// cosh s - 1 is written as 2 sinh^2(s/2) to avoid cancellation near s = 0.
struct LogIntegrand {
    double order;
    double z;
    double operator()(double s) const {
        const double sh = std::sinh(0.5 * s);
        return -2.0 * z * sh * sh + log_cosh(order * s);
    }
    double slope(double s) const { return -z * std::sinh(s) + order * std::tanh(order * s); }
};

// Location of the integrand's maximum on [0, inf). The slope is 0 at s = 0 and
// negative once z sinh s > order, so the peak is bracketed by asinh(order/z).
double peak_location(const LogIntegrand& h) {
    if (h.order * h.order <= h.z) return 0.0;
    double lo = 0.0;
    double hi = std::asinh(h.order / h.z) + 1.0;
    // Skip the trivial root at 0: start just right of it where the slope is positive.
    lo = std::min(1e-8, 0.5 * hi);
    for (int i = 0; i < 200 && hi - lo > 1e-14 * (1.0 + hi); ++i) {
        const double mid = 0.5 * (lo + hi);
        if (h.slope(mid) > 0.0) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Truncation point: beyond it the log-integrand has dropped kTailLogDrop below
// the peak and the slope is steep enough that the remaining tail, bounded by
// exp(h(S)) / (z sinh S - order), is negligible.
double cutoff(const LogIntegrand& h, double peak) {
    const double target = h(peak) - kTailLogDrop;
    double step = std::max(0.25, 2.0 / std::sqrt(h.z));
    double hi = peak + step;
    while (h(hi) > target || h.z * std::sinh(hi) < 2.0 * h.order + 1.0) {
        hi += step;
        step *= 1.5;
    }
    double lo = peak;
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (h(mid) > target) lo = mid; else hi = mid;
    }
    return hi;
}

double scaled_integral(double order, double z) {
    const LogIntegrand h{order, z};
    const double peak = peak_location(h);
    const double end = cutoff(h, peak);
    const double hpeak = h(peak);
    // Integrate exp(h - hpeak) so the quadrature works on O(1) values, then
    // restore the factor.
    auto f = [&](double s) { return std::exp(h(s) - hpeak); };
    double total = 0.0;
    if (peak > 0.0) total += quad::adaptive_checked(f, 0.0, peak, kRelTol, 0.0, "besselk");
    total += quad::adaptive_checked(f, peak, end, kRelTol, 0.0, "besselk");
    return total * std::exp(hpeak);
}

}  // namespace

double besselk_scaled(double order, double z) {
    check_args(order, z, "besselk_scaled");
    return scaled_integral(order, z);
}

double besselk(double order, double z) {
    check_args(order, z, "besselk");
    return scaled_integral(order, z) * std::exp(-z);
}

double besselk_ratio(double order, double z) {
    check_args(order, z, "besselk_ratio");
    return scaled_integral(order + 1.0, z) / scaled_integral(order, z);
}

double besselk_dz(double order, double z) {
    check_args(order, z, "besselk_dz");
    const double k = scaled_integral(order, z);
    const double k1 = scaled_integral(order + 1.0, z);
    return (-k1 + (order / z) * k) * std::exp(-z);
}

BesselEval evaluate_besselk(double order, double z) {
    check_args(order, z, "evaluate_besselk");
    BesselEval e;
    e.order = order;
    e.argument = z;
    e.scaled_value = scaled_integral(order, z);
    e.value = e.scaled_value * std::exp(-z);
    return e;
}

}  // namespace tricomi
