#include "tricomi/testfn.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "tricomi/besselk.hpp"
#include "tricomi/errors.hpp"
#include "tricomi/quadrature.hpp"

namespace tricomi {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPsiRelTol = 1e-14;

double norm(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

void check_dim(int dim) {
    if (dim < 1 || dim > 3) {
        throw ParameterError("Psi: dimension " + std::to_string(dim) + " is unsupported (N in {1, 2, 3})");
    }
}

// exp(-shift) \int_0^{2 pi} exp(r cos a) da. The integrand is even in a.
double circle_integral(double r, double shift) {
    auto f = [r, shift](double a) { return std::exp(r * std::cos(a) - shift); };
    return 2.0 * quad::adaptive_checked(f, 0.0, kPi, kPsiRelTol, 0.0, "Psi (N=2)");
}

// exp(-shift) * 4 pi sinh(r) / r, written to stay finite for large r and shift.
double sphere_closed(double r, double shift) {
    if (r < 1e-4) {
        const double r2 = r * r;
        return 4.0 * kPi * std::exp(-shift) * (1.0 + r2 / 6.0 + r2 * r2 / 120.0);
    }
    return 2.0 * kPi * (std::exp(r - shift) - std::exp(-r - shift)) / r;
}

}  // namespace

double big_psi_radial(double r, int dim, double shift) {
    check_dim(dim);
    switch (dim) {
        case 1:
            return std::exp(r - shift) + std::exp(-r - shift);
        case 2:
            return circle_integral(r, shift);
        default:
            return sphere_closed(r, shift);
    }
}

double big_psi_shifted(std::span<const double> x, double shift) {
    const int dim = static_cast<int>(x.size());
    check_dim(dim);
    if (dim == 1) return std::exp(x[0] - shift) + std::exp(-x[0] - shift);
    return big_psi_radial(norm(x), dim, shift);
}

double big_psi(std::span<const double> x) { return big_psi_shifted(x, 0.0); }

double big_psi_laplacian_residual(std::span<const double> x, double h) {
    const double centre = big_psi(x);
    std::vector<double> y(x.begin(), x.end());
    double lap = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double xi = y[i];
        y[i] = xi + h;
        const double up = big_psi(y);
        y[i] = xi - h;
        const double down = big_psi(y);
        y[i] = xi;
        lap += (up - 2.0 * centre + down) / (h * h);
    }
    return std::abs(lap - centre) / centre;
}

double lemma1_ratio(const ModelParams& params, double t, double r) {
    if (!(t >= 1.0)) throw ParameterError("lemma1_ratio: requires t >= 1");
    if (!(r > 1.0)) throw ParameterError("lemma1_ratio: requires r > 1");
    const int dim = params.dim();
    check_dim(dim);
    const double m = params.m();
    const double ph = phi_m(t, m);
    const double reach = params.radius() + ph - phi_m(1.0, m);

    // Integrate (exp(-phi) Psi)^r so the growth e^{r phi} is divided out early.
    auto shell = [&](double rad) {
        const double v = std::pow(big_psi_radial(rad, dim, ph), r);
        switch (dim) {
            case 1: return 2.0 * v;  // both half-lines
            case 2: return 2.0 * kPi * rad * v;
            default: return 4.0 * kPi * rad * rad * v;
        }
    };
    const double integral = quad::adaptive_checked(shell, 0.0, reach, 1e-10, 0.0, "lemma1_ratio");
    const double algebraic = std::pow(1.0 + ph, (2.0 - r) * (dim - 1) / 2.0);
    return integral / algebraic;
}

TestFunctionSet::TestFunctionSet(const ModelParams& params) : params_(params) {
    const double d = params_.delta();
    has_rho_ = d >= 0.0;
    if (has_rho_) {
        sqrt_delta_ = std::sqrt(d);
        order_ = bessel_order(params_);
    }
}

void TestFunctionSet::check_time(double t) const {
    if (!(t >= 1.0)) throw ParameterError("test functions are defined for t >= 1");
}

void TestFunctionSet::require_rho() const {
    if (!has_rho_) {
        throw RegimeError("rho requires delta >= 0; for delta < 0 use the F1 ODE path (ode-run)");
    }
}

double TestFunctionSet::order() const {
    require_rho();
    return order_;
}

double TestFunctionSet::phi(double t) const { return phi_m(t, params_.m()); }

double TestFunctionSet::rho_scaled(double t) const {
    check_time(t);
    require_rho();
    return std::pow(t, 0.5 * (params_.mu() + 1.0)) * besselk_scaled(order_, phi(t));
}

double TestFunctionSet::rho(double t) const { return rho_scaled(t) * std::exp(-phi(t)); }

double TestFunctionSet::log_rho(double t) const { return std::log(rho_scaled(t)) - phi(t); }

double TestFunctionSet::rho_log_derivative(double t) const {
    check_time(t);
    require_rho();
    const double mu = params_.mu();
    const double m = params_.m();
    return (mu + 1.0 + sqrt_delta_) / (2.0 * t) - std::pow(t, m) * besselk_ratio(order_, phi(t));
}

double TestFunctionSet::rho_ode_residual(double t) const {
    check_time(t);
    require_rho();
    const double mu = params_.mu();
    const double nu = params_.nu();
    const double m = params_.m();
    const double z = phi(t);
    const double tm = std::pow(t, m);

    // Scaled values share the factor e^z, which cancels in every ratio below.
    const double k0 = besselk_scaled(order_, z);
    const double k1 = besselk_scaled(order_ + 1.0, z);
    const double k2 = besselk_scaled(order_ + 2.0, z);
    const double q = k1 / k0;
    // dq/dz from K'_a = -K_{a+1} + (a/z) K_a applied to both orders.
    const double dq_dz = -k2 / k0 + q / z + q * q;

    const double a = (mu + 1.0 + sqrt_delta_) / 2.0;
    const double ell = a / t - tm * q;  // rho'/rho
    const double dell = -a / (t * t) - m * std::pow(t, m - 1.0) * q - tm * tm * dq_dz;

    // rho''/rho - t^{2m} - (mu rho/t)'/rho + nu^2/t^2, normalised by t^{2m}.
    const double lhs = dell + ell * ell - mu * ell / t + (mu + nu * nu) / (t * t);
    return lhs / (tm * tm) - 1.0;
}

double TestFunctionSet::asymptotic_ratio(double t) const {
    return rho_scaled(t) / std::pow(t, 0.5 * (params_.mu() - params_.m()));
}

double TestFunctionSet::multiplier(double t) const {
    check_time(t);
    return std::pow(t, params_.mu());
}

double TestFunctionSet::gamma(double t) const {
    return params_.mu() / t - 2.0 * rho_log_derivative(t);
}

double TestFunctionSet::big_psi(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != params_.dim()) {
        throw ParameterError("Psi: point dimension does not match the model dimension");
    }
    return tricomi::big_psi(x);
}

double TestFunctionSet::psi(std::span<const double> x, double t) const {
    if (static_cast<int>(x.size()) != params_.dim()) {
        throw ParameterError("psi: point dimension does not match the model dimension");
    }
    return rho_scaled(t) * big_psi_shifted(x, phi(t));
}

double TestFunctionSet::psi0(std::span<const double> x, double t) const {
    check_time(t);
    if (static_cast<int>(x.size()) != params_.dim()) {
        throw ParameterError("psi0: point dimension does not match the model dimension");
    }
    return big_psi_shifted(x, phi(t) - phi(1.0));
}

}  // namespace tricomi
