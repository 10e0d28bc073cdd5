#pragma once

#include <span>

#include "tricomi/model.hpp"

namespace tricomi {

/// Psi(x) = \int_{S^{N-1}} exp(x . w) dw for N >= 2 and e^x + e^-x for N = 1.
/// Solves Delta Psi = Psi. N is taken from x.size(); N in {1, 2, 3}.
/// N = 2 integrates over the circle angle; N = 3 uses 4 pi sinh|x| / |x|.
/// Throws ParameterError for N > 3.
double big_psi(std::span<const double> x);

/// exp(-shift) * Psi(x), evaluated without forming Psi(x) itself, so large
/// |x| paired with a comparable shift neither overflows nor underflows.
double big_psi_shifted(std::span<const double> x, double shift);

/// exp(-shift) * Psi at radius r in dimension dim (Psi is radial).
double big_psi_radial(double r, int dim, double shift = 0.0);

/// |Delta_h Psi(x) - Psi(x)| / Psi(x), Delta_h the Cartesian 3-point
/// second-difference Laplacian with step h.
double big_psi_laplacian_residual(std::span<const double> x, double h = 1e-3);

/// \int_{|x| <= R + phi(t) - phi(1)} Psi^r dx / (e^{r phi(t)} (1 + phi(t))^{(2-r)(N-1)/2}).
/// Uses m, N and R from params; t >= 1, r > 1, N in {1, 2, 3}.
double lemma1_ratio(const ModelParams& params, double t, double r);

/// Test-function family built on
///
///     rho(t) = t^{(mu+1)/2} K_v(phi_m(t)),   v = sqrt(delta) / (2(1+m)),
///
/// a positive solution of rho'' - t^{2m} rho - (mu rho / t)' + (nu^2/t^2) rho = 0,
/// together with psi = rho(t) Psi(x), psi0 = exp(phi(1) - phi(t)) Psi(x),
/// the multiplier M(t) = t^mu and Gamma(t) = mu/t - 2 rho'/rho.
///
/// Constructible for any delta; the rho-dependent members throw RegimeError
/// when delta < 0. Every member requires t >= 1 (ParameterError otherwise).
/// Immutable after construction.
class TestFunctionSet {
public:
    explicit TestFunctionSet(const ModelParams& params);

    const ModelParams& params() const noexcept { return params_; }
    bool has_rho() const noexcept { return has_rho_; }
    double order() const;

    double rho(double t) const;
    /// exp(phi_m(t)) rho(t); finite where rho itself underflows.
    double rho_scaled(double t) const;
    double log_rho(double t) const;
    double rho_log_derivative(double t) const;
    /// Residual of the rho ODE relative to t^{2m} rho, with rho'' obtained
    /// from the Bessel derivative recurrence applied twice.
    double rho_ode_residual(double t) const;
    /// rho(t) / (t^{(mu-m)/2} exp(-phi_m(t))); tends to sqrt(pi (1+m) / 2).
    double asymptotic_ratio(double t) const;

    double multiplier(double t) const;
    double gamma(double t) const;

    double big_psi(std::span<const double> x) const;
    double psi(std::span<const double> x, double t) const;
    double psi0(std::span<const double> x, double t) const;

    double phi(double t) const;

private:
    void check_time(double t) const;
    void require_rho() const;

    ModelParams params_;
    bool has_rho_ = false;
    double order_ = 0.0;
    double sqrt_delta_ = 0.0;
};

}  // namespace tricomi
