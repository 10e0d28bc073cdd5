#include <boost/math/special_functions/bessel.hpp>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "oracle/sphere_oracle.hpp"
#include "tricomi/besselk.hpp"
#include "tricomi/errors.hpp"
#include "tricomi/testfn.hpp"

using namespace tricomi;

namespace {

ModelParams params(double m, double mu, double nu, int dim = 1, double radius = 1.0) {
    ModelFields f;
    f.m = m;
    f.mu = mu;
    f.nu = nu;
    f.dim = dim;
    f.radius = radius;
    return ModelParams(f);
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// First t >= 1 with phi_m(t) >= target.
double time_for_phi(double target, double m) { return std::max(1.0, std::pow(target * (1.0 + m), 1.0 / (1.0 + m))); }

const std::array<std::array<double, 3>, 3> kParamSets = {{{3, 10, 4}, {1, 2, 0.5}, {0, 1, 0}}};

}  // namespace

TEST_CASE("rho reduces to t K_0(t) for m = 0, mu = 1, nu = 0") {
    const TestFunctionSet tfs(params(0, 1, 0));
    for (double t : {1.0, 1.7, 4.0, 12.0}) {
        CHECK(rel(tfs.rho(t), t * besselk(0.0, t)) < 1e-13);
        CHECK(rel(tfs.rho_log_derivative(t), 1.0 / t - besselk(1.0, t) / besselk(0.0, t)) < 1e-12);
    }
}

TEST_CASE("rho is positive and satisfies its ODE") {
    for (const auto& s : kParamSets) {
        const TestFunctionSet tfs(params(s[0], s[1], s[2]));
        for (double t = 1.0; t <= 10.0; t += 0.125) {
            CAPTURE(t);
            CHECK(tfs.rho_scaled(t) > 0.0);
            CHECK(std::abs(tfs.rho_ode_residual(t)) < 1e-6);
        }
    }
    const TestFunctionSet fig(params(3, 10, 4));
    for (double t = 1.0; t <= 20.0; t += 0.5) CHECK(fig.log_rho(t) > -1e300);
    for (double t = 1.0; t <= 2.5; t += 0.1) CHECK(fig.rho(t) > 0.0);
}

TEST_CASE("two-sided bound and asymptotic constant of rho") {
    for (const auto& s : kParamSets) {
        const double m = s[0];
        const TestFunctionSet tfs(params(m, s[1], s[2]));
        const double limit = std::sqrt(std::numbers::pi * (1.0 + m) / 2.0);
        const double t50 = time_for_phi(50.0, m);
        const double t_end = time_for_phi(2000.0, m);
        for (double t = 1.0; t <= t_end; t *= 1.02) {
            const double ratio = tfs.asymptotic_ratio(t);
            CHECK(ratio > 0.1);
            CHECK(ratio < 10.0);
            if (t >= t50) CHECK(std::abs(ratio / limit - 1.0) < 1e-2);
        }
    }
}

TEST_CASE("log-derivative of rho") {
    for (const auto& s : kParamSets) {
        const TestFunctionSet tfs(params(s[0], s[1], s[2]));
        for (double t : {1.5, 3.0, 7.0}) {
            const double h = 1e-6;
            const double fd = (tfs.log_rho(t + h) - tfs.log_rho(t - h)) / (2.0 * h);
            CAPTURE(t);
            CHECK(rel(tfs.rho_log_derivative(t), fd) < 1e-5);
        }
        const double m = s[0];
        const double t100 = time_for_phi(100.0, m);
        for (double t = t100; t <= 4.0 * t100; t *= 1.05) {
            CHECK(std::abs(tfs.rho_log_derivative(t) / std::pow(t, m) + 1.0) < 1e-2);
        }
    }
}

TEST_CASE("Psi values") {
    CHECK(big_psi(std::vector<double>{0.0}) == doctest::Approx(2.0));
    CHECK(rel(big_psi(std::vector<double>{0.0, 0.0}), 2.0 * std::numbers::pi) < 1e-14);
    const double s1 = 4.0 * std::numbers::pi * std::sinh(1.0);
    CHECK(rel(big_psi(std::vector<double>{0.6, 0.0, 0.8}), s1) < 1e-14);
    CHECK(s1 == doctest::Approx(14.7680).epsilon(1e-5));

    for (double r : {0.0, 0.3, 1.0, 2.5, 7.0}) {
        const std::array<double, 3> x = {r / 3.0, 2.0 * r / 3.0, 2.0 * r / 3.0};
        CHECK(rel(big_psi(x), oracle::sphere_exp_integral(x)) < 1e-12);
        const std::array<double, 2> y = {0.6 * r, -0.8 * r};
        CHECK(rel(big_psi(y), 2.0 * std::numbers::pi * boost::math::cyl_bessel_i(0.0, r)) < 1e-13);
    }

    CHECK_THROWS_AS(big_psi(std::vector<double>{1, 2, 3, 4}), ParameterError);
    CHECK_THROWS_AS(big_psi(std::vector<double>{}), ParameterError);
}

TEST_CASE("Psi shifted form stays finite far out") {
    const std::array<double, 1> x1 = {900.0};
    CHECK(rel(big_psi_shifted(x1, 900.0), 1.0) < 1e-14);
    const std::array<double, 2> x2 = {0.0, 800.0};
    const double s2 = big_psi_shifted(x2, 800.0);
    CHECK(std::isfinite(s2));
    CHECK(rel(s2, std::sqrt(2.0 * std::numbers::pi / 800.0)) < 1e-3);
}

TEST_CASE("Psi solves Delta Psi = Psi") {
    for (double x : {0.0, 1.0, 3.0}) CHECK(big_psi_laplacian_residual(std::vector<double>{x}) <= 1e-6);
    for (double r : {0.5, 2.0}) CHECK(big_psi_laplacian_residual(std::vector<double>{r / std::sqrt(2.0), r / std::sqrt(2.0)}) <= 1e-4);
    CHECK(big_psi_laplacian_residual(std::vector<double>{0.0, 0.6, 0.8}) <= 1e-4);
}

TEST_CASE("Psi^r integral ratio") {
    SUBCASE("N = 1, r = 2 against the closed form") {
        const ModelParams p1 = params(1, 0, 0, 1, 1.0);
        const double at2 = lemma1_ratio(p1, 2.0, 2.0);
        for (double t = 1.0; t <= 6.0; t += 0.25) {
            const double ph = phi_m(t, 1.0);
            const double reach = 1.0 + ph - 0.5;
            const double exact = (2.0 * std::sinh(2.0 * reach) + 4.0 * reach) * std::exp(-2.0 * ph);
            const double ratio = lemma1_ratio(p1, t, 2.0);
            CHECK(rel(ratio, exact) < 1e-9);
            CHECK(ratio > 0.0);
            CHECK(ratio < 10.0 * at2);
        }
    }
    SUBCASE("N = 2, r = p/(p-1), p = 3") {
        const ModelParams p2 = params(1, 0, 0, 2, 1.0);
        const double r = 1.5;
        const double at2 = lemma1_ratio(p2, 2.0, r);
        double lo = 1e300, hi = 0.0;
        for (double t = 1.0; t <= 4.0; t += 0.25) {
            const double v = lemma1_ratio(p2, t, r);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        CHECK(lo > 0.0);
        CHECK(hi < 10.0 * at2);
    }
    CHECK_THROWS_AS(lemma1_ratio(params(0, 0, 0), 0.5, 2.0), ParameterError);
    CHECK_THROWS_AS(lemma1_ratio(params(0, 0, 0), 2.0, 1.0), ParameterError);
}

TEST_CASE("psi0, psi, multiplier and Gamma") {
    const TestFunctionSet tfs(params(3, 10, 4));
    const std::array<double, 1> x = {0.4};
    CHECK(rel(tfs.psi0(x, 1.0), tfs.big_psi(x)) < 1e-15);

    const double t = 2.0;
    const double h = 1e-5;
    const double dpsi0 = (tfs.psi0(x, t + h) - tfs.psi0(x, t - h)) / (2.0 * h);
    CHECK(std::abs(dpsi0 / tfs.psi0(x, t) + std::pow(t, 3.0)) < 1e-8 * std::pow(t, 3.0) + 1e-8);

    for (double s : {1.0, 1.3, 2.0, 2.7}) {
        for (double xv : {-3.0, 0.0, 0.4, 5.0}) {
            const std::array<double, 1> y = {xv};
            const double lhs = tfs.psi(y, s);
            const double rhs = std::exp(tfs.phi(s) - tfs.phi(1.0)) * tfs.rho(s) * tfs.psi0(y, s);
            CHECK(rel(lhs, rhs) < 1e-13);
            CHECK(rel(lhs, tfs.rho(s) * tfs.big_psi(y)) < 1e-13);
        }
        CHECK(tfs.multiplier(s) >= 1.0);
    }

    for (const auto& s : kParamSets) {
        const TestFunctionSet g(params(s[0], s[1], s[2]));
        const double m = s[0];
        double prev = 1e300;
        for (double tt = time_for_phi(20.0, m); tt <= time_for_phi(5000.0, m); tt *= 1.3) {
            const double gap = std::abs(g.gamma(tt) / (2.0 * std::pow(tt, m)) - 1.0);
            CHECK(gap <= prev * 1.0001);
            prev = gap;
        }
        CHECK(prev < 2e-3);
    }
}

TEST_CASE("delta < 0 keeps psi0 but rejects rho") {
    const TestFunctionSet tfs(params(3, 10, 40));
    CHECK_FALSE(tfs.has_rho());
    const std::array<double, 1> x = {0.0};
    CHECK_THROWS_AS(tfs.rho(2.0), RegimeError);
    CHECK_THROWS_AS(tfs.gamma(2.0), RegimeError);
    CHECK_THROWS_AS(tfs.psi(x, 2.0), RegimeError);
    CHECK(tfs.psi0(x, 2.0) > 0.0);
    CHECK_THROWS_AS(tfs.psi0(x, 0.5), ParameterError);
}
