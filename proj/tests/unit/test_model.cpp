#include <cmath>
#include <limits>

#include "doctest.h"
#include "tricomi/errors.hpp"
#include "tricomi/model.hpp"

using namespace tricomi;
using Kind = LifespanExponent::Kind;

namespace {

ModelParams params(double m, double mu, double nu, double p, int dim) {
    ModelFields f;
    f.m = m;
    f.mu = mu;
    f.nu = nu;
    f.p = p;
    f.dim = dim;
    return ModelParams(f);
}

}  // namespace

TEST_CASE("delta_of matches the figure regimes") {
    CHECK(delta_of(10.0, 4.0) == doctest::Approx(17.0));
    CHECK(delta_of(10.0, 4.5) == 0.0);
    CHECK(delta_of(10.0, 40.0) == doctest::Approx(-6319.0));
    CHECK(delta_of(1.0, 0.0) == 0.0);
    for (double nu : {0.0, 0.3, 2.0, 7.5}) CHECK(delta_of(3.0, nu) == delta_of(3.0, -nu));
}

TEST_CASE("phi_m") {
    CHECK(phi_m(1.0, 3.0) == 0.25);
    CHECK(phi_m(2.0, 1.0) == 2.0);
    for (double t : {1.0, 1.5, 7.25}) CHECK(phi_m(t, 0.0) == t);

    for (double m : {0.0, 0.5, 1.0, 3.0}) {
        double prev = phi_m(1.0, m);
        for (double t = 1.05; t <= 20.0; t += 0.05) {
            const double cur = phi_m(t, m);
            CHECK(cur > prev);
            prev = cur;
        }
    }
}

TEST_CASE("critical exponents") {
    for (double m : {0.0, 0.5, 1.0, 4.0}) CHECK(p_tricomi(2.0, m) == doctest::Approx(3.0));
    CHECK(p_tricomi(3.0, 1.0) == doctest::Approx(5.0 / 3.0));
    CHECK(p_tricomi(2.0, 0.0) == doctest::Approx(p_glassey(2.0)));
    CHECK(p_glassey(3.0) == doctest::Approx(2.0));
    CHECK(std::isinf(p_glassey(1.0)));
    CHECK_THROWS_AS(p_tricomi(1.5, 0.0), ParameterError);

    for (double m : {0.0, 1.0, 3.0}) {
        double prev = p_tricomi(2.0, m);
        for (double n = 2.25; n <= 10.0; n += 0.25) {
            const double cur = p_tricomi(n, m);
            CHECK(cur < prev);
            prev = cur;
        }
    }
}

TEST_CASE("lifespan exponent examples") {
    const auto a = lifespan_exponent(params(0, 1, 0, 1.5, 1));
    REQUIRE(a.kind == Kind::kPower);
    CHECK(a.alpha == doctest::Approx(2.0 / 3.0));

    // mu <= m in one dimension: every p > 1 has a finite exponent.
    for (double p : {1.1, 2.0, 5.0, 40.0}) {
        const auto e = lifespan_exponent(params(2, 1, 0, p, 1));
        REQUIRE(e.kind == Kind::kPower);
        CHECK(std::isfinite(e.alpha));
        CHECK(e.alpha > 0.0);
    }

    // p = 1 + 2/(mu - m) is the exponential case.
    CHECK(lifespan_exponent(params(0, 2, 0, 2.0, 1)).kind == Kind::kExponential);
    CHECK(lifespan_exponent(params(0, 1, 0, 3.0, 1)).kind == Kind::kExponential);
    CHECK(lifespan_exponent(params(0, 2, 0, 3.0, 1)).kind == Kind::kNone);

    const auto glassey_1d = lifespan_exponent(params(0, 0, 0, 2, 1));
    REQUIRE(glassey_1d.is_power());
    CHECK(glassey_1d.alpha == doctest::Approx(1.0));
    const auto tricomi_1d = lifespan_exponent(params(1, 1, 0, 2, 1));
    REQUIRE(tricomi_1d.is_power());
    CHECK(tricomi_1d.alpha == doctest::Approx(1.0));

    // N = 2: critical value p_T(2 + mu/(m+1), m).
    const double pc = p_tricomi(2.0 + 1.0 / 2.0, 1.0);
    CHECK(lifespan_exponent(params(1, 1, 0, pc, 2)).kind == Kind::kExponential);
    CHECK(lifespan_exponent(params(1, 1, 0, pc + 0.1, 2)).kind == Kind::kNone);
    CHECK(lifespan_exponent(params(1, 1, 0, 0.5 * (1 + pc), 2)).is_power());

    // delta < 0: no lifespan statement.
    CHECK(lifespan_exponent(params(0, 1, 1, 1.2, 1)).kind == Kind::kNone);
}

TEST_CASE("lifespan exponent grows without bound towards the critical power") {
    for (int dim : {1, 2, 3}) {
        const ModelParams base = params(1.0, 2.5, 0.5, 1.5, dim);
        const double pc = critical_power(base);
        REQUIRE(std::isfinite(pc));
        double prev = 0.0;
        for (int k = 1; k <= 60; ++k) {
            const double p = 1.0 + (pc - 1.0) * (1.0 - std::pow(0.85, k));
            const auto e = lifespan_exponent(base.with_p(p));
            REQUIRE(e.is_power());
            CHECK(e.alpha > prev);
            prev = e.alpha;
        }
        CHECK(prev > 1e3);
    }
}

TEST_CASE("ModelParams validation") {
    ModelFields ok;
    CHECK_NOTHROW(ModelParams{ok});
    auto bad = [&](auto mutate) {
        ModelFields f = ok;
        mutate(f);
        CHECK_THROWS_AS(ModelParams{f}, ParameterError);
    };
    bad([](ModelFields& f) { f.m = -0.1; });
    bad([](ModelFields& f) { f.mu = -1.0; });
    bad([](ModelFields& f) { f.nu = -1.0; });
    bad([](ModelFields& f) { f.p = 1.0; });
    bad([](ModelFields& f) { f.dim = 0; });
    bad([](ModelFields& f) { f.radius = 0.0; });
    bad([](ModelFields& f) { f.eps = 0.0; });
    bad([](ModelFields& f) { f.eps = 1.5; });
    bad([](ModelFields& f) { f.p = std::numeric_limits<double>::quiet_NaN(); });

    // delta < 0 is representable; only the Bessel order rejects it.
    const ModelParams osc = params(3, 10, 40, 2, 1);
    CHECK(osc.delta() < 0.0);
    CHECK_THROWS_AS(bessel_order(osc), RegimeError);
    CHECK(bessel_order(params(3, 10, 4, 2, 1)) == doctest::Approx(std::sqrt(17.0) / 8.0));
}

TEST_CASE("derived quantities") {
    const auto d = derive(params(1, 2, 0.5, 2, 3));
    CHECK(d.delta == 0.0);
    REQUIRE(d.bessel_order);
    CHECK(*d.bessel_order == 0.0);
    REQUIRE(d.p_tricomi);
    CHECK(*d.p_tricomi == doctest::Approx(p_tricomi(4.0, 1.0)));
    CHECK(d.p_glassey == doctest::Approx(2.0));

    const auto one_d = derive(params(0, 0, 0, 2, 1));
    CHECK_FALSE(one_d.p_tricomi.has_value());
    CHECK(std::isinf(one_d.p_critical));
}
