#include "tricomi/model.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "tricomi/errors.hpp"

namespace tricomi {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Relative tolerance for deciding that p sits exactly on the critical value.
constexpr double kCriticalTol = 1e-12;

void require(bool ok, const char* what) {
    if (!ok) throw ParameterError(what);
}

}  // namespace

ModelParams::ModelParams(const ModelFields& f) : f_(f) {
    require(std::isfinite(f.m) && f.m >= 0.0, "model: m must be finite and >= 0");
    require(std::isfinite(f.mu) && f.mu >= 0.0, "model: mu must be finite and >= 0");
    require(std::isfinite(f.nu) && f.nu >= 0.0, "model: nu must be finite and >= 0");
    require(std::isfinite(f.p) && f.p > 1.0, "model: p must be finite and > 1");
    require(f.dim >= 1, "model: dim must be >= 1");
    require(std::isfinite(f.radius) && f.radius > 0.0, "model: radius must be > 0");
    require(std::isfinite(f.eps) && f.eps > 0.0 && f.eps <= 1.0, "model: eps must lie in (0, 1]");
}

double ModelParams::delta() const noexcept { return delta_of(f_.mu, f_.nu); }

ModelParams ModelParams::with_eps(double eps) const {
    ModelFields f = f_;
    f.eps = eps;
    return ModelParams(f);
}

ModelParams ModelParams::with_p(double p) const {
    ModelFields f = f_;
    f.p = p;
    return ModelParams(f);
}

std::string LifespanExponent::describe() const {
    switch (kind) {
        case Kind::kPower: {
            std::ostringstream os;
            os.precision(15);
            os << alpha;
            return os.str();
        }
        case Kind::kExponential:
            return "exponential";
        case Kind::kNone:
            break;
    }
    return "none";
}

double delta_of(double mu, double nu) { return (mu - 1.0) * (mu - 1.0) - 4.0 * nu * nu; }

double phi_m(double t, double m) { return std::pow(t, 1.0 + m) / (1.0 + m); }

double p_glassey(double n) {
    if (n <= 1.0) return kInf;
    return 1.0 + 2.0 / (n - 1.0);
}

double p_tricomi(double n, double m) {
    if (!(n >= 2.0)) throw ParameterError("p_tricomi: requires N >= 2");
    if (!(m >= 0.0)) throw ParameterError("p_tricomi: requires m >= 0");
    return 1.0 + 2.0 / ((1.0 + m) * (n - 1.0) - m);
}

double bessel_order(const ModelParams& params) {
    const double d = params.delta();
    if (d < 0.0) {
        throw RegimeError(
            "delta < 0: the Bessel order is imaginary; use the F1 ODE path (ode-run) instead");
    }
    return std::sqrt(d) / (2.0 * (1.0 + params.m()));
}

double critical_power(const ModelParams& params) {
    const double m = params.m();
    const double mu = params.mu();
    if (params.dim() == 1) {
        if (mu <= m) return kInf;
        return 1.0 + 2.0 / (mu - m);
    }
    return p_tricomi(params.dim() + mu / (m + 1.0), m);
}

LifespanExponent lifespan_exponent(const ModelParams& params) {
    LifespanExponent out;
    if (params.delta() < 0.0) return out;  // no blow-up statement without delta >= 0

    const double p = params.p();
    const double m = params.m();
    const double mu = params.mu();
    const double pc = critical_power(params);

    if (std::isfinite(pc) && std::abs(p - pc) <= kCriticalTol * pc) {
        out.kind = LifespanExponent::Kind::kExponential;
        return out;
    }
    if (p > pc) return out;

    // Effective "dimension" weight multiplying (p - 1) in the denominator.
    const double weight =
        params.dim() == 1 ? (mu - m) : (1.0 + m) * (params.dim() - 1.0) - m + mu;
    const double denom = 2.0 - weight * (p - 1.0);
    if (!(denom > 0.0)) return out;
    out.kind = LifespanExponent::Kind::kPower;
    out.alpha = 2.0 * (p - 1.0) / denom;
    return out;
}

DerivedQuantities derive(const ModelParams& params) {
    DerivedQuantities d;
    d.delta = params.delta();
    if (d.delta >= 0.0) d.bessel_order = bessel_order(params);
    d.p_glassey = p_glassey(params.dim());
    if (params.dim() >= 2) d.p_tricomi = p_tricomi(params.dim() + params.mu() / (params.m() + 1.0), params.m());
    d.p_critical = critical_power(params);
    d.lifespan = lifespan_exponent(params);
    return d;
}

}  // namespace tricomi
