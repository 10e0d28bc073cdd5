#pragma once

#include <optional>
#include <string>

namespace tricomi {

/// Raw parameter tuple for u_tt - t^{2m} Δu + (mu/t) u_t + (nu^2/t^2) u = |u_t|^p
/// posed for t >= 1 in N space dimensions, with data eps*(u0, u1) supported
/// in the ball of radius R.
struct ModelFields {
    double m = 0.0;
    double mu = 0.0;
    double nu = 0.0;
    double p = 2.0;
    int dim = 1;
    double radius = 1.0;
    double eps = 1.0;
};

/// Validated model parameters. Construction throws ParameterError unless
/// m, mu, nu >= 0, p > 1, dim >= 1, radius > 0 and 0 < eps <= 1.
/// delta < 0 is representable; only Bessel-dependent code rejects it.
class ModelParams {
public:
    ModelParams() : ModelParams(ModelFields{}) {}
    explicit ModelParams(const ModelFields& fields);

    double m() const noexcept { return f_.m; }
    double mu() const noexcept { return f_.mu; }
    double nu() const noexcept { return f_.nu; }
    double p() const noexcept { return f_.p; }
    int dim() const noexcept { return f_.dim; }
    double radius() const noexcept { return f_.radius; }
    double eps() const noexcept { return f_.eps; }
    const ModelFields& fields() const noexcept { return f_; }

    /// (mu - 1)^2 - 4 nu^2, recomputed on every call.
    double delta() const noexcept;

    ModelParams with_eps(double eps) const;
    ModelParams with_p(double p) const;

private:
    ModelFields f_;
};

/// Lifespan rate of the blow-up bound: T_eps <= C eps^{-alpha} (kPower),
/// T_eps <= exp(C eps^{-(p-1)}) (kExponential), or no statement (kNone).
struct LifespanExponent {
    enum class Kind { kPower, kExponential, kNone };
    Kind kind = Kind::kNone;
    double alpha = 0.0;  // meaningful only for kPower

    bool is_power() const noexcept { return kind == Kind::kPower; }
    std::string describe() const;
};

struct DerivedQuantities {
    double delta = 0.0;
    std::optional<double> bessel_order;  // sqrt(delta)/(2(1+m)), delta >= 0 only
    double p_glassey = 0.0;              // +inf for N = 1
    std::optional<double> p_tricomi;     // p_T(N + mu/(m+1), m), N >= 2 only
    double p_critical = 0.0;             // the threshold the lifespan bound switches at
    LifespanExponent lifespan;
};

double delta_of(double mu, double nu);

/// t^{1+m}/(1+m); the characteristic distance travelled by time t.
double phi_m(double t, double m);

/// 1 + 2/(N-1), +inf for N <= 1.
double p_glassey(double n);

/// 1 + 2/((1+m)(N-1) - m). N is real because the blow-up range evaluates it at
/// the shifted dimension N + mu/(m+1). Throws ParameterError for N < 2.
double p_tricomi(double n, double m);

/// Order of the Bessel function inside rho: sqrt(delta)/(2(1+m)).
/// Throws RegimeError when delta < 0.
double bessel_order(const ModelParams& params);

/// Critical power at which the lifespan bound turns exponential. For N = 1 the
/// value depends on mu - m only; +inf when mu <= m.
double critical_power(const ModelParams& params);

LifespanExponent lifespan_exponent(const ModelParams& params);

DerivedQuantities derive(const ModelParams& params);

}  // namespace tricomi
