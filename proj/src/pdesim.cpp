#include "tricomi/pdesim.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "tricomi/besselk.hpp"
#include "tricomi/errors.hpp"
#include "tricomi/testfn.hpp"

namespace tricomi::pde {

namespace {

constexpr int kBoundaryCells = 4;

double max_abs(std::span<const double> a) {
    double m = 0.0;
    for (double x : a) m = std::max(m, std::abs(x));
    return m;
}

double trapezoid(std::span<const double> f, double dx) {
    if (f.size() < 2) return 0.0;
    double s = 0.5 * (f.front() + f.back());
    for (std::size_t i = 1; i + 1 < f.size(); ++i) s += f[i];
    return s * dx;
}

double profile_value(Profile p, double x, double radius) {
    return p == Profile::kBump ? bump(x, radius) : 0.0;
}

/// Method-of-lines right-hand side and RK4 buffers, sized once per run.
class Stepper {
public:
    Stepper(const PdeConfig& config, const Grid& grid)
        : n_(grid.x.size()),
          inv_dx2_(1.0 / (grid.dx * grid.dx)),
          m_(config.params.m()),
          mu_(config.params.mu()),
          nu2_(config.params.nu() * config.params.nu()),
          p_(config.params.p()),
          nonlinear_(config.nonlinear) {
        for (auto* b : {&ku_, &kv_}) {
            for (auto& k : *b) k.assign(n_, 0.0);
        }
        tu_.assign(n_, 0.0);
        tv_.assign(n_, 0.0);
    }

    void advance(PdeState& s, double dt) {
        const double t = s.t;
        rhs(t, s.u, s.v, ku_[0], kv_[0]);
        stage(s, 0.5 * dt, 0);
        rhs(t + 0.5 * dt, tu_, tv_, ku_[1], kv_[1]);
        stage(s, 0.5 * dt, 1);
        rhs(t + 0.5 * dt, tu_, tv_, ku_[2], kv_[2]);
        stage(s, dt, 2);
        rhs(t + dt, tu_, tv_, ku_[3], kv_[3]);
        const double w = dt / 6.0;
        for (std::size_t i = 0; i < n_; ++i) {
            s.u[i] += w * (ku_[0][i] + 2.0 * ku_[1][i] + 2.0 * ku_[2][i] + ku_[3][i]);
            s.v[i] += w * (kv_[0][i] + 2.0 * kv_[1][i] + 2.0 * kv_[2][i] + kv_[3][i]);
        }
        s.t = t + dt;
    }

private:
    void stage(const PdeState& s, double h, int k) {
        for (std::size_t i = 0; i < n_; ++i) {
            tu_[i] = s.u[i] + h * ku_[k][i];
            tv_[i] = s.v[i] + h * kv_[k][i];
        }
    }

    void rhs(double t, const std::vector<double>& u, const std::vector<double>& v, std::vector<double>& du,
             std::vector<double>& dv) const {
        const double c2 = std::pow(t, 2.0 * m_) * inv_dx2_;
        const double damp = mu_ / t;
        const double mass = nu2_ / (t * t);
        const bool square = (p_ == 2.0);
        du[0] = dv[0] = du[n_ - 1] = dv[n_ - 1] = 0.0;
        for (std::size_t i = 1; i + 1 < n_; ++i) {
            du[i] = v[i];
            double a = c2 * (u[i - 1] - 2.0 * u[i] + u[i + 1]) - damp * v[i] - mass * u[i];
            if (nonlinear_) a += square ? v[i] * v[i] : std::pow(std::abs(v[i]), p_);
            dv[i] = a;
        }
    }

    std::size_t n_;
    double inv_dx2_, m_, mu_, nu2_, p_;
    bool nonlinear_;
    std::array<std::vector<double>, 4> ku_, kv_;
    std::vector<double> tu_, tv_;
};

Frame make_frame(const PdeConfig& config, const Grid& grid, const PdeState& s) {
    Frame f;
    f.t = s.t;
    f.max_u = max_abs(s.u);
    f.max_v = max_abs(s.v);
    f.min_u = *std::min_element(s.u.begin(), s.u.end());
    f.support = support_radius(grid, s.u, config.support_floor);
    f.energy = energy(grid, s, config.params.m());
    if (config.keep_fields) {
        f.u = s.u;
        f.v = s.v;
    }
    return f;
}

}  // namespace

std::string to_string(Profile p) { return p == Profile::kBump ? "bump" : "zero"; }

Profile parse_profile(const std::string& name) {
    if (name == "bump") return Profile::kBump;
    if (name == "zero") return Profile::kZero;
    throw ParameterError("unknown profile '" + name + "' (expected bump or zero)");
}

double bump(double x, double radius) {
    const double s = x / radius;
    if (std::abs(s) >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - s * s));
}

std::string to_string(Termination t) {
    switch (t) {
        case Termination::kBlowup: return "blowup";
        case Termination::kHorizon: return "survived";
        case Termination::kBoundary: return "boundary";
    }
    return "?";
}

void PdeConfig::validate() const {
    if (params.dim() != 1) throw ParameterError("pde: only dim = 1 is simulated");
    if (!(cfl > 0.0 && cfl < 1.0)) throw ParameterError("pde: cfl must lie in (0, 1)");
    if (!(t_max > 1.0) || !std::isfinite(t_max)) throw ParameterError("pde: t_max must be > 1");
    if (!(blowup_threshold > 1.0)) throw ParameterError("pde: blowup_threshold must be > 1");
    if (dx < 0.0 || !std::isfinite(dx)) throw ParameterError("pde: dx must be >= 0");
    if (dx == 0.0 && nx < 11) throw ParameterError("pde: nx must be >= 11");
    if (frames < 1) throw ParameterError("pde: frames must be >= 1");
    if (!(support_floor > 0.0 && support_floor < 1.0)) throw ParameterError("pde: support_floor must lie in (0, 1)");
    if (!(nonlinear_dt_factor > 0.0)) throw ParameterError("pde: nonlinear_dt_factor must be > 0");
    if (margin < 0.0) throw ParameterError("pde: margin must be >= 0");
    const double cone = cone_radius(params, t_max);
    if (domain_half_width != 0.0 && !(domain_half_width > cone)) {
        throw ParameterError("pde: domain_half_width " + io::format(domain_half_width) +
                             " does not contain the light cone radius " + io::format(cone) + " at t_max");
    }
    if (dx > 0.0 && half_width() / dx > 5e7) throw ParameterError("pde: dx too small for the domain");
}

double PdeConfig::half_width() const {
    if (domain_half_width > 0.0) return domain_half_width;
    return cone_radius(params, t_max) + margin;
}

int PdeConfig::points() const {
    if (dx > 0.0) return 2 * static_cast<int>(std::ceil(half_width() / dx)) + 1;
    return nx;
}

double PdeConfig::spacing() const {
    if (dx > 0.0) return dx;
    return 2.0 * half_width() / (nx - 1);
}

io::Header describe(const PdeConfig& c) {
    io::Header h;
    const ModelParams& p = c.params;
    h.add("m", p.m())
        .add("mu", p.mu())
        .add("nu", p.nu())
        .add("p", p.p())
        .add("dim", p.dim())
        .add("radius", p.radius())
        .add("eps", p.eps())
        .add("delta", p.delta())
        .add("nx", c.points())
        .add("dx", c.spacing())
        .add("cfl", c.cfl)
        .add("t_max", c.t_max)
        .add("blowup_threshold", c.blowup_threshold)
        .add("domain_half_width", c.half_width())
        .add("nonlinear", std::string(c.nonlinear ? "true" : "false"))
        .add("u0", to_string(c.u0))
        .add("u1", to_string(c.u1))
        .add("frames", c.frames)
        .add("support_floor", c.support_floor)
        .add("nonlinear_dt_factor", c.nonlinear_dt_factor);
    return h;
}

Grid make_grid(const PdeConfig& config) {
    config.validate();
    Grid g;
    const int n = config.points();
    const double half = config.dx > 0.0 ? config.dx * (n - 1) / 2 : config.half_width();
    g.dx = 2.0 * half / (n - 1);
    g.x.resize(n);
    for (int i = 0; i < n; ++i) g.x[i] = -half + g.dx * i;
    g.x[(n - 1) / 2] = 0.0;
    return g;
}

InitialData make_initial_data(const PdeConfig& config, const Grid& grid) {
    const ModelParams& p = config.params;
    const double radius = p.radius();
    const double eps = p.eps();
    InitialData d;
    d.u0.resize(grid.x.size());
    d.u1.resize(grid.x.size());
    bool any = false;
    for (std::size_t i = 0; i < grid.x.size(); ++i) {
        d.u0[i] = eps * profile_value(config.u0, grid.x[i], radius);
        d.u1[i] = eps * profile_value(config.u1, grid.x[i], radius);
        any |= (d.u0[i] != 0.0 || d.u1[i] != 0.0);
    }
    if (!any) throw ParameterError("initial data vanish identically");
    if (p.delta() >= 0.0) {
        const double c = 0.5 * (p.mu() - 1.0 - std::sqrt(p.delta()));
        for (std::size_t i = 0; i < grid.x.size(); ++i) {
            if (std::abs(grid.x[i]) >= radius) continue;
            if (d.u0[i] == 0.0 && d.u1[i] == 0.0) continue;  // bump underflow at the rim
            if (!(c * d.u0[i] + d.u1[i] > 0.0)) {
                throw ParameterError("initial data violate ((mu-1-sqrt(delta))/2) u0 + u1 > 0 at x = " +
                                     io::format(grid.x[i]));
            }
        }
    }
    return d;
}

double stable_dt(const PdeConfig& config, const Grid& grid, const PdeState& state) {
    const double m = config.params.m();
    double dt = config.cfl * grid.dx / std::max(1.0, std::pow(state.t, m));
    dt = config.cfl * grid.dx / std::max(1.0, std::pow(state.t + dt, m));
    if (config.nonlinear) {
        const double vmax = max_abs(state.v);
        const double p = config.params.p();
        if (vmax > 0.0) dt = std::min(dt, config.nonlinear_dt_factor / (p * std::pow(vmax, p - 1.0)));
    }
    return dt;
}

void step(const PdeConfig& config, const Grid& grid, PdeState& state, double dt) {
    if (state.u.size() != grid.x.size() || state.v.size() != grid.x.size()) {
        throw ParameterError("pde: state does not match the grid");
    }
    Stepper(config, grid).advance(state, dt);
}

double energy(const Grid& grid, const PdeState& state, double m) {
    const double w = std::pow(state.t, 2.0 * m);
    double e = 0.0;
    const std::size_t n = grid.x.size();
    for (std::size_t i = 0; i < n; ++i) e += state.v[i] * state.v[i];
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double g = (state.u[i + 1] - state.u[i]) / grid.dx;
        e += w * g * g;
    }
    return e * grid.dx;
}

double support_radius(const Grid& grid, std::span<const double> u, double floor) {
    const double level = floor * max_abs(u);
    if (level == 0.0) return 0.0;
    double r = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (std::abs(u[i]) > level) r = std::max(r, std::abs(grid.x[i]));
    }
    return r;
}

double cone_radius(const ModelParams& params, double t) {
    return params.radius() + phi_m(t, params.m()) - phi_m(1.0, params.m());
}

RunRecord integrate(const PdeConfig& config) {
    RunRecord run;
    run.config = config;
    run.grid = make_grid(config);
    run.data = make_initial_data(config, run.grid);
    const Grid& grid = run.grid;
    const std::size_t n = grid.x.size();

    PdeState s;
    s.t = 1.0;
    s.u = run.data.u0;
    s.v = run.data.u1;
    run.reference_v = max_abs(s.v);
    // u_t(., 1) = 0: measure growth of u_t against the size of u instead.
    if (run.reference_v == 0.0) run.reference_v = max_abs(s.u);
    const double trip = config.blowup_threshold * run.reference_v;

    auto record = [&](const PdeState& st) {
        Frame f = make_frame(config, grid, st);
        run.support_excess =
            std::max(run.support_excess, (f.support - cone_radius(config.params, f.t)) / grid.dx);
        if (f.min_u < -config.support_floor * f.max_u) run.positivity_held = false;
        run.frames.push_back(std::move(f));
    };
    record(s);

    Stepper stepper(config, grid);
    const double frame_dt = (config.t_max - 1.0) / config.frames;
    int next = 1;
    double prev_vmax = run.reference_v;
    double prev_t = s.t;

    for (;;) {
        const double t_next = next == config.frames ? config.t_max : 1.0 + frame_dt * next;
        double dt = stable_dt(config, grid, s);
        const bool landing = s.t + dt >= t_next - 1e-12 * t_next;
        if (landing) dt = t_next - s.t;
        stepper.advance(s, dt);
        if (landing) s.t = t_next;
        ++run.steps;

        double umax = 0.0, vmax = 0.0;
        bool finite = true;
        for (std::size_t i = 0; i < n; ++i) {
            const double a = std::abs(s.u[i]), b = std::abs(s.v[i]);
            finite &= std::isfinite(a) && std::isfinite(b);
            umax = std::max(umax, a);
            vmax = std::max(vmax, b);
        }
        if (!finite) {
            run.reason = Termination::kBlowup;
            run.blowup_time = s.t;
            break;
        }
        if (config.nonlinear && vmax >= trip) {
            run.reason = Termination::kBlowup;
            const double w = (std::log(trip) - std::log(prev_vmax)) / (std::log(vmax) - std::log(prev_vmax));
            run.blowup_time = prev_t + std::clamp(w, 0.0, 1.0) * (s.t - prev_t);
            record(s);
            break;
        }
        bool touched = false;
        const double level = config.support_floor * umax;
        for (int k = 1; k <= kBoundaryCells && !touched; ++k) {
            touched = std::abs(s.u[k]) > level || std::abs(s.u[n - 1 - k]) > level;
        }
        if (touched && umax > 0.0) {
            run.reason = Termination::kBoundary;
            record(s);
            break;
        }
        if (landing) {
            record(s);
            if (next == config.frames) {
                run.reason = Termination::kHorizon;
                break;
            }
            ++next;
        }
        prev_vmax = vmax;
        prev_t = s.t;
    }
    run.t_end = s.t;
    return run;
}

std::string BlowupReport::describe() const {
    if (time) return to_string(reason) + " at t = " + io::format(*time);
    return to_string(reason);
}

BlowupReport detect_blowup(const RunRecord& run) {
    BlowupReport r;
    r.reason = run.reason;
    if (run.reason == Termination::kBlowup) r.time = run.blowup_time;
    return r;
}

PowerFit fit_power_law(std::span<const double> eps, std::span<const double> lifespan) {
    if (eps.size() != lifespan.size()) throw ParameterError("fit: eps and T lengths differ");
    if (eps.size() < 3) {
        throw ParameterError("fit refused: " + std::to_string(eps.size()) + " blow-up points, need at least 3");
    }
    const std::size_t n = eps.size();
    std::vector<double> x(n), y(n);
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(eps[i] > 0.0) || !(lifespan[i] > 0.0)) throw ParameterError("fit: eps and T must be positive");
        x[i] = -std::log(eps[i]);
        y[i] = std::log(lifespan[i]);
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw ParameterError("fit: all eps values are equal");
    PowerFit f;
    f.points = static_cast<int>(n);
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (f.intercept + f.slope * x[i]);
        ss += r * r;
    }
    f.residual = std::sqrt(ss / n);
    return f;
}

LifespanRecord lifespan_sweep(const PdeConfig& config, std::span<const double> eps, int threads) {
    if (eps.empty()) throw ParameterError("sweep: empty eps list");
    std::vector<PdeConfig> configs;
    for (double e : eps) {
        PdeConfig c = config;
        c.params = config.params.with_eps(e);
        c.keep_fields = false;
        c.validate();
        configs.push_back(c);
    }

    std::vector<SweepEntry> entries(eps.size());
    std::atomic<std::size_t> cursor{0};
    std::exception_ptr failure;
    std::mutex failure_lock;
    auto worker = [&] {
        for (std::size_t i; (i = cursor++) < configs.size();) {
            try {
                const RunRecord run = integrate(configs[i]);
                const BlowupReport b = detect_blowup(run);
                entries[i] = {configs[i].params.eps(), b.time, b.reason, run.steps};
            } catch (...) {
                std::lock_guard lock(failure_lock);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    unsigned n_threads = threads > 0 ? static_cast<unsigned>(threads) : std::thread::hardware_concurrency();
    n_threads = std::clamp<unsigned>(n_threads, 1, static_cast<unsigned>(configs.size()));
    {
        std::vector<std::jthread> pool;
        for (unsigned k = 0; k < n_threads; ++k) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    LifespanRecord rec;
    std::stable_sort(entries.begin(), entries.end(),
                     [](const SweepEntry& a, const SweepEntry& b) { return a.eps > b.eps; });
    rec.entries = std::move(entries);
    rec.theory = lifespan_exponent(config.params);

    std::vector<double> e, t;
    for (const auto& en : rec.entries) {
        if (en.lifespan) {
            e.push_back(en.eps);
            t.push_back(*en.lifespan);
        }
    }
    rec.gap = std::numeric_limits<double>::quiet_NaN();
    try {
        rec.fit = fit_power_law(e, t);
        if (rec.theory.is_power()) rec.gap = std::abs(rec.fit->slope - rec.theory.alpha) / rec.theory.alpha;
    } catch (const ParameterError& err) {
        rec.fit_error = err.what();
    }
    return rec;
}

double FunctionalSeries::max_eq6_residual() const {
    double r = 0.0;
    for (const auto& s : samples) {
        if (std::isfinite(s.eq6_residual)) r = std::max(r, s.eq6_residual);
    }
    return r;
}

FunctionalSeries functional_probe(const RunRecord& run) {
    const ModelParams& p = run.config.params;
    const Grid& grid = run.grid;
    const std::size_t n = grid.x.size();
    std::vector<const Frame*> frames;
    for (const auto& f : run.frames) {
        if (!f.u.empty()) frames.push_back(&f);
    }
    if (frames.size() < 3) throw ParameterError("functional probe needs at least 3 frames with stored fields");

    const TestFunctionSet tfs(p);
    FunctionalSeries out;
    out.has_g = tfs.has_rho();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double phi1 = tfs.phi(1.0);
    const double power = p.p();

    std::vector<double> w0(n), w(n), src(n);
    double source = 0.0, prev_t = 1.0, prev_src = 0.0;
    for (std::size_t k = 0; k < frames.size(); ++k) {
        const Frame& f = *frames[k];
        const double t = f.t;
        const double phit = tfs.phi(t);
        const double rs = out.has_g ? tfs.rho_scaled(t) : nan;
        FunctionalSample s;
        s.t = t;
        for (std::size_t i = 0; i < n; ++i) {
            const double xi[1] = {grid.x[i]};
            w0[i] = big_psi_shifted(xi, phit - phi1);
            w[i] = out.has_g ? rs * big_psi_shifted(xi, phit) : 0.0;
        }
        auto integral = [&](const std::vector<double>& a, const std::vector<double>& b) {
            double acc = 0.0;
            for (std::size_t i = 1; i + 1 < n; ++i) acc += a[i] * b[i];
            return acc * grid.dx + 0.5 * grid.dx * (a[0] * b[0] + a[n - 1] * b[n - 1]);
        };
        s.f1 = integral(f.u, w0);
        s.f2 = integral(f.v, w0);
        if (out.has_g) {
            s.g1 = integral(f.u, w);
            s.g2 = integral(f.v, w);
            s.g2_from_f2 = std::exp(-phi1) * rs * s.f2;
            double now_src = 0.0;
            if (run.config.nonlinear) {
                for (std::size_t i = 0; i < n; ++i) src[i] = std::pow(std::abs(f.v[i]), power) * w[i];
                now_src = trapezoid(src, grid.dx);
            }
            if (k > 0) source += 0.5 * (t - prev_t) * (now_src + prev_src);
            prev_src = now_src;
            s.source = source;
        } else {
            s.g1 = s.g2 = s.g2_from_f2 = s.source = nan;
        }
        s.g1_dot = nan;
        s.eq6_residual = nan;
        prev_t = t;
        out.samples.push_back(s);
    }

    if (!out.has_g) {
        out.eps_c = out.eps_c_bessel = nan;
        return out;
    }

    // eps C(u0, u1) with the eps-scaled data.
    const double rho1 = tfs.rho(1.0);
    const double drho1 = rho1 * tfs.rho_log_derivative(1.0);
    const double mu = p.mu();
    const double c0 = 0.5 * (mu - 1.0 - std::sqrt(p.delta()));
    const double k0 = besselk(tfs.order(), phi1);
    const double k1 = besselk(tfs.order() + 1.0, phi1);
    std::vector<double> def(n), bes(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double xi[1] = {grid.x[i]};
        const double psi = big_psi(xi);
        const double a = run.data.u0[i], b = run.data.u1[i];
        def[i] = ((mu * rho1 - drho1) * a + rho1 * b) * psi;
        bes[i] = (k0 * (c0 * a + b) + k1 * a) * psi;
    }
    out.eps_c = trapezoid(def, grid.dx);
    out.eps_c_bessel = trapezoid(bes, grid.dx);

    auto& sm = out.samples;
    for (std::size_t k = 1; k + 1 < sm.size(); ++k) {
        const double h1 = sm[k].t - sm[k - 1].t;
        const double h2 = sm[k + 1].t - sm[k].t;
        const double d = -h2 / (h1 * (h1 + h2)) * sm[k - 1].g1 + (h2 - h1) / (h1 * h2) * sm[k].g1 +
                         h1 / (h2 * (h1 + h2)) * sm[k + 1].g1;
        sm[k].g1_dot = d;
        const double gterm = tfs.gamma(sm[k].t) * sm[k].g1;
        const double scale = std::max({std::abs(d), std::abs(gterm), std::abs(sm[k].source), std::abs(out.eps_c)});
        sm[k].eq6_residual = std::abs(d + gterm - sm[k].source - out.eps_c) / scale;
    }
    return out;
}

void write_frames(const RunRecord& run, const std::filesystem::path& path, const io::Header& header) {
    auto out = io::open_output(path);
    header.write(out);
    out << "t,x,u,v\n";
    for (const auto& f : run.frames) {
        if (f.u.empty()) continue;
        const std::string t = io::format(f.t);
        for (std::size_t i = 0; i < f.u.size(); ++i) {
            out << t << ',' << io::format(run.grid.x[i]) << ',' << io::format(f.u[i]) << ','
                << io::format(f.v[i]) << '\n';
        }
    }
    if (!out) throw IoError("write failed", path.string());
}

void write_trace(const RunRecord& run, const std::filesystem::path& path, const io::Header& header) {
    auto out = io::open_output(path);
    header.write(out);
    out << "t,max_u,max_v,min_u,support,cone,energy\n";
    for (const auto& f : run.frames) {
        out << io::format(f.t) << ',' << io::format(f.max_u) << ',' << io::format(f.max_v) << ','
            << io::format(f.min_u) << ',' << io::format(f.support) << ','
            << io::format(cone_radius(run.config.params, f.t)) << ',' << io::format(f.energy) << '\n';
    }
    if (!out) throw IoError("write failed", path.string());
}

void write_functionals(const FunctionalSeries& series, const std::filesystem::path& path,
                       const io::Header& header) {
    auto out = io::open_output(path);
    io::Header h = header;
    h.add("eps_C", series.eps_c).add("eps_C_bessel", series.eps_c_bessel);
    h.write(out);
    out << "t,F1,F2,G1,G2,eq6_residual\n";
    for (const auto& s : series.samples) {
        out << io::format(s.t) << ',' << io::format(s.f1) << ',' << io::format(s.f2) << ',' << io::format(s.g1)
            << ',' << io::format(s.g2) << ',' << io::format(s.eq6_residual) << '\n';
    }
    if (!out) throw IoError("write failed", path.string());
}

void write_sweep(const LifespanRecord& record, const std::filesystem::path& path, const io::Header& header) {
    auto out = io::open_output(path);
    header.write(out);
    out << "eps,T,reason\n";
    for (const auto& e : record.entries) {
        out << io::format(e.eps) << ',' << (e.lifespan ? io::format(*e.lifespan) : std::string("nan")) << ','
            << to_string(e.reason) << '\n';
    }
    if (!out) throw IoError("write failed", path.string());
}

void write_fit(const LifespanRecord& record, const std::filesystem::path& path, const io::Header& header) {
    auto out = io::open_output(path);
    header.write(out);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    out << "slope: " << io::format(record.fit ? record.fit->slope : nan) << '\n';
    out << "intercept: " << io::format(record.fit ? record.fit->intercept : nan) << '\n';
    out << "alpha_theory: "
        << (record.theory.is_power() ? io::format(record.theory.alpha) : record.theory.describe()) << '\n';
    out << "gap: " << io::format(record.gap) << '\n';
    out << "residual: " << io::format(record.fit ? record.fit->residual : nan) << '\n';
    out << "points: " << (record.fit ? record.fit->points : 0) << '\n';
    if (!record.fit) out << "fit_error: " << record.fit_error << '\n';
    if (!out) throw IoError("write failed", path.string());
}

}  // namespace tricomi::pde
