#include "tricomi/odelab.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tricomi/errors.hpp"
#include "tricomi/svg.hpp"

namespace tricomi::odelab {

namespace {

constexpr double kBisectTol = 1e-8;

template <class F>
double bisect_root(F&& f, double a, double b) {
    double fa = f(a);
    while (b - a > kBisectTol) {
        const double mid = 0.5 * (a + b);
        const double fm = f(mid);
        if ((fm > 0.0) == (fa > 0.0)) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    return 0.5 * (a + b);
}

template <class Eval>
SignSummary analyse(std::span<const double> t, std::span<const double> v, double band, Eval&& eval) {
    SignSummary s;
    if (t.empty() || t.size() != v.size()) {
        throw ParameterError("sign_analysis: needs a nonempty series with matching lengths");
    }
    const auto it = std::min_element(v.begin(), v.end());
    s.min_f2 = *it;
    s.argmin = t[static_cast<std::size_t>(it - v.begin())];

    int sign = 0;
    std::size_t last_signed = 0;
    for (std::size_t k = 0; k < v.size(); ++k) {
        int now = 0;
        if (v[k] > band) now = 1;
        else if (v[k] < -band) now = -1;
        if (now == 0) continue;
        if (sign != 0 && now != sign) {
            ++s.sign_changes;
            s.crossings.push_back(bisect_root(eval, t[last_signed], t[k]));
        }
        sign = now;
        last_signed = k;
    }

    if (v.back() > 0.0) {
        std::size_t k = v.size();
        while (k > 0 && v[k - 1] > 0.0) --k;
        if (k == 0) {
            s.eventual_positive_time = t.front();
        } else {
            s.eventual_positive_time = bisect_root(eval, t[k - 1], t[k]);
        }
    }
    return s;
}

}  // namespace

void OdeRunConfig::validate() const {
    if (!(f1_init > 0.0) || !(f1p_init > 0.0)) {
        throw ParameterError("ode: F1(1) and F1'(1) must both be positive");
    }
    if (!(t_end > 1.0) || !std::isfinite(t_end)) throw ParameterError("ode: t_end must be > 1");
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw ParameterError("ode: tolerances must be > 0");
    if (samples < 2) throw ParameterError("ode: need at least two output samples");
}

double OdeTrajectory::f2_at(double t) const {
    if (!dense.empty()) {
        const auto y = dense(t);
        return y[1] + std::pow(t, m) * y[0];
    }
    const auto it = std::lower_bound(times.begin(), times.end(), t);
    if (it == times.begin()) return f2.front();
    if (it == times.end()) return f2.back();
    const std::size_t k = static_cast<std::size_t>(it - times.begin());
    const double w = (t - times[k - 1]) / (times[k] - times[k - 1]);
    return (1.0 - w) * f2[k - 1] + w * f2[k];
}

OdeTrajectory integrate_f1(const OdeRunConfig& config) {
    config.validate();
    const double mu = config.params.mu();
    const double nu2 = config.params.nu() * config.params.nu();
    const double m = config.params.m();

    auto rhs = [=](double t, const ode::State<2>& y) -> ode::State<2> {
        const double tm = std::pow(t, m);
        return {y[1], -(mu / t + 2.0 * tm) * y[1] - ((m + mu) * tm / t + nu2 / (t * t)) * y[0]};
    };

    OdeTrajectory traj;
    traj.m = m;
    const double scale = std::max(config.f1_init, config.f1p_init);
    traj.band = config.abs_tol * scale;
    ode::integrate<2>(rhs, 1.0, config.t_end, {config.f1_init, config.f1p_init},
                      {config.rel_tol, config.abs_tol}, &traj.dense, &traj.stats, scale);

    const int n = config.samples;
    traj.times.resize(n);
    traj.f1.resize(n);
    traj.f1p.resize(n);
    traj.f2.resize(n);
    for (int i = 0; i < n; ++i) {
        const double t = (i == n - 1) ? config.t_end : 1.0 + (config.t_end - 1.0) * i / (n - 1);
        const auto y = traj.dense(t);
        traj.times[i] = t;
        traj.f1[i] = y[0];
        traj.f1p[i] = y[1];
        traj.f2[i] = y[1] + std::pow(t, m) * y[0];
    }
    traj.summary = sign_analysis(traj);
    return traj;
}

SignSummary sign_analysis(const OdeTrajectory& traj) {
    return analyse(traj.times, traj.f2, traj.band, [&](double t) { return traj.f2_at(t); });
}

SignSummary sign_analysis(std::span<const double> times, std::span<const double> values, double band) {
    auto lerp = [&](double t) {
        const auto it = std::lower_bound(times.begin(), times.end(), t);
        if (it == times.begin()) return values.front();
        if (it == times.end()) return values.back();
        const std::size_t k = static_cast<std::size_t>(it - times.begin());
        const double w = (t - times[k - 1]) / (times[k] - times[k - 1]);
        return (1.0 - w) * values[k - 1] + w * values[k];
    };
    return analyse(times, values, band, lerp);
}

OdeRunConfig figure_config(int figure) {
    struct Row {
        double nu, f1, f1p;
    };
    // mu = 10, m = 3 throughout; figures 5-7 vary only the initial data.
    static constexpr Row rows[] = {{0.0, 1, 1}, {4.0, 1, 1}, {4.5, 1, 1}, {40.0, 1, 1},
                                   {4.0, 1, 1}, {4.0, 1, 100}, {4.0, 100, 1}};
    if (figure < 1 || figure > 7) throw ParameterError("figure index must be in 1..7");
    const Row& r = rows[figure - 1];
    ModelFields f;
    f.m = 3.0;
    f.mu = 10.0;
    f.nu = r.nu;
    OdeRunConfig c;
    c.params = ModelParams(f);
    c.f1_init = r.f1;
    c.f1p_init = r.f1p;
    return c;
}

io::Header describe(const OdeRunConfig& config) {
    io::Header h;
    h.add("m", config.params.m())
        .add("mu", config.params.mu())
        .add("nu", config.params.nu())
        .add("delta", config.params.delta())
        .add("f1_init", config.f1_init)
        .add("f1p_init", config.f1p_init)
        .add("t_end", config.t_end)
        .add("rel_tol", config.rel_tol)
        .add("abs_tol", config.abs_tol)
        .add("samples", config.samples);
    return h;
}

void emit_figure(const OdeTrajectory& traj, const OdeRunConfig& config, const std::filesystem::path& dir,
                 const std::string& stem, const io::Header& extra) {
    io::Header header = describe(config);
    header.append(extra);
    const SignSummary& s = traj.summary;
    header.add("min_F2", s.min_f2)
        .add("argmin_F2", s.argmin)
        .add("sign_changes", s.sign_changes)
        .add("eventual_positive_time",
             s.eventual_positive_time ? io::format(*s.eventual_positive_time) : std::string("none"));

    {
        auto out = io::open_output(dir / (stem + ".csv"));
        header.write(out);
        out << "t,F1,F1p,F2\n";
        for (std::size_t i = 0; i < traj.times.size(); ++i) {
            out << io::format(traj.times[i]) << ',' << io::format(traj.f1[i]) << ','
                << io::format(traj.f1p[i]) << ',' << io::format(traj.f2[i]) << '\n';
        }
        if (!out) throw IoError("write failed", (dir / (stem + ".csv")).string());
    }

    svg::LinePlot plot;
    plot.title = stem + ": mu=" + io::format(config.params.mu()) + ", nu=" + io::format(config.params.nu()) +
                 ", m=" + io::format(config.params.m()) + ", F1(1)=" + io::format(config.f1_init) +
                 ", F1'(1)=" + io::format(config.f1p_init);
    plot.x_label = "t";
    plot.y_label = "F2(t)";
    plot.series.push_back({"F2", traj.times, traj.f2});
    plot.write(dir / (stem + ".svg"));
}

}  // namespace tricomi::odelab
