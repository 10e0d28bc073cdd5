#include "tricomi/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <functional>
#include <iostream>
#include <mutex>
#include <optional>
#include <thread>

#include "tricomi/besselk.hpp"
#include "tricomi/errors.hpp"
#include "tricomi/io.hpp"
#include "tricomi/model.hpp"
#include "tricomi/odelab.hpp"
#include "tricomi/testfn.hpp"

namespace tricomi::cli {

namespace {

using config::ConfigError;

/// A bad command-line value: reported like a config error, keyed by flag.
ConfigError flag_error(const std::string& flag, const std::string& message) {
    return ConfigError("command line", 0, flag, message);
}

std::string fmt15(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

struct Context {
    std::ostream& out;
    std::ostream& err;
    std::vector<std::string> args;
    int threads = 0;
    bool stamp = false;
    std::string stage = "startup";

    io::Header header() const {
        io::Header h;
        std::string cmd;
        for (const auto& a : args) cmd += (cmd.empty() ? "" : " ") + a;
        h.add("command", cmd);
        if (stamp) h.stamp();
        return h;
    }
};

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body) {
    unsigned workers = threads > 0 ? static_cast<unsigned>(threads) : std::thread::hardware_concurrency();
    workers = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(std::max<std::size_t>(n, 1)));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex lock;
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i; (i = next++) < n;) {
                    try {
                        body(i);
                    } catch (...) {
                        std::lock_guard g(lock);
                        if (!failure) failure = std::current_exception();
                    }
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
}

ModelParams params_from_flags(double m, double mu, double nu) {
    ModelFields f;
    f.m = m;
    f.mu = mu;
    f.nu = nu;
    try {
        return ModelParams(f);
    } catch (const ParameterError& e) {
        throw flag_error("--m/--mu/--nu", e.what());
    }
}

// ---- bessel ---------------------------------------------------------------

struct BesselOpts {
    double order = 0.0;
    double z = 1.0;
    bool scaled = false;
};

int cmd_bessel(Context& ctx, const BesselOpts& o) {
    ctx.stage = "bessel";
    if (!(o.order >= 0.0) || !std::isfinite(o.order)) throw flag_error("--order", "must be finite and >= 0");
    if (!(o.z > 0.0) || !std::isfinite(o.z)) throw flag_error("--z", "must be finite and > 0");
    const double v = o.scaled ? besselk_scaled(o.order, o.z) : besselk(o.order, o.z);
    ctx.out << fmt15(v) << '\n';
    return kExitOk;
}

// ---- rho-verify -----------------------------------------------------------

struct RhoOpts {
    double m = 0.0, mu = 0.0, nu = 0.0;
    double t_max = 10.0;
    int samples = 91;
    std::string out;
};

int cmd_rho_verify(Context& ctx, const RhoOpts& o) {
    ctx.stage = "rho-verify setup";
    const ModelParams p = params_from_flags(o.m, o.mu, o.nu);
    if (p.delta() < 0.0) throw flag_error("--nu", "delta = " + io::format(p.delta()) + " < 0: rho is not defined");
    if (!(o.t_max > 1.0)) throw flag_error("--t-max", "must be > 1");
    if (o.samples < 2) throw flag_error("--samples", "must be >= 2");
    const TestFunctionSet tfs(p);

    ctx.stage = "rho-verify evaluation";
    io::Header h = ctx.header();
    h.add("m", p.m()).add("mu", p.mu()).add("nu", p.nu()).add("delta", p.delta()).add("order", tfs.order());
    h.add("ratio_limit", std::sqrt(M_PI * (1.0 + p.m()) / 2.0));
    std::ostringstream body;
    body << "t,phi,rho_scaled,ode_residual,asymptotic_ratio,log_derivative_ratio\n";
    for (int k = 0; k < o.samples; ++k) {
        const double t = k == o.samples - 1 ? o.t_max : 1.0 + (o.t_max - 1.0) * k / (o.samples - 1);
        body << io::format(t) << ',' << io::format(tfs.phi(t)) << ',' << io::format(tfs.rho_scaled(t)) << ','
             << io::format(tfs.rho_ode_residual(t)) << ',' << io::format(tfs.asymptotic_ratio(t)) << ','
             << io::format(tfs.rho_log_derivative(t) / std::pow(t, p.m())) << '\n';
    }
    h.write(ctx.out);
    ctx.out << body.str();
    if (!o.out.empty()) {
        ctx.stage = "rho-verify output";
        const auto path = std::filesystem::path(o.out) / ("rho_verify_m" + io::format(p.m()) + "_mu" +
                                                          io::format(p.mu()) + "_nu" + io::format(p.nu()) + ".csv");
        auto f = io::open_output(path);
        h.write(f);
        f << body.str();
        if (!f) throw IoError("write failed", path.string());
    }
    return kExitOk;
}

// ---- ode-figures / ode-run ------------------------------------------------

struct FigureOpts {
    int fig = 0;
    bool all = false;
    std::string out;
};

void print_summary(std::ostream& os, const std::string& name, const odelab::OdeTrajectory& t) {
    const auto& s = t.summary;
    os << name << ": min_F2=" << fmt15(s.min_f2) << " at t=" << fmt15(s.argmin)
       << " sign_changes=" << s.sign_changes << " eventual_positive_time="
       << (s.eventual_positive_time ? fmt15(*s.eventual_positive_time) : std::string("none")) << '\n';
}

int cmd_ode_figures(Context& ctx, const FigureOpts& o) {
    ctx.stage = "ode-figures setup";
    std::vector<int> figs;
    if (o.all) {
        for (int i = 1; i <= 7; ++i) figs.push_back(i);
    } else if (o.fig >= 1 && o.fig <= 7) {
        figs.push_back(o.fig);
    } else {
        throw flag_error("--fig", "give --fig 1..7 or --all");
    }
    const std::filesystem::path dir = o.out.empty() ? default_out_dir() : std::filesystem::path(o.out);

    ctx.stage = "ode integration";
    std::vector<odelab::OdeRunConfig> configs;
    for (int f : figs) configs.push_back(odelab::figure_config(f));
    std::vector<odelab::OdeTrajectory> trajs(figs.size());
    parallel_for(figs.size(), ctx.threads, [&](std::size_t i) { trajs[i] = odelab::integrate_f1(configs[i]); });

    ctx.stage = "figure output";
    for (std::size_t i = 0; i < figs.size(); ++i) {
        const std::string stem = "fig" + std::to_string(figs[i]);
        odelab::emit_figure(trajs[i], configs[i], dir, stem, ctx.header());
        print_summary(ctx.out, stem, trajs[i]);
    }
    ctx.out << "wrote " << figs.size() << " figure(s) to " << dir.string() << '\n';
    return kExitOk;
}

struct OdeRunOpts {
    double m = 3.0, mu = 10.0, nu = 4.0;
    double f1 = 1.0, f1p = 1.0, t_end = 10.0;
    double rel_tol = 1e-9, abs_tol = 1e-12;
    int samples = 2001;
    std::string name = "ode_run";
    std::string out;
};

int cmd_ode_run(Context& ctx, const OdeRunOpts& o) {
    ctx.stage = "ode-run setup";
    odelab::OdeRunConfig c;
    c.params = params_from_flags(o.m, o.mu, o.nu);
    c.f1_init = o.f1;
    c.f1p_init = o.f1p;
    c.t_end = o.t_end;
    c.rel_tol = o.rel_tol;
    c.abs_tol = o.abs_tol;
    c.samples = o.samples;
    try {
        c.validate();
    } catch (const ParameterError& e) {
        throw flag_error("--f1/--f1p/--t-end/--rel-tol/--abs-tol/--samples", e.what());
    }
    if (o.name.empty() || o.name.find('/') != std::string::npos) throw flag_error("--name", "must be a plain file stem");

    ctx.stage = "ode integration";
    const auto traj = odelab::integrate_f1(c);
    ctx.stage = "ode output";
    const std::filesystem::path dir = o.out.empty() ? default_out_dir() : std::filesystem::path(o.out);
    odelab::emit_figure(traj, c, dir, o.name, ctx.header());
    print_summary(ctx.out, o.name, traj);
    return kExitOk;
}

// ---- pde-run / lifespan-sweep ---------------------------------------------

struct PdeOpts {
    std::string config;
    std::string out;
    std::string eps;
};

io::Header pde_header(const Context& ctx, const pde::PdeConfig& c, const config::File& file) {
    io::Header h = ctx.header();
    h.append(pde::describe(c));
    h.add("config_file", file.source());
    for (const auto& line : file.echo()) h.add("config", line);
    return h;
}

int cmd_pde_run(Context& ctx, const PdeOpts& o) {
    ctx.stage = "config";
    config::File file = config::File::load(o.config);
    const pde::PdeConfig c = pde_config_from(file);
    file.finish();
    const io::Header h = pde_header(ctx, c, file);
    const std::filesystem::path dir = o.out.empty() ? default_out_dir() : std::filesystem::path(o.out);

    ctx.stage = "pde integration";
    const pde::RunRecord run = pde::integrate(c);

    std::optional<pde::FunctionalSeries> fs;
    if (c.keep_fields && run.frames.size() >= 3) {
        ctx.stage = "functional probe";
        fs = pde::functional_probe(run);
    }

    ctx.stage = "pde output";
    if (c.keep_fields) pde::write_frames(run, dir / "frames.csv", h);
    pde::write_trace(run, dir / "trace.csv", h);
    if (fs) pde::write_functionals(*fs, dir / "functionals.csv", h);

    const auto b = pde::detect_blowup(run);
    ctx.out << "termination: " << b.describe() << '\n';
    ctx.out << "steps: " << run.steps << '\n';
    ctx.out << "support_excess_cells: " << fmt15(run.support_excess) << '\n';
    ctx.out << "positivity_held: " << (run.positivity_held ? "true" : "false") << '\n';
    if (fs && fs->has_g) ctx.out << "max_eq6_residual: " << fmt15(fs->max_eq6_residual()) << '\n';
    ctx.out << "wrote outputs to " << dir.string() << '\n';
    return kExitOk;
}

int cmd_lifespan_sweep(Context& ctx, const PdeOpts& o) {
    ctx.stage = "config";
    config::File file = config::File::load(o.config);
    const pde::PdeConfig c = pde_config_from(file);
    std::vector<double> eps = file.get_list("sweep.eps", {0.4, 0.2, 0.1, 0.05});
    const int file_threads = file.get_int("sweep.threads", 0);
    file.finish();
    if (!o.eps.empty()) {
        try {
            eps = config::parse_list(o.eps);
        } catch (const std::invalid_argument& e) {
            throw flag_error("--eps", e.what());
        }
    }
    for (double e : eps) {
        if (!(e > 0.0 && e <= 1.0)) throw flag_error("--eps", "every eps must lie in (0, 1], got " + io::format(e));
    }
    const int threads = ctx.threads > 0 ? ctx.threads : file_threads;
    io::Header h = pde_header(ctx, c, file);
    std::string list;
    for (double e : eps) list += (list.empty() ? "" : ",") + io::format(e);
    h.add("eps_list", list);
    const std::filesystem::path dir = o.out.empty() ? default_out_dir() : std::filesystem::path(o.out);

    ctx.stage = "lifespan sweep";
    const pde::LifespanRecord rec = pde::lifespan_sweep(c, eps, threads);

    ctx.stage = "sweep output";
    pde::write_sweep(rec, dir / "sweep.csv", h);
    pde::write_fit(rec, dir / "fit.txt", h);
    for (const auto& e : rec.entries) {
        ctx.out << "eps=" << fmt15(e.eps) << " T=" << (e.lifespan ? fmt15(*e.lifespan) : std::string("none"))
                << " (" << pde::to_string(e.reason) << ")\n";
    }
    if (rec.fit) {
        ctx.out << "slope=" << fmt15(rec.fit->slope) << " alpha_theory="
                << (rec.theory.is_power() ? fmt15(rec.theory.alpha) : rec.theory.describe())
                << " gap=" << fmt15(rec.gap) << '\n';
    } else {
        ctx.out << rec.fit_error << '\n';
    }
    return kExitOk;
}

// ---- report ---------------------------------------------------------------

struct ReportOpts {
    std::string in;
    std::string out;
};

int cmd_report(Context& ctx, const ReportOpts& o) {
    ctx.stage = "report";
    const std::filesystem::path dir = o.in.empty() ? default_out_dir() : std::filesystem::path(o.in);
    const std::string md = build_report(dir);
    const std::filesystem::path path = o.out.empty() ? dir / "report.md" : std::filesystem::path(o.out);
    auto f = io::open_output(path);
    f << md;
    if (!f) throw IoError("write failed", path.string());
    ctx.out << md;
    return kExitOk;
}

}  // namespace

std::filesystem::path default_out_dir() {
    if (const char* env = std::getenv(kOutDirEnv); env && *env) return env;
    return "tricomi-lab-out";
}

pde::PdeConfig pde_config_from(config::File& file) {
    struct ModelKey {
        const char* name;
        double ModelFields::*field;
    };
    static constexpr ModelKey model_keys[] = {
        {"model.m", &ModelFields::m},         {"model.mu", &ModelFields::mu},
        {"model.nu", &ModelFields::nu},       {"model.p", &ModelFields::p},
        {"model.radius", &ModelFields::radius}, {"model.eps", &ModelFields::eps},
    };
    ModelFields fields;
    for (const auto& k : model_keys) {
        if (!file.has(k.name)) continue;
        const double v = file.get_double(k.name, 0.0);
        ModelFields probe;
        probe.*k.field = v;
        try {
            ModelParams{probe};
        } catch (const ParameterError& e) {
            file.fail(k.name, e.what());
        }
        fields.*k.field = v;
    }
    if (file.has("model.dim") && file.get_int("model.dim", 1) != 1) {
        file.fail("model.dim", "the PDE solver is one-dimensional; dim must be 1");
    }

    pde::PdeConfig c;
    c.params = ModelParams(fields);
    auto check = [&](const char* key) {
        try {
            c.validate();
        } catch (const ParameterError& e) {
            file.fail(key, e.what());
        }
    };
    auto number = [&](const char* key, double& slot) {
        if (!file.has(key)) return;
        slot = file.get_double(key, slot);
        check(key);
    };
    auto integer = [&](const char* key, int& slot) {
        if (!file.has(key)) return;
        slot = file.get_int(key, slot);
        check(key);
    };
    auto flag = [&](const char* key, bool& slot) {
        if (file.has(key)) slot = file.get_bool(key, slot);
    };
    auto profile = [&](const char* key, pde::Profile& slot) {
        if (!file.has(key)) return;
        try {
            slot = pde::parse_profile(file.get_string(key, ""));
        } catch (const ParameterError& e) {
            file.fail(key, e.what());
        }
    };

    number("run.t_max", c.t_max);
    integer("grid.nx", c.nx);
    number("grid.dx", c.dx);
    number("grid.cfl", c.cfl);
    number("grid.margin", c.margin);
    number("grid.domain_half_width", c.domain_half_width);
    number("run.blowup_threshold", c.blowup_threshold);
    flag("run.nonlinear", c.nonlinear);
    profile("run.u0", c.u0);
    profile("run.u1", c.u1);
    integer("run.frames", c.frames);
    flag("run.keep_fields", c.keep_fields);
    number("run.support_floor", c.support_floor);
    number("run.nonlinear_dt_factor", c.nonlinear_dt_factor);
    check("run.t_max");
    return c;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Context ctx{out, err, args};

    CLI::App app{"Numerical laboratory for the generalized Tricomi equation with scale-invariant damping and mass",
                 "tricomi-lab"};
    app.set_version_flag("--version", std::string("tricomi-lab ") + TRICOMI_LAB_VERSION);
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--threads", ctx.threads, "Worker threads for sweeps and figure batches (0 = all cores)")
        ->check(CLI::NonNegativeNumber);
    app.add_flag("--stamp", ctx.stamp, "Add a UTC timestamp line to output headers");
    const std::string out_help = std::string("Output directory (default: $") + kOutDirEnv + " or ./tricomi-lab-out)";

    BesselOpts bo;
    auto* bessel = app.add_subcommand("bessel", "Evaluate K_order(z)");
    bessel->add_option("--order", bo.order, "Order (>= 0)")->required();
    bessel->add_option("--z", bo.z, "Argument (> 0)")->required();
    bessel->add_flag("--scaled", bo.scaled, "Print exp(z) K_order(z)");

    RhoOpts ro;
    auto* rho = app.add_subcommand("rho-verify", "Tabulate checks of rho(t) = t^{(mu+1)/2} K(phi_m(t))");
    rho->add_option("--m", ro.m, "Tricomi exponent m");
    rho->add_option("--mu", ro.mu, "Damping coefficient mu");
    rho->add_option("--nu", ro.nu, "Mass coefficient nu");
    rho->add_option("--t-max", ro.t_max, "Last sample time");
    rho->add_option("--samples", ro.samples, "Number of equally spaced samples");
    rho->add_option("--out", ro.out, "Also write rho_verify_*.csv into this directory");

    FigureOpts fo;
    auto* figs = app.add_subcommand("ode-figures", "Reproduce the seven F2 figures");
    figs->add_option("--fig", fo.fig, "Figure number 1..7");
    figs->add_flag("--all", fo.all, "All seven figures");
    figs->add_option("--out", fo.out, out_help);

    OdeRunOpts oo;
    auto* ode = app.add_subcommand("ode-run", "Integrate the F1 equation for custom parameters");
    ode->add_option("--m", oo.m, "Tricomi exponent m");
    ode->add_option("--mu", oo.mu, "Damping coefficient mu");
    ode->add_option("--nu", oo.nu, "Mass coefficient nu");
    ode->add_option("--f1", oo.f1, "F1(1) > 0");
    ode->add_option("--f1p", oo.f1p, "F1'(1) > 0");
    ode->add_option("--t-end", oo.t_end, "Final time");
    ode->add_option("--rel-tol", oo.rel_tol, "Relative tolerance");
    ode->add_option("--abs-tol", oo.abs_tol, "Absolute tolerance (scaled by the data size)");
    ode->add_option("--samples", oo.samples, "Output samples");
    ode->add_option("--name", oo.name, "Output file stem");
    ode->add_option("--out", oo.out, out_help);

    PdeOpts po;
    auto* pde_run = app.add_subcommand("pde-run", "Simulate the 1-D semilinear problem");
    pde_run->add_option("--config", po.config, "Config file")->required();
    pde_run->add_option("--out", po.out, out_help);

    PdeOpts so;
    auto* sweep = app.add_subcommand("lifespan-sweep", "Blow-up times over a list of eps and a power-law fit");
    sweep->add_option("--config", so.config, "Config file")->required();
    sweep->add_option("--eps", so.eps, "Comma-separated eps list (overrides [sweep] eps)");
    sweep->add_option("--out", so.out, out_help);

    ReportOpts rep;
    auto* report = app.add_subcommand("report", "Summarise outputs into report.md");
    report->add_option("--in", rep.in, "Directory holding earlier outputs");
    report->add_option("--out", rep.out, "Markdown file (default: <in>/report.md)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return kExitOk;
        }
        err << "tricomi-lab: usage error: " << e.what() << '\n';
        return kExitConfig;
    }

    try {
        if (bessel->parsed()) return cmd_bessel(ctx, bo);
        if (rho->parsed()) return cmd_rho_verify(ctx, ro);
        if (figs->parsed()) return cmd_ode_figures(ctx, fo);
        if (ode->parsed()) return cmd_ode_run(ctx, oo);
        if (pde_run->parsed()) return cmd_pde_run(ctx, po);
        if (sweep->parsed()) return cmd_lifespan_sweep(ctx, so);
        if (report->parsed()) return cmd_report(ctx, rep);
    } catch (const ConfigError& e) {
        err << "tricomi-lab: config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "tricomi-lab: " << ctx.stage << " failed: " << e.what() << '\n';
        return kExitRuntime;
    }
    err << "tricomi-lab: no subcommand\n";
    return kExitConfig;
}

int run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace tricomi::cli
