#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tricomi/io.hpp"
#include "tricomi/model.hpp"

namespace tricomi::pde {

/// Shape of one initial datum on [-R, R]. kBump is exp(-1/(1 - (x/R)^2)).
enum class Profile { kBump, kZero };

std::string to_string(Profile p);
/// Accepts "bump" or "zero"; throws ParameterError.
Profile parse_profile(const std::string& name);

double bump(double x, double radius);

/// One-dimensional Cauchy problem
///
///     u_tt - t^{2m} u_xx + (mu/t) u_t + (nu^2/t^2) u = |u_t|^p,  t >= 1,
///     u(x, 1) = eps u0(x),  u_t(x, 1) = eps u1(x),
///
/// on [-L, L] with homogeneous boundary values.
struct PdeConfig {
    ModelParams params;  // dim must be 1
    int nx = 2001;
    /// When > 0 the grid spacing is fixed and nx is derived from it.
    double dx = 0.0;
    double cfl = 0.5;
    double t_max = 10.0;
    /// Blow-up is declared once max|u_t| reaches this multiple of its initial value.
    double blowup_threshold = 1e6;
    /// L; 0 means R + phi(t_max) - phi(1) + margin.
    double domain_half_width = 0.0;
    double margin = 1.0;
    bool nonlinear = true;
    Profile u0 = Profile::kBump;
    Profile u1 = Profile::kBump;
    /// Number of equal time intervals between stored frames.
    int frames = 100;
    /// Keep u and v at every frame (needed by the functional probe).
    bool keep_fields = true;
    /// |u| below support_floor * max|u| counts as zero for support and
    /// boundary monitoring.
    double support_floor = 1e-6;
    /// Extra step limit dt <= factor / (p max|v|^{p-1}) so the source term
    /// is resolved as the solution grows.
    double nonlinear_dt_factor = 0.2;

    void validate() const;
    double half_width() const;
    int points() const;
    double spacing() const;
};

io::Header describe(const PdeConfig& config);

struct Grid {
    std::vector<double> x;
    double dx = 0.0;
};

Grid make_grid(const PdeConfig& config);

/// eps * u0 and eps * u1 on the grid.
struct InitialData {
    std::vector<double> u0;
    std::vector<double> u1;
};

/// Samples the profiles and checks ((mu - 1 - sqrt(delta))/2) u0 + u1 > 0
/// wherever the data are nonzero inside |x| < R. Throws ParameterError naming
/// the offending x, or when both data vanish.
InitialData make_initial_data(const PdeConfig& config, const Grid& grid);

struct PdeState {
    double t = 1.0;
    std::vector<double> u;
    std::vector<double> v;
};

/// Largest dt allowed at the current state (wave speed and nonlinear limits).
double stable_dt(const PdeConfig& config, const Grid& grid, const PdeState& state);

/// One classical RK4 step of the method-of-lines system.
void step(const PdeConfig& config, const Grid& grid, PdeState& state, double dt);

/// Sum (v^2 + t^{2m} (D+ u)^2) dx.
double energy(const Grid& grid, const PdeState& state, double m);

/// Largest |x| with |u| > floor * max|u|; 0 for u == 0.
double support_radius(const Grid& grid, std::span<const double> u, double floor);

/// R + phi_m(t) - phi_m(1).
double cone_radius(const ModelParams& params, double t);

enum class Termination { kBlowup, kHorizon, kBoundary };
std::string to_string(Termination t);

struct Frame {
    double t = 1.0;
    double max_u = 0.0;
    double max_v = 0.0;
    double min_u = 0.0;
    double support = 0.0;
    double energy = 0.0;
    std::vector<double> u;  // empty unless keep_fields
    std::vector<double> v;
};

struct RunRecord {
    PdeConfig config;
    Grid grid;
    InitialData data;
    std::vector<Frame> frames;
    Termination reason = Termination::kHorizon;
    double t_end = 1.0;
    std::optional<double> blowup_time;
    double reference_v = 0.0;
    long steps = 0;
    /// max over frames of (support - cone radius) / dx.
    double support_excess = 0.0;
    bool positivity_held = true;
};

/// Runs to blow-up, boundary contamination or t_max, whichever comes first.
RunRecord integrate(const PdeConfig& config);

struct BlowupReport {
    std::optional<double> time;
    Termination reason = Termination::kHorizon;
    std::string describe() const;
};

/// T(eps) from a finished run: the threshold crossing time, refined by
/// geometric interpolation between the two steps that straddle it.
BlowupReport detect_blowup(const RunRecord& run);

struct PowerFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  // RMS of the log T residuals
    int points = 0;
};

/// Least squares of log T on log(1/eps). Throws ParameterError for fewer
/// than 3 points.
PowerFit fit_power_law(std::span<const double> eps, std::span<const double> lifespan);

struct SweepEntry {
    double eps = 0.0;
    std::optional<double> lifespan;
    Termination reason = Termination::kHorizon;
    long steps = 0;
};

struct LifespanRecord {
    std::vector<SweepEntry> entries;  // eps descending
    std::optional<PowerFit> fit;
    std::string fit_error;  // why fit is empty
    LifespanExponent theory;
    /// |slope - alpha| / alpha, NaN without a fit or a power-law theory.
    double gap = 0.0;
};

/// Runs config once per eps (threads workers, 0 = hardware concurrency)
/// and fits the lifespans. Frames are not kept.
LifespanRecord lifespan_sweep(const PdeConfig& config, std::span<const double> eps, int threads = 0);

struct FunctionalSample {
    double t = 1.0;
    double f1 = 0.0;
    double f2 = 0.0;
    double g1 = 0.0;
    double g2 = 0.0;
    /// e^{phi(t) - phi(1)} rho(t) F2.
    double g2_from_f2 = 0.0;
    /// \int_1^t \int |u_t|^p psi dx ds.
    double source = 0.0;
    double g1_dot = 0.0;
    /// |G1' + Gamma G1 - source - eps C| over the largest of those terms;
    /// NaN at the first and last frame.
    double eq6_residual = 0.0;
};

struct FunctionalSeries {
    std::vector<FunctionalSample> samples;
    bool has_g = false;
    /// eps C(u0, u1) from its definition and from the Bessel-expanded form.
    double eps_c = 0.0;
    double eps_c_bessel = 0.0;

    double max_eq6_residual() const;
};

/// Trapezoid quadrature of the functionals on every stored frame. G-values
/// are NaN when delta < 0. Throws ParameterError if the run kept no fields.
FunctionalSeries functional_probe(const RunRecord& run);

/// Columns t,x,u,v for every frame that kept its fields.
void write_frames(const RunRecord& run, const std::filesystem::path& path, const io::Header& header);
/// One row of scalars per frame: t,max_u,max_v,min_u,support,cone,energy.
void write_trace(const RunRecord& run, const std::filesystem::path& path, const io::Header& header);
void write_functionals(const FunctionalSeries& series, const std::filesystem::path& path,
                       const io::Header& header);
void write_sweep(const LifespanRecord& record, const std::filesystem::path& path, const io::Header& header);
void write_fit(const LifespanRecord& record, const std::filesystem::path& path, const io::Header& header);

}  // namespace tricomi::pde
