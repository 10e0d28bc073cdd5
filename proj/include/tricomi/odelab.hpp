#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tricomi/dopri.hpp"
#include "tricomi/io.hpp"
#include "tricomi/model.hpp"

namespace tricomi::odelab {

/// Linear ODE satisfied by F1(t) = \int u psi0 dx once the nonlinear term is
/// dropped:
///
///     F1'' + (mu/t + 2 t^m) F1' + ((m + mu) t^{m-1} + nu^2/t^2) F1 = 0,
///
/// with F2 = F1' + t^m F1. p, dim, radius and eps of params are unused.
struct OdeRunConfig {
    ModelParams params;
    double f1_init = 1.0;
    double f1p_init = 1.0;
    double t_end = 10.0;
    double rel_tol = 1e-9;
    /// Interpreted relative to max(F1(1), F1'(1)) so that scaling the data
    /// scales the trajectory exactly.
    double abs_tol = 1e-12;
    int samples = 2001;

    void validate() const;
};

struct SignSummary {
    double min_f2 = 0.0;
    double argmin = 1.0;
    int sign_changes = 0;
    std::vector<double> crossings;
    /// First time after which F2 stays positive up to the end of the run.
    std::optional<double> eventual_positive_time;
};

struct OdeTrajectory {
    std::vector<double> times;
    std::vector<double> f1;
    std::vector<double> f1p;
    std::vector<double> f2;
    double m = 0.0;
    double band = 0.0;  // hysteresis half-width for sign counting
    ode::DenseOutput<2> dense;
    ode::StepStats stats;
    SignSummary summary;

    /// F2 at an arbitrary time inside the run (dense output when available,
    /// linear interpolation of the samples otherwise).
    double f2_at(double t) const;
};

/// Throws ParameterError for an invalid config and StiffnessError when the
/// adaptive step collapses.
OdeTrajectory integrate_f1(const OdeRunConfig& config);

/// Counts sign changes of F2 with a +/- band hysteresis, locates each
/// crossing by bisection to 1e-8 in t, and finds the minimum and the time
/// after which F2 remains positive.
SignSummary sign_analysis(const OdeTrajectory& traj);

/// Same analysis on raw samples; crossings are refined on the linear
/// interpolant.
SignSummary sign_analysis(std::span<const double> times, std::span<const double> values, double band);

/// Configurations of the seven reference figures (1-based).
OdeRunConfig figure_config(int figure);

io::Header describe(const OdeRunConfig& config);

/// Writes <dir>/<stem>.csv (columns t,F1,F1p,F2 under a "#" header carrying
/// the config and delta) and <dir>/<stem>.svg. Throws IoError.
void emit_figure(const OdeTrajectory& traj, const OdeRunConfig& config,
                 const std::filesystem::path& dir, const std::string& stem,
                 const io::Header& extra = io::Header());

}  // namespace tricomi::odelab
