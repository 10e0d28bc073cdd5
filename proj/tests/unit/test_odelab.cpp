#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numbers>
#include <vector>

#include "tricomi/dopri.hpp"
#include "tricomi/errors.hpp"
#include "tricomi/io.hpp"
#include "tricomi/odelab.hpp"

using namespace tricomi;
using namespace tricomi::odelab;

namespace {

std::filesystem::path scratch_dir(const char* name) {
    auto dir = std::filesystem::temp_directory_path() / "tricomi_lab_tests" / name;
    std::filesystem::remove_all(dir);
    return dir;
}

int changes_in(const SignSummary& s, double lo, double hi) {
    int n = 0;
    for (double c : s.crossings) n += (c >= lo && c <= hi);
    return n;
}

}  // namespace

TEST_CASE("dopri5 solves y' = -y and y'' = -y") {
    const auto y = ode::integrate<1>([](double, const ode::State<1>& s) { return ode::State<1>{-s[0]}; },
                                     0.0, 5.0, {1.0}, {1e-11, 1e-14});
    CHECK(y[0] == doctest::Approx(std::exp(-5.0)).epsilon(1e-9));

    ode::DenseOutput<2> dense;
    const auto z = ode::integrate<2>(
        [](double, const ode::State<2>& s) { return ode::State<2>{s[1], -s[0]}; }, 0.0, 10.0, {0.0, 1.0},
        {1e-11, 1e-14}, &dense);
    CHECK(z[0] == doctest::Approx(std::sin(10.0)).epsilon(1e-8));
    for (double t : {0.3, 2.71, 5.5, 9.99}) {
        CHECK(dense(t)[0] == doctest::Approx(std::sin(t)).scale(1.0).epsilon(1e-8));
    }
}

TEST_CASE("dopri5 reports step collapse as a stiffness failure") {
    auto singular = [](double t, const ode::State<1>&) { return ode::State<1>{1.0 / ((2.0 - t) * (2.0 - t))}; };
    try {
        ode::integrate<1>(singular, 1.0, 3.0, {0.0}, {});
        FAIL("expected StiffnessError");
    } catch (const StiffnessError& e) {
        CHECK(e.time() == doctest::Approx(2.0).epsilon(1e-3));
    }
}

TEST_CASE("figure 1: F2 positive at every sample") {
    const auto traj = integrate_f1(figure_config(1));
    REQUIRE(traj.times.size() == 2001);
    CHECK(traj.times.front() == 1.0);
    CHECK(traj.times.back() == 10.0);
    for (double v : traj.f2) REQUIRE(v > 0.0);
    CHECK(traj.summary.min_f2 > 0.0);
    CHECK(traj.summary.sign_changes == 0);
    REQUIRE(traj.summary.eventual_positive_time);
    CHECK(*traj.summary.eventual_positive_time == 1.0);
}

TEST_CASE("figure 4: oscillations near the initial time") {
    const auto traj = integrate_f1(figure_config(4));
    CHECK(traj.summary.sign_changes >= 2);
    CHECK(changes_in(traj.summary, 1.0, 3.0) >= 2);
}

TEST_CASE("figures 5-7: large F1(1) deepens the negative dip") {
    const auto big_f1 = integrate_f1(figure_config(7));
    const auto big_f1p = integrate_f1(figure_config(6));
    CHECK(figure_config(7).f1_init == 100.0);
    CHECK(figure_config(6).f1p_init == 100.0);
    CHECK(big_f1.summary.min_f2 < 0.0);
    CHECK(big_f1.summary.min_f2 < big_f1p.summary.min_f2);
}

TEST_CASE("figure 2: F2 is eventually positive") {
    const auto traj = integrate_f1(figure_config(2));
    REQUIRE(traj.summary.eventual_positive_time);
    CHECK(*traj.summary.eventual_positive_time < 10.0);
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        if (traj.times[k] > *traj.summary.eventual_positive_time + 1e-6) REQUIRE(traj.f2[k] > 0.0);
    }
}

TEST_CASE("F2 = F1' + t^m F1 exactly at every sample") {
    for (int fig = 1; fig <= 7; ++fig) {
        const auto traj = integrate_f1(figure_config(fig));
        for (std::size_t k = 0; k < traj.times.size(); ++k) {
            REQUIRE(traj.f2[k] == traj.f1p[k] + std::pow(traj.times[k], 3.0) * traj.f1[k]);
            if (k > 0) REQUIRE(traj.times[k] > traj.times[k - 1]);
        }
    }
}

TEST_CASE("linearity: scaled data scales the trajectory") {
    for (int fig : {2, 4, 5}) {
        auto base = figure_config(fig);
        auto scaled = base;
        scaled.f1_init *= 10.0;
        scaled.f1p_init *= 10.0;
        const auto a = integrate_f1(base);
        const auto b = integrate_f1(scaled);
        REQUIRE(a.stats.accepted == b.stats.accepted);
        double peak = 0.0;
        for (double v : a.f2) peak = std::max(peak, std::abs(v));
        for (std::size_t k = 0; k < a.f2.size(); ++k) {
            REQUIRE(std::abs(b.f2[k] - 10.0 * a.f2[k]) <= 1e-13 * 10.0 * peak);
        }
        CHECK(a.summary.sign_changes == b.summary.sign_changes);
        REQUIRE(a.summary.eventual_positive_time.has_value() == b.summary.eventual_positive_time.has_value());
        if (a.summary.eventual_positive_time) {
            CHECK(*a.summary.eventual_positive_time == doctest::Approx(*b.summary.eventual_positive_time).epsilon(1e-9));
        }
    }
}

TEST_CASE("self-convergence under tolerance halving") {
    for (int fig : {1, 2, 3, 4}) {
        auto c = figure_config(fig);
        const auto coarse = integrate_f1(c);
        c.rel_tol *= 0.5;
        c.abs_tol *= 0.5;
        const auto fine = integrate_f1(c);
        const double diff = std::abs(coarse.f2.back() - fine.f2.back());
        // F2(10) is tiny; measure against the solution scale.
        double scale = 0.0;
        for (double v : fine.f2) scale = std::max(scale, std::abs(v));
        CHECK(diff <= 10.0 * 1e-9 * scale);
    }
}

TEST_CASE("dense output agrees with re-integration to the sample") {
    const auto cfg = figure_config(4);
    const auto traj = integrate_f1(cfg);
    const double mu = 10.0, nu2 = 1600.0, m = 3.0;
    auto rhs = [&](double t, const ode::State<2>& y) -> ode::State<2> {
        const double tm = std::pow(t, m);
        return {y[1], -(mu / t + 2.0 * tm) * y[1] - ((m + mu) * tm / t + nu2 / (t * t)) * y[0]};
    };
    double scale = 0.0;
    for (double v : traj.f1p) scale = std::max(scale, std::abs(v));
    for (double t : {1.05, 1.37, 1.9, 2.5, 4.2}) {
        const auto y = ode::integrate<2>(rhs, 1.0, t, {1.0, 1.0}, {cfg.rel_tol, cfg.abs_tol});
        const auto d = traj.dense(t);
        CHECK(std::abs(y[0] - d[0]) <= 10.0 * cfg.rel_tol * scale);
        CHECK(std::abs(y[1] - d[1]) <= 10.0 * cfg.rel_tol * scale);
    }
}

TEST_CASE("sign analysis on synthetic series") {
    std::vector<double> t, v;
    for (int i = 0; i <= 4000; ++i) {
        t.push_back(1.0 + 2.0 * i / 4000.0);
        v.push_back(std::cos(10.0 * t.back()));
    }
    const auto s = sign_analysis(t, v, 1e-12);
    // roots (2k+1)pi/20 in [1, 3]: k = 3..9
    CHECK(s.sign_changes == 7);
    REQUIRE(s.crossings.size() == 7);
    for (int k = 3; k <= 9; ++k) {
        CHECK(s.crossings[k - 3] == doctest::Approx((2 * k + 1) * std::numbers::pi / 20).epsilon(1e-5));
    }
    CHECK(s.min_f2 == doctest::Approx(-1.0).epsilon(1e-5));

    std::vector<double> flat(t.size(), 0.5);
    const auto f = sign_analysis(t, flat, 1e-12);
    CHECK(f.sign_changes == 0);
    REQUIRE(f.eventual_positive_time);
    CHECK(*f.eventual_positive_time == 1.0);

    std::vector<double> neg(t.size(), -0.5);
    CHECK_FALSE(sign_analysis(t, neg, 1e-12).eventual_positive_time);
}

TEST_CASE("hysteresis ignores chatter inside the band") {
    std::vector<double> t, v;
    for (int i = 0; i < 100; ++i) {
        t.push_back(1.0 + i * 0.01);
        v.push_back(i < 50 ? 1.0 : ((i % 2) ? 1e-13 : -1e-13));
    }
    v.back() = 1.0;
    CHECK(sign_analysis(t, v, 1e-12).sign_changes == 0);
    CHECK(sign_analysis(t, v, 1e-14).sign_changes > 10);
}

TEST_CASE("config validation") {
    auto c = figure_config(1);
    c.f1_init = 0.0;
    CHECK_THROWS_AS(integrate_f1(c), ParameterError);
    c = figure_config(1);
    c.f1p_init = -1.0;
    CHECK_THROWS_AS(integrate_f1(c), ParameterError);
    c = figure_config(1);
    c.t_end = 1.0;
    CHECK_THROWS_AS(integrate_f1(c), ParameterError);
    CHECK_THROWS_AS(figure_config(0), ParameterError);
    CHECK_THROWS_AS(figure_config(8), ParameterError);
    std::vector<double> empty;
    CHECK_THROWS_AS(sign_analysis(empty, empty, 1e-12), ParameterError);
}

TEST_CASE("emit_figure writes csv and svg") {
    const auto dir = scratch_dir("odelab");
    for (int fig : {1, 3, 6}) {
        const auto cfg = figure_config(fig);
        const auto traj = integrate_f1(cfg);
        const std::string stem = "fig" + std::to_string(fig);
        emit_figure(traj, cfg, dir, stem);
        REQUIRE(std::filesystem::exists(dir / (stem + ".csv")));
        REQUIRE(std::filesystem::exists(dir / (stem + ".svg")));
        const auto table = io::read_table(dir / (stem + ".csv"));
        CHECK(table.columns == std::vector<std::string>{"t", "F1", "F1p", "F2"});
        CHECK(table.rows.size() >= 200);
        CHECK(table.rows.back()[3] == traj.f2.back());
    }
    const auto header = io::read_header(dir / "fig3.csv");
    bool saw_delta = false;
    for (const auto& [k, v] : header) {
        if (k == "delta") {
            saw_delta = true;
            CHECK(v == "0");
        }
    }
    CHECK(saw_delta);
    CHECK(header.front().first == "tool");
    const auto h6 = io::read_header(dir / "fig6.csv");
    bool saw_f1p = false;
    for (const auto& [k, v] : h6) saw_f1p |= (k == "f1p_init" && v == "100");
    CHECK(saw_f1p);

    std::filesystem::create_directories(dir / "blocker");
    std::ofstream(dir / "blocker" / "file") << "x";
    CHECK_THROWS_AS(emit_figure(integrate_f1(figure_config(1)), figure_config(1), dir / "blocker" / "file", "x"),
                    IoError);
}
