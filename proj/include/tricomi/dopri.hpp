#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "tricomi/errors.hpp"

namespace tricomi::ode {

/// Dormand-Prince 5(4) with the standard 4th-order continuous extension.
template <std::size_t N>
using State = std::array<double, N>;

struct Tolerances {
    double rel = 1e-9;
    double abs = 1e-12;
};

template <std::size_t N>
struct DenseStep {
    double t0 = 0.0;
    double h = 0.0;
    std::array<State<N>, 5> coeff{};
};

/// Piecewise interpolant over the accepted steps of one integration.
template <std::size_t N>
class DenseOutput {
public:
    void push(const DenseStep<N>& s) { steps_.push_back(s); }
    bool empty() const noexcept { return steps_.empty(); }
    std::size_t size() const noexcept { return steps_.size(); }
    double t_begin() const { return steps_.front().t0; }
    double t_end() const { return steps_.back().t0 + steps_.back().h; }

    State<N> operator()(double t) const {
        auto it = std::upper_bound(steps_.begin(), steps_.end(), t,
                                   [](double v, const DenseStep<N>& s) { return v < s.t0; });
        if (it != steps_.begin()) --it;
        const DenseStep<N>& s = *it;
        const double th = (t - s.t0) / s.h;
        const double th1 = 1.0 - th;
        State<N> y;
        for (std::size_t i = 0; i < N; ++i) {
            const auto& c = s.coeff;
            y[i] = c[0][i] + th * (c[1][i] + th1 * (c[2][i] + th * (c[3][i] + th1 * c[4][i])));
        }
        return y;
    }

private:
    std::vector<DenseStep<N>> steps_;
};

struct StepStats {
    long accepted = 0;
    long rejected = 0;
};

/// Integrates y' = f(t, y) from t0 to t1 (t1 > t0). Returns the final state
/// and fills dense (if non-null). scale multiplies the absolute tolerance so
/// that the step sequence is invariant under y -> lambda y for linear f.
/// Throws StiffnessError when the step size collapses.
template <std::size_t N, class F>
State<N> integrate(F&& f, double t0, double t1, State<N> y, Tolerances tol,
                   DenseOutput<N>* dense = nullptr, StepStats* stats = nullptr,
                   double scale = 1.0, long max_steps = 20'000'000) {
    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                     a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                     a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                     a75 = -2187.0 / 6784, a76 = 11.0 / 84;
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                     e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
    constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                     d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                     d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

    const double atol = tol.abs * scale;
    auto combine = [](const State<N>& base, double h,
                      std::initializer_list<std::pair<double, const State<N>*>> terms) {
        State<N> out = base;
        for (const auto& [c, k] : terms) {
            if (c == 0.0) continue;
            for (std::size_t i = 0; i < N; ++i) out[i] += h * c * (*k)[i];
        }
        return out;
    };

    double t = t0;
    State<N> k1 = f(t, y);
    double h = std::min(1e-2, (t1 - t0) / 100.0);
    const double h_floor = 1e-13 * std::max(1.0, std::abs(t1));
    StepStats local;

    while (t < t1) {
        if (local.accepted + local.rejected >= max_steps) {
            throw StiffnessError("ode: step budget exhausted at t = " + std::to_string(t), t);
        }
        if (t + h > t1) h = t1 - t;
        const State<N> k2 = f(t + c2 * h, combine(y, h, {{a21, &k1}}));
        const State<N> k3 = f(t + c3 * h, combine(y, h, {{a31, &k1}, {a32, &k2}}));
        const State<N> k4 = f(t + c4 * h, combine(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
        const State<N> k5 =
            f(t + c5 * h, combine(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
        const State<N> k6 = f(
            t + h, combine(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
        const State<N> y1 = combine(
            y, h, {{a71, &k1}, {a73, &k3}, {a74, &k4}, {a75, &k5}, {a76, &k6}});
        const State<N> k7 = f(t + h, y1);

        double err = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                  e6 * k6[i] + e7 * k7[i]);
            const double sc = atol + tol.rel * std::max(std::abs(y[i]), std::abs(y1[i]));
            err += (e / sc) * (e / sc);
        }
        err = std::sqrt(err / N);

        if (!std::isfinite(err)) {
            ++local.rejected;
            h *= 0.1;
        } else if (err <= 1.0) {
            if (dense) {
                DenseStep<N> s;
                s.t0 = t;
                s.h = h;
                for (std::size_t i = 0; i < N; ++i) {
                    const double diff = y1[i] - y[i];
                    const double bspl = h * k1[i] - diff;
                    s.coeff[0][i] = y[i];
                    s.coeff[1][i] = diff;
                    s.coeff[2][i] = bspl;
                    s.coeff[3][i] = diff - h * k7[i] - bspl;
                    s.coeff[4][i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] +
                                         d6 * k6[i] + d7 * k7[i]);
                }
                dense->push(s);
            }
            t = (t1 - (t + h) <= 1e-15 * std::abs(t1)) ? t1 : t + h;
            y = y1;
            k1 = k7;
            ++local.accepted;
            h *= std::min(5.0, std::max(0.2, 0.9 * std::pow(std::max(err, 1e-10), -0.2)));
        } else {
            ++local.rejected;
            h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
        }
        if (h < h_floor && t < t1) {
            throw StiffnessError("ode: step size underflow at t = " + std::to_string(t), t);
        }
    }
    if (stats) {
        stats->accepted += local.accepted;
        stats->rejected += local.rejected;
    }
    return y;
}

}  // namespace tricomi::ode
