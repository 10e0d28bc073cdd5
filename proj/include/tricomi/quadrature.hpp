#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "tricomi/errors.hpp"

namespace tricomi::quad {

struct Result {
    double value = 0.0;
    double error = 0.0;
    int intervals = 0;
    bool converged = false;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15 tables).
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F>
Segment kronrod15(F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double kron = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        const double sum = f(c - dx) + f(c + dx);
        kron += kWgk[j] * sum;
        if (j % 2 == 1) gauss += kWg[j / 2] * sum;
    }
    return {a, b, kron * h, std::abs((kron - gauss) * h)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) on [a, b]. Bisects the segment with
/// the largest error estimate until the summed estimate is below
/// max(abs_tol, rel_tol * |I|) or max_segments is reached.
template <class F>
Result adaptive(F&& f, double a, double b, double rel_tol, double abs_tol = 0.0,
                int max_segments = 4000) {
    Result res;
    if (a == b) {
        res.converged = true;
        return res;
    }
    std::priority_queue<detail::Segment> heap;
    heap.push(detail::kronrod15(f, a, b));
    double total = heap.top().value;
    double err = heap.top().error;
    int segments = 1;
    while (err > std::max(abs_tol, rel_tol * std::abs(total)) && segments < max_segments) {
        const detail::Segment worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) break;  // interval exhausted
        heap.pop();
        const detail::Segment left = detail::kronrod15(f, worst.a, mid);
        const detail::Segment right = detail::kronrod15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++segments;
    }
    // Re-sum to shed the drift accumulated by the running updates.
    total = 0.0;
    err = 0.0;
    std::vector<detail::Segment> all;
    all.reserve(heap.size());
    while (!heap.empty()) {
        all.push_back(heap.top());
        heap.pop();
    }
    for (auto it = all.rbegin(); it != all.rend(); ++it) {
        total += it->value;
        err += it->error;
    }
    res.value = total;
    res.error = err;
    res.intervals = segments;
    res.converged = err <= std::max(abs_tol, rel_tol * std::abs(total)) ||
                    err <= 64.0 * 2.2e-16 * std::abs(total);
    return res;
}

/// As adaptive(), but throws QuadratureError when the tolerance is not met.
template <class F>
double adaptive_checked(F&& f, double a, double b, double rel_tol, double abs_tol = 0.0,
                        const char* what = "quadrature") {
    const Result r = adaptive(std::forward<F>(f), a, b, rel_tol, abs_tol);
    if (!r.converged) {
        throw QuadratureError(std::string(what) + ": adaptive quadrature did not converge");
    }
    return r.value;
}

}  // namespace tricomi::quad
