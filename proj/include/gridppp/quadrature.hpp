// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace gridppp {

/// Numeric-control knobs for adaptive quadrature.
struct QuadratureSpec {
    double abs_tol = 1e-9;
    double rel_tol = 1e-9;
    int max_intervals = 4000;  ///< refinement limit (interval count)

    void validate() const {
        if (!(abs_tol > 0.0))
            throw std::invalid_argument("QuadratureSpec: abs_tol must be > 0");
        if (max_intervals < 1)
            throw std::invalid_argument("QuadratureSpec: max_intervals must be >= 1");
    }
};

/// Thrown when adaptive refinement cannot reach the requested tolerance.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double achieved, double partial)
        : std::runtime_error(what + " (achieved tolerance " +
                             std::to_string(achieved) + ")"),
          achieved_tolerance(achieved),
          partial_value(partial) {}
    double achieved_tolerance;
    double partial_value;
};

/// Two-component value: `v` is the quantity being integrated, `e` is a
/// companion non-negative error-density channel integrated alongside it
/// (used to propagate certified lattice-truncation error through nested
/// integrals). Adaptivity is driven by `v` only.
struct Val2 {
    double v = 0.0;
    double e = 0.0;
};

struct QuadResult2 {
    Val2 value;
    double err;  ///< quadrature error estimate on the v-component
};

struct QuadResult {
    double value;
    double err;
};

namespace quad_detail {

// 15-point Kronrod / 7-point Gauss rule (QUADPACK DQK15 constants).
inline constexpr double xgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
inline constexpr double wgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
inline constexpr double wg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct Segment {
    double a, b;
    Val2 val;
    double err;
    bool operator<(const Segment& o) const { return err < o.err; }
};

template <class F>
Segment gk15(F&& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    Val2 fc = f(c);
    double resk_v = wgk[7] * fc.v;
    double resk_e = wgk[7] * fc.e;
    double resg_v = wg[3] * fc.v;
    for (int j = 0; j < 7; ++j) {
        const double dx = h * xgk[j];
        Val2 f1 = f(c - dx);
        Val2 f2 = f(c + dx);
        resk_v += wgk[j] * (f1.v + f2.v);
        resk_e += wgk[j] * (f1.e + f2.e);
        if (j % 2 == 1) resg_v += wg[j / 2] * (f1.v + f2.v);
    }
    Segment s;
    s.a = a;
    s.b = b;
    s.val = {resk_v * h, resk_e * h};
    const double diff = std::fabs((resk_v - resg_v) * h);
    double err = diff;
    if (diff > 0.0) {
        const double scaled = std::pow(200.0 * diff, 1.5);
        if (scaled < diff) err = scaled;
    }
    err = std::max(err, std::numeric_limits<double>::epsilon() * 50.0 *
                            std::fabs(s.val.v));
    s.err = err;
    return s;
}

}  // namespace quad_detail

/// Adaptive Gauss–Kronrod integration of a Val2-valued integrand on [a,b].
template <class F>
QuadResult2 integrate2(F&& f, double a, double b, QuadratureSpec spec = {}) {
    spec.validate();
    if (a == b) return {{0.0, 0.0}, 0.0};
    std::priority_queue<quad_detail::Segment> heap;
    heap.push(quad_detail::gk15(f, a, b));
    double tot_v = heap.top().val.v;
    double tot_e = heap.top().val.e;
    double tot_err = heap.top().err;
    int count = 1;
    while (true) {
        const double tol =
            std::max(spec.abs_tol, spec.rel_tol * std::fabs(tot_v));
        if (tot_err <= tol) break;
        if (count >= spec.max_intervals)
            throw QuadratureError("adaptive quadrature did not converge",
                                  tot_err, tot_v);
        quad_detail::Segment worst = heap.top();
        heap.pop();
        tot_v -= worst.val.v;
        tot_e -= worst.val.e;
        tot_err -= worst.err;
        const double mid = 0.5 * (worst.a + worst.b);
        for (const auto& half : {quad_detail::gk15(f, worst.a, mid),
                                 quad_detail::gk15(f, mid, worst.b)}) {
            tot_v += half.val.v;
            tot_e += half.val.e;
            tot_err += half.err;
            heap.push(half);
        }
        ++count;
    }
    return {{tot_v, tot_e}, tot_err};
}

/// Adaptive integration of a scalar integrand on [a,b].
template <class F>
QuadResult integrate(F&& f, double a, double b, QuadratureSpec spec = {}) {
    auto r = integrate2([&f](double x) { return Val2{f(x), 0.0}; }, a, b, spec);
    return {r.value.v, r.err};
}

/// Adaptive integration of a scalar integrand on [a, +inf), via the
/// rational substitution x = a + t/(1-t) on t in (0,1).
template <class F>
QuadResult integrate_to_inf(F&& f, double a, QuadratureSpec spec = {}) {
    auto g = [&f, a](double t) {
        const double om = 1.0 - t;
        const double x = a + t / om;
        return f(x) / (om * om);
    };
    return integrate(g, 0.0, 1.0, spec);
}

}  // namespace gridppp
