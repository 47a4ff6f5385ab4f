// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

#include "gridppp/distributions.hpp"
#include "gridppp/lattice.hpp"
#include "gridppp/quadrature.hpp"
#include "gridppp/special.hpp"

namespace gridppp {

/// Result of an interference Laplace-transform evaluation: value in (0,1]
/// plus a certified bound on the error introduced by lattice truncation
/// (zero for the closed-form PPP transform and for one-sided bounds).
struct LaplaceValue {
    double value;
    double truncation_error_bound;
};

/// Laplace transform at xi of the interference from a PPP of intensity
/// lambda_p, transmit power p_p, outside an exclusion ball of radius
/// r_excl, under unit-mean exponential fading:
/// exp(-2 pi lambda_p * integral_{r_excl}^inf (p_p xi u^(1-alpha)) /
/// (1 + p_p xi u^(-alpha)) du).
inline LaplaceValue laplace_ppp_excl(double xi, double r_excl, double lambda_p,
                                     double p_p, double alpha) {
    if (xi < 0.0 || r_excl < 0.0 || lambda_p < 0.0)
        throw std::invalid_argument("laplace_ppp_excl: negative argument");
    if (!(alpha > 2.0))
        throw std::invalid_argument("laplace_ppp_excl: alpha must be > 2");
    if (xi == 0.0 || lambda_p == 0.0) return {1.0, 0.0};
    const double expo =
        2.0 * constants::pi * lambda_p * lattice::c_times_m(p_p * xi, r_excl, alpha);
    return {std::exp(-expo), 0.0};
}

namespace interference_detail {

struct NormalizedGridProblem {
    double c;  // xi * p_g * s^(-alpha), pitch-1 units
    double alpha;
    lattice::PowKernel pk;
    lattice::TailCoeffs coeffs;

    NormalizedGridProblem(double xi, double s, double p_g, double alpha_)
        : c(xi * p_g * std::pow(s, -alpha_)),
          alpha(alpha_),
          pk(alpha_),
          coeffs(alpha_) {
        if (xi < 0.0) throw std::invalid_argument("negative xi");
        if (!(s > 0.0) || !(p_g > 0.0))
            throw std::invalid_argument("s and p_g must be > 0");
        if (!(alpha_ > 2.0)) throw std::invalid_argument("alpha must be > 2");
    }

    int resolve_window(const LatticeWindow& win) const {
        if (win.n > 0) return win.n;
        return lattice::auto_window(c, alpha, win.tail_target);
    }
};

}  // namespace interference_detail

/// Laplace transform of grid interference conditioned on grid association
/// with realized (absolute-units) shift u: product over z != 0 of
/// 1/(1 + p_g xi ||u + s z||^(-alpha)), evaluated as a truncated lattice
/// sum of log-factors plus an integral tail correction with certified
/// residual bound.
inline LaplaceValue laplace_grid_given_grid_assoc(double xi, double ux, double uy,
                                                  double s, double p_g,
                                                  double alpha,
                                                  LatticeWindow win = {}) {
    if (std::fabs(ux) > s / 2.0 + 1e-12 || std::fabs(uy) > s / 2.0 + 1e-12)
        throw std::invalid_argument(
            "laplace_grid_given_grid_assoc: u must lie in the central cell");
    interference_detail::NormalizedGridProblem prob(xi, s, p_g, alpha);
    if (prob.c == 0.0) return {1.0, 0.0};
    const int n = prob.resolve_window(win);
    lattice::Grid grid(n);
    const double L = grid.boundary();
    double resid = 0.0;
    const double near =
        grid.sum_log1p(ux / s, uy / s, prob.c, prob.pk, /*include_zero=*/false);
    const double tail =
        lattice::tail_integral_log(prob.c, alpha, L, prob.coeffs, &resid);
    const double value = std::exp(-(near + tail));
    const double bound =
        value * std::min(1.0, std::expm1(std::min(
                                  40.0, lattice::midpoint_bound(prob.c, alpha, L,
                                                                prob.coeffs) +
                                            resid)));
    return {value, bound};
}

/// Laplace transform of grid interference conditioned on PPP association
/// with serving distance implying a grid exclusion ball of radius r_excl:
/// the truncated lattice product (z = 0 included) averaged over the shift
/// uniform on the central cell minus the exclusion ball.
inline LaplaceValue laplace_grid_excl(double xi, double r_excl, double s,
                                      double p_g, double alpha,
                                      LatticeWindow win = {},
                                      QuadratureSpec quad = {1e-8, 1e-8, 4000}) {
    interference_detail::NormalizedGridProblem prob(xi, s, p_g, alpha);
    const double re = r_excl / s;
    if (re >= 1.0 / constants::sqrt2)
        throw std::domain_error(
            "laplace_grid_excl: exclusion ball covers the whole cell "
            "(impossible conditioning)");
    if (prob.c == 0.0) return {1.0, 0.0};
    const int n = prob.resolve_window(win);
    lattice::Grid grid(n);
    const double L = grid.boundary();
    double resid = 0.0;
    const double tail =
        lattice::tail_integral_log(prob.c, alpha, L, prob.coeffs, &resid);
    const double nu2 = 1.0 - grid_nearest_cdf(re, 1.0);
    QuadratureSpec inner = quad;
    inner.abs_tol = quad.abs_tol / 4.0;
    auto outer = integrate(
        [&](double th) {
            const double rm = 0.5 / std::cos(th);
            const double lo = std::min(re, rm);
            if (lo >= rm) return 0.0;
            return integrate(
                       [&](double r) {
                           const double ux = r * std::cos(th);
                           const double uyv = r * std::sin(th);
                           const double S = grid.sum_log1p(ux, uyv, prob.c,
                                                           prob.pk, true);
                           return std::exp(-(S + tail)) * r;
                       },
                       lo, rm, inner)
                .value;
        },
        0.0, constants::pi / 4.0, quad);
    const double value = 8.0 * outer.value / nu2;
    const double bound =
        value * std::min(1.0, std::expm1(std::min(
                                  40.0, lattice::midpoint_bound(prob.c, alpha, L,
                                                                prob.coeffs) +
                                            resid))) +
        8.0 * outer.err / nu2;
    return {value, bound};
}

/// Computable sandwich for laplace_grid_given_grid_assoc: lower bound from
/// the linearized exponent (full-lattice sum with a certified Hurwitz-zeta
/// cap on the omitted tail), upper bound from the pure truncated product
/// over the window.
inline std::pair<LaplaceValue, LaplaceValue> laplace_grid_bounds_assoc(
    double xi, double ux, double uy, double s, double p_g, double alpha,
    LatticeWindow win = {}) {
    interference_detail::NormalizedGridProblem prob(xi, s, p_g, alpha);
    if (prob.c == 0.0) return {{1.0, 0.0}, {1.0, 0.0}};
    const int n = win.n > 0 ? win.n : prob.resolve_window(win);
    lattice::Grid grid(n);
    const double lin =
        grid.sum_linear(ux / s, uy / s, prob.c, prob.pk, false);
    const double t_hi = lattice::tail_sum_upper_linear(prob.c, alpha, n);
    const LaplaceValue lower{std::exp(-(lin + t_hi)), 0.0};
    const double log_near =
        grid.sum_log1p(ux / s, uy / s, prob.c, prob.pk, false);
    const double upper_v = std::exp(-log_near);
    const LaplaceValue upper{upper_v, upper_v * -std::expm1(-t_hi)};
    return {lower, upper};
}

/// Computable sandwich for laplace_grid_excl: Jensen/Campbell lower bound
/// exp(-2 pi J(r_excl)/nu2) with J the radial log-integral, and the
/// windowed-product region integral as the upper bound.
inline std::pair<LaplaceValue, LaplaceValue> laplace_grid_bounds_excl(
    double xi, double r_excl, double s, double p_g, double alpha,
    LatticeWindow win = {}, QuadratureSpec quad = {1e-8, 1e-8, 4000}) {
    interference_detail::NormalizedGridProblem prob(xi, s, p_g, alpha);
    const double re = r_excl / s;
    if (re >= 1.0 / constants::sqrt2)
        throw std::domain_error(
            "laplace_grid_bounds_excl: exclusion ball covers the whole cell");
    if (prob.c == 0.0) return {{1.0, 0.0}, {1.0, 0.0}};
    const double nu2 = 1.0 - grid_nearest_cdf(re, 1.0);
    const double J = lattice::j_radial(re, prob.c, alpha);
    const LaplaceValue lower{std::exp(-2.0 * constants::pi * J / nu2), 0.0};

    const int n = win.n > 0 ? win.n : prob.resolve_window(win);
    lattice::Grid grid(n);
    QuadratureSpec inner = quad;
    inner.abs_tol = quad.abs_tol / 4.0;
    auto outer = integrate(
        [&](double th) {
            const double rm = 0.5 / std::cos(th);
            const double lo = std::min(re, rm);
            if (lo >= rm) return 0.0;
            return integrate(
                       [&](double r) {
                           const double ux = r * std::cos(th);
                           const double uyv = r * std::sin(th);
                           return std::exp(-grid.sum_log1p(ux, uyv, prob.c,
                                                           prob.pk, true)) *
                                  r;
                       },
                       lo, rm, inner)
                .value;
        },
        0.0, constants::pi / 4.0, quad);
    const double upper_v = 8.0 * outer.value / nu2;
    const double t_hi = lattice::tail_sum_upper_linear(prob.c, alpha, n);
    const LaplaceValue upper{upper_v,
                             upper_v * -std::expm1(-t_hi) + 8.0 * outer.err / nu2};
    return {lower, upper};
}

}  // namespace gridppp
