// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "gridppp/distributions.hpp"
#include "gridppp/lattice.hpp"
#include "gridppp/model.hpp"
#include "gridppp/quadrature.hpp"
#include "gridppp/special.hpp"

namespace gridppp {

enum class CovMethod { Exact, Lower, Upper, PppLimit, Mc };

inline const char* to_string(CovMethod m) {
    switch (m) {
        case CovMethod::Exact: return "exact";
        case CovMethod::Lower: return "lower";
        case CovMethod::Upper: return "upper";
        case CovMethod::PppLimit: return "ppp_limit";
        case CovMethod::Mc: return "mc";
    }
    return "?";
}

/// Normalized coverage query: the SIR coverage probability depends on the
/// model only through (rho_lambda, eta, alpha, T) — absolute densities and
/// powers never enter (scale invariance under power-law path loss).
struct CoverageQuery {
    double rho_lambda;
    double eta = 1.0;
    double alpha = 4.0;
    SirThreshold t;
    LatticeWindow win{0, 1e-8};          // 0 -> coverage default (n = 16)
    QuadratureSpec quad{1e-5, 1e-5, 4000};

    CoverageQuery(double rho_lambda_, double eta_, double alpha_, SirThreshold t_)
        : rho_lambda(rho_lambda_), eta(eta_), alpha(alpha_), t(t_) {
        if (rho_lambda < 0.0)
            throw std::invalid_argument("CoverageQuery: rho_lambda must be >= 0");
        if (!(eta > 0.0))
            throw std::invalid_argument("CoverageQuery: eta must be > 0");
        if (!(alpha > 2.0))
            throw std::invalid_argument("CoverageQuery: alpha must be > 2");
    }
};

struct CoverageResult {
    double p_cov;
    CovMethod method;
    double grid_term;  ///< joint probability of coverage and grid association
    double ppp_term;   ///< joint probability of coverage and PPP association
    double error_bound;  ///< certified quadrature + lattice-truncation error
};

namespace coverage_detail {

struct Engine {
    double rho_l, eta, alpha, T;
    double eta_r;    // eta^(1/alpha)
    double phiT;     // Phi_alpha(T^(-1/alpha))
    double A1, A2;   // PPP Laplace exponents per nu^2 / rhat^2
    lattice::PowKernel pk;
    lattice::TailCoeffs coeffs;
    lattice::Grid grid;
    double L;
    CovMethod method;
    int upper_k;  // product window half-width for the upper bound
    lattice::Grid upper_grid;
    QuadratureSpec quad;

    Engine(const CoverageQuery& q, CovMethod m, int upper_window_k)
        : rho_l(q.rho_lambda),
          eta(q.eta),
          alpha(q.alpha),
          T(q.t.t_linear),
          eta_r(std::pow(q.eta, 1.0 / q.alpha)),
          phiT(lattice::phi_alpha(std::pow(q.t.t_linear, -1.0 / q.alpha), q.alpha)),
          A1(2.0 * constants::pi * q.rho_lambda *
             std::pow(q.t.t_linear * q.eta, 2.0 / q.alpha) * 0.0),
          A2(0.0),
          pk(q.alpha),
          coeffs(q.alpha),
          grid(q.win.n > 0 ? q.win.n : 16),
          L(0.0),
          method(m),
          upper_k(upper_window_k),
          upper_grid(std::max(0, upper_window_k)),
          quad(q.quad) {
        A1 = 2.0 * constants::pi * rho_l * std::pow(T * eta, 2.0 / alpha) * phiT;
        A2 = 2.0 * constants::pi * rho_l * std::pow(T, 2.0 / alpha) * phiT;
        L = grid.boundary();
    }

    /// Grid-interference log-exponent (plus error-bound channel) at shift
    /// u with factor scale c, for the active method.
    Val2 grid_factor(double ux, double uy, double c, bool include_zero) const {
        switch (method) {
            case CovMethod::Lower: {
                const double lin = grid.sum_linear(ux, uy, c, pk, include_zero);
                const double t_hi =
                    lattice::tail_sum_upper_linear(c, alpha, grid.n());
                return {std::exp(-(lin + t_hi)), 0.0};
            }
            case CovMethod::Upper: {
                const double s =
                    upper_k < 0 ? 0.0
                                : upper_grid.sum_log1p(ux, uy, c, pk, include_zero);
                return {std::exp(-s), 0.0};
            }
            default: {
                double resid = 0.0;
                const double near = grid.sum_log1p(ux, uy, c, pk, include_zero);
                const double tail =
                    lattice::tail_integral_log(c, alpha, L, coeffs, &resid);
                const double v = std::exp(-(near + tail));
                const double eb =
                    lattice::midpoint_bound(c, alpha, L, coeffs) + resid;
                return {v, v * std::min(1.0, std::expm1(std::min(40.0, eb)))};
            }
        }
    }

    /// Grid-association term: 8-fold polar integral over the central cell.
    QuadResult2 term1() const {
        QuadratureSpec inner = quad;
        inner.abs_tol = quad.abs_tol / 8.0;
        auto theta_f = [this, inner](double th) {
            const double ct = std::cos(th), st = std::sin(th);
            const double rm = 0.5 / ct;
            auto r_f = [this, ct, st](double r) {
                const double c_g = T * std::pow(r, alpha);
                Val2 g = grid_factor(r * ct, r * st, c_g, false);
                const double ppp =
                    std::exp(-(constants::pi * rho_l *
                                   std::pow(eta, 2.0 / alpha) +
                               A1) *
                             r * r);
                return Val2{g.v * ppp * r, g.e * ppp * r};
            };
            auto res = integrate2(r_f, 0.0, rm, inner);
            return Val2{res.value.v, res.value.e + res.err};
        };
        auto outer = integrate2(theta_f, 0.0, constants::pi / 4.0, quad);
        return {{8.0 * outer.value.v, 8.0 * outer.value.e}, 8.0 * outer.err};
    }

    /// Region integral over the central cell minus the grid exclusion ball
    /// of the full grid-interference product (serving point is PPP).
    Val2 region_integral(double re, double c_g, double* quad_err) const {
        QuadratureSpec th_spec = quad;
        th_spec.abs_tol = quad.abs_tol / 4.0;
        QuadratureSpec r_spec = quad;
        r_spec.abs_tol = quad.abs_tol / 16.0;
        auto theta_f = [this, re, c_g, r_spec](double th) {
            const double ct = std::cos(th), st = std::sin(th);
            const double rm = 0.5 / ct;
            const double lo = std::min(re, rm);
            if (lo >= rm) return Val2{0.0, 0.0};
            auto r_f = [this, ct, st, c_g](double r) {
                Val2 g = grid_factor(r * ct, r * st, c_g, true);
                return Val2{g.v * r, g.e * r};
            };
            auto res = integrate2(r_f, lo, rm, r_spec);
            return Val2{res.value.v, res.value.e + res.err};
        };
        auto outer = integrate2(theta_f, 0.0, constants::pi / 4.0, th_spec);
        if (quad_err) *quad_err = 8.0 * outer.err;
        return {8.0 * outer.value.v, 8.0 * outer.value.e};
    }

    /// PPP-association term: serving-distance integral against the region
    /// integral and the PPP interference transform.
    QuadResult2 term2() const {
        if (rho_l == 0.0) return {{0.0, 0.0}, 0.0};
        const double rmax = eta_r / constants::sqrt2;
        auto outer_f = [this](double rhat) {
            if (rhat <= 0.0) return Val2{0.0, 0.0};
            const double f = 2.0 * constants::pi * rho_l * rhat *
                             std::exp(-constants::pi * rho_l * rhat * rhat);
            const double lp = std::exp(-A2 * rhat * rhat);
            const double weight = f * lp;
            if (weight < 1e-300) return Val2{0.0, 0.0};
            const double re = rhat / eta_r;
            const double c_g = T * std::pow(rhat, alpha) / eta;
            if (method == CovMethod::Lower) {
                const double nu2 = 1.0 - grid_nearest_cdf(re, 1.0);
                if (nu2 <= 0.0) return Val2{0.0, 0.0};
                const double J = lattice::j_radial(re, c_g, alpha);
                const double R =
                    nu2 * std::exp(-2.0 * constants::pi * J / nu2);
                return Val2{weight * R, 0.0};
            }
            double qerr = 0.0;
            Val2 R = region_integral(re, c_g, &qerr);
            return Val2{weight * R.v, weight * (R.e + qerr)};
        };
        // Split at the radius where the exclusion disc starts escaping the
        // cell (kink in the region geometry).
        const double split = std::min(0.5 * eta_r, rmax);
        auto part1 = integrate2(outer_f, 0.0, split, quad);
        QuadResult2 part2{{0.0, 0.0}, 0.0};
        if (split < rmax) part2 = integrate2(outer_f, split, rmax, quad);
        return {{part1.value.v + part2.value.v, part1.value.e + part2.value.e},
                part1.err + part2.err};
    }
};

}  // namespace coverage_detail

inline CoverageResult coverage_eval(const CoverageQuery& q, CovMethod method,
                                    int upper_window_k = 0) {
    coverage_detail::Engine eng(q, method, upper_window_k);
    auto t1 = eng.term1();
    auto t2 = eng.term2();
    CoverageResult res;
    res.grid_term = t1.value.v;
    res.ppp_term = t2.value.v;
    res.p_cov = std::clamp(res.grid_term + res.ppp_term, 0.0, 1.0);
    res.method = method;
    res.error_bound = t1.value.e + t1.err + t2.value.e + t2.err;
    return res;
}

/// Exact coverage probability (Rayleigh fading, max-mean-power association).
inline CoverageResult coverage_exact(const CoverageQuery& q) {
    return coverage_eval(q, CovMethod::Exact);
}

/// Certified lower bound (linearized grid exponent with tail cap; Jensen
/// bound for the PPP-association region average).
inline CoverageResult coverage_lower(const CoverageQuery& q) {
    return coverage_eval(q, CovMethod::Lower);
}

/// Upper bound: grid interference truncated to the spatial window
/// W = [-(2k+1)s/2, (2k+1)s/2]^2; k = 0 keeps only the strongest (central
/// cell) grid interference.
inline CoverageResult coverage_upper(const CoverageQuery& q, int window_k = 0) {
    if (window_k < 0)
        throw std::invalid_argument("coverage_upper: window_k must be >= 0");
    return coverage_eval(q, CovMethod::Upper, window_k);
}

/// Pure-PPP nearest-point coverage probability (the rho_lambda -> inf
/// limit): 1 / (1 + T^(2/alpha) integral_{T^(-2/alpha)}^inf du/(1+u^(alpha/2))).
inline double coverage_ppp_closed_form(double t_linear, double alpha,
                                       QuadratureSpec spec = {1e-10, 1e-10, 4000}) {
    if (!(t_linear > 0.0) || !(alpha > 2.0))
        throw std::invalid_argument("coverage_ppp_closed_form: bad parameters");
    const double a = std::pow(t_linear, -2.0 / alpha);
    const double integral =
        integrate_to_inf(
            [alpha](double u) { return 1.0 / (1.0 + std::pow(u, alpha / 2.0)); },
            a, spec)
            .value;
    return 1.0 / (1.0 + std::pow(t_linear, 2.0 / alpha) * integral);
}

struct CoverageCurveRow {
    double t_db;
    CoverageResult result;
};

/// Evaluate a coverage curve over a threshold grid (dB values, ascending).
/// Thresholds are independent; with threads > 1 they are evaluated
/// concurrently with results identical to sequential evaluation.
inline std::vector<CoverageCurveRow> coverage_curve(
    const CoverageQuery& proto, const std::vector<double>& t_db_grid,
    CovMethod method = CovMethod::Exact, int upper_window_k = 0,
    int threads = 1) {
    std::vector<CoverageCurveRow> rows(t_db_grid.size());
    auto work = [&](std::size_t begin, std::size_t stride) {
        for (std::size_t i = begin; i < t_db_grid.size(); i += stride) {
            CoverageQuery q(proto.rho_lambda, proto.eta, proto.alpha,
                            SirThreshold::from_db(t_db_grid[i]));
            q.win = proto.win;
            q.quad = proto.quad;
            rows[i] = {t_db_grid[i], coverage_eval(q, method, upper_window_k)};
        }
    };
    if (threads <= 1 || t_db_grid.size() <= 1) {
        work(0, 1);
    } else {
        const std::size_t nt =
            std::min<std::size_t>(threads, t_db_grid.size());
        std::vector<std::thread> pool;
        for (std::size_t k = 0; k < nt; ++k)
            pool.emplace_back(work, k, nt);
        for (auto& th : pool) th.join();
    }
    return rows;
}

}  // namespace gridppp
