// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: one line of output per criterion, [PASS]/[FAIL] plus a
// short factual detail. Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "gridppp/association.hpp"
#include "gridppp/coverage.hpp"
#include "gridppp/distributions.hpp"
#include "gridppp/fitting.hpp"
#include "gridppp/interference.hpp"
#include "gridppp/montecarlo.hpp"
#include "gridppp/processes.hpp"

#include "../helpers.hpp"

using namespace gridppp;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

double now_s() {
    using clock = std::chrono::steady_clock;
    static const auto t0 = clock::now();
    return std::chrono::duration<double>(clock::now() - t0).count();
}

std::string fmt(double v, int prec = 5) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    return buf;
}

// ---------------------------------------------------------------- curves
// Shared between criteria 3, 4 and 6: exact/lower/upper coverage curves and
// the matching Monte Carlo estimates on the standard threshold grid.

std::vector<double> t_db_grid() {
    std::vector<double> g;
    for (int t = -10; t <= 20; t += 2) g.push_back(static_cast<double>(t));
    return g;
}

struct ConfigCurves {
    double rho_lambda;
    double alpha;
    std::vector<CoverageCurveRow> exact, lower, upper0, upper1;
    std::vector<McEstimate> mc;
};

ConfigCurves compute_curves(double rho_lambda, double alpha, int mc_window_m,
                            std::uint64_t trials) {
    ConfigCurves cc;
    cc.rho_lambda = rho_lambda;
    cc.alpha = alpha;
    const auto grid = t_db_grid();
    CoverageQuery proto(rho_lambda, 1.0, alpha, SirThreshold(1.0));
    cc.exact = coverage_curve(proto, grid, CovMethod::Exact);
    cc.lower = coverage_curve(proto, grid, CovMethod::Lower);
    cc.upper0 = coverage_curve(proto, grid, CovMethod::Upper, 0);
    cc.upper1 = coverage_curve(proto, grid, CovMethod::Upper, 1);
    if (trials > 0) {
        ModelConfig cfg(1.0, rho_lambda, 1.0, 1.0, alpha);
        McOptions opts;
        opts.window.m = mc_window_m;
        std::vector<double> lin;
        for (double db : grid) lin.push_back(SirThreshold::from_db(db).t_linear);
        cc.mc = estimate_coverage_curve(cfg, PathLossModel::power_law(alpha),
                                        lin, trials, opts);
    }
    return cc;
}

struct Shared {
    std::vector<ConfigCurves> curves;  // the four (rho_lambda, alpha) configs
    double curves_elapsed = 0.0;
};

// ------------------------------------------------------------- criteria

Outcome criterion1() {
    const double t0 = now_s();
    const double a = assoc_prob_ppp(1.0, 1.0, 4.0, {1e-10, 1e-10, 4000});
    const bool headline = std::fabs(a - 0.36) <= 0.005;

    ModelConfig cfg(1.0, 1.0, 1.0, 1.0, 4.0);
    McOptions opts;  // m = 12, seed 0
    const auto mc = estimate_association(cfg, 100000, opts);
    const bool mc_ok = std::fabs(a - mc.value) <= mc.ci95_halfwidth;
    const double dt = now_s() - t0;
    const bool in_time = dt < 30.0;

    std::ostringstream d;
    d << "exact=" << fmt(a, 7) << " vs target 0.36+-0.005 ("
      << (headline ? "ok" : "off by " + fmt(std::fabs(a - 0.36), 3)) << "); mc="
      << fmt(mc.value) << "+-" << fmt(mc.ci95_halfwidth, 2)
      << (mc_ok ? " agrees" : " disagrees") << "; " << fmt(dt, 3) << "s";
    return {headline && mc_ok && in_time, d.str()};
}

Outcome criterion2() {
    const double t0 = now_s();
    bool ok = true;
    double worst_gap = 0.0;
    for (int i = 1; i <= 10; ++i) {
        const double rho = 0.2 * i;
        const double exact = area_fraction_ppp(rho, {1e-10, 1e-10, 4000});
        const auto b = assoc_bounds(rho);
        if (!(b.lower <= exact + 1e-9 && exact <= b.upper + 1e-9)) ok = false;
        worst_gap = std::max(worst_gap, b.upper - b.lower);
    }
    const double dt = now_s() - t0;
    if (worst_gap >= 0.03) ok = false;
    if (dt >= 5.0) ok = false;
    return {ok, "sandwich holds on rho=0.2..2.0, max gap " + fmt(worst_gap, 3) +
                    ", " + fmt(dt, 3) + "s"};
}

Outcome criterion3(Shared& sh) {
    const double t0 = now_s();
    // MC torus window: alpha = 3 needs a large window for the slowly
    // decaying interference tail; alpha = 4 converges with a modest one.
    sh.curves.push_back(compute_curves(0.25, 3.0, 64, 100000));
    sh.curves.push_back(compute_curves(4.0, 3.0, 64, 100000));
    sh.curves.push_back(compute_curves(0.25, 4.0, 16, 100000));
    sh.curves.push_back(compute_curves(4.0, 4.0, 16, 100000));
    double worst = 0.0;
    std::string worst_at;
    for (const auto& cc : sh.curves) {
        for (std::size_t j = 0; j < cc.exact.size(); ++j) {
            const double diff =
                std::fabs(cc.exact[j].result.p_cov - cc.mc[j].value);
            if (diff > worst) {
                worst = diff;
                worst_at = "rho_lambda=" + fmt(cc.rho_lambda, 3) +
                           ",alpha=" + fmt(cc.alpha, 2) +
                           ",T=" + fmt(cc.exact[j].t_db, 3) + "dB";
            }
        }
    }
    const double dt = now_s() - t0;
    sh.curves_elapsed = dt;
    const bool ok = worst < 0.015 && dt < 600.0;
    return {ok, "max |exact-mc| = " + fmt(worst, 3) + " at " + worst_at +
                    " (limit 0.015), " + fmt(dt, 4) + "s"};
}

Outcome criterion4(const Shared& sh) {
    if (sh.curves.empty()) return {false, "curves unavailable"};
    bool ok = true;
    double worst_violation = 0.0;
    for (const auto& cc : sh.curves) {
        for (std::size_t j = 0; j < cc.exact.size(); ++j) {
            const double ex = cc.exact[j].result.p_cov;
            const double slack = cc.exact[j].result.error_bound + 2e-4;
            const double lo = cc.lower[j].result.p_cov;
            const double u0 = cc.upper0[j].result.p_cov;
            const double u1 = cc.upper1[j].result.p_cov;
            worst_violation = std::max(
                {worst_violation, lo - ex - slack, ex - u0 - slack, u1 - u0});
            if (lo > ex + slack || ex > u0 + slack) ok = false;
            if (u1 > u0 + 1e-9) ok = false;  // enlargement must not loosen
        }
    }
    return {ok, std::string("lower <= exact <= upper(W=S0) and "
                            "upper(W enlarged) <= upper(W=S0) at all 64 "
                            "points; worst margin ") +
                    fmt(worst_violation, 3)};
}

Outcome criterion5() {
    const double target = 1.0 / (1.0 + constants::pi / 4.0);
    CoverageQuery q(100.0, 1.0, 4.0, SirThreshold(1.0));
    const auto res = coverage_exact(q);
    const bool exact_ok = std::fabs(res.p_cov - target) < 0.015;

    ModelConfig cfg(0.0, 1.0, 1.0, 1.0, 4.0);
    McOptions opts;
    opts.window.m = 20;
    const auto mc = estimate_coverage(cfg, PathLossModel::power_law(4.0),
                                      SirThreshold(1.0), 100000, opts);
    const bool mc_ok = std::fabs(mc.value - target) <= mc.ci95_halfwidth;
    std::ostringstream d;
    d << "exact(rho_lambda=100)=" << fmt(res.p_cov) << ", pure-ppp mc="
      << fmt(mc.value) << "+-" << fmt(mc.ci95_halfwidth, 2) << ", target "
      << fmt(target);
    return {exact_ok && mc_ok, d.str()};
}

Outcome criterion6(const Shared& sh) {
    // alpha = 4 curves at rho_lambda 0.25 and 4 are already computed;
    // add the middle one.
    const auto mid = compute_curves(1.0, 4.0, 0, 0);
    const ConfigCurves* lo = nullptr;
    const ConfigCurves* hi = nullptr;
    for (const auto& cc : sh.curves) {
        if (cc.alpha == 4.0 && cc.rho_lambda == 0.25) lo = &cc;
        if (cc.alpha == 4.0 && cc.rho_lambda == 4.0) hi = &cc;
    }
    if (!lo || !hi) return {false, "curves unavailable"};
    bool ok = true;
    for (std::size_t j = 0; j < mid.exact.size(); ++j) {
        if (!(lo->exact[j].result.p_cov > mid.exact[j].result.p_cov &&
              mid.exact[j].result.p_cov > hi->exact[j].result.p_cov))
            ok = false;
    }
    return {ok, "coverage strictly decreasing in rho_lambda in {0.25,1,4} at "
                "all 16 thresholds"};
}

Outcome criterion7() {
    const auto pl = PathLossModel::power_law(4.0);
    const std::vector<double> lin = {SirThreshold::from_db(-5.0).t_linear,
                                     1.0, SirThreshold::from_db(5.0).t_linear};
    McOptions opts;
    opts.window.m = 12;
    McOptions opts2 = opts;
    opts2.seed = 1;
    const auto a = estimate_coverage_curve(ModelConfig(25, 25, 1, 1, 4), pl,
                                           lin, 100000, opts);
    const auto b = estimate_coverage_curve(ModelConfig(100, 100, 1, 1, 4), pl,
                                           lin, 100000, opts2);
    bool invariant = true;
    double worst = 0.0;
    for (std::size_t j = 0; j < lin.size(); ++j) {
        const double diff = std::fabs(a[j].value - b[j].value);
        worst = std::max(worst, diff);
        if (diff > a[j].ci95_halfwidth + b[j].ci95_halfwidth) invariant = false;
    }

    // cap radius 0.1: the sparse network stays power-law, the 100x denser
    // one is dominated by capped links
    const auto bounded = PathLossModel::bounded_single_slope(1e4, 4.0);
    const auto c = estimate_coverage(ModelConfig(1, 1, 1, 1, 4), bounded,
                                     SirThreshold(1.0), 100000, opts);
    const auto d = estimate_coverage(ModelConfig(100, 100, 1, 1, 4), bounded,
                                     SirThreshold(1.0), 100000, opts2);
    const double gap = std::fabs(c.value - d.value);
    const bool detected = gap > 3.0 * (c.ci95_halfwidth + d.ci95_halfwidth);

    std::ostringstream s;
    s << "power law: max density-scaling gap " << fmt(worst, 2)
      << (invariant ? " within" : " OUTSIDE") << " combined CI; bounded gain: "
      << "gap " << fmt(gap, 3) << (detected ? " significant" : " NOT significant");
    return {invariant && detected, s.str()};
}

Outcome criterion8() {
    // synthetic deployment at rho_lambda = 2.3
    RngStream rng(4, 0);
    const auto ps =
        sample_superposition(ModelConfig(1.0, 2.3, 1.0, 1.0, 4.0), SimWindow{16},
                             rng);
    const auto fm = fit_model(make_deployment(ps.points));
    const bool n_ok = ps.points.size() >= 500;
    const bool kappa_ok = fm.kappa_avg >= 0.85 && fm.kappa_avg <= 0.95;
    const bool rho_ok = fm.rho_lambda_hat >= 1.8 && fm.rho_lambda_hat <= 3.0;

    bool roundtrip = true;
    for (double e = -2.0; e <= 2.0001; e += 0.02) {
        const double rho = std::pow(10.0, e);
        if (std::fabs(rho_from_kappa(kappa_from_rho(rho)) - rho) >
            1e-12 * std::max(1.0, rho))
            roundtrip = false;
    }
    const bool spot = std::fabs(rho_from_kappa(0.776) - 1.11) <= 0.005;

    std::ostringstream d;
    d << "n=" << ps.points.size() << ", kappa_hat=" << fmt(fm.kappa_avg, 4)
      << ", rho_lambda_hat=" << fmt(fm.rho_lambda_hat, 4)
      << ", roundtrip " << (roundtrip ? "1e-12 ok" : "FAILS")
      << ", kappa 0.776 -> " << fmt(rho_from_kappa(0.776), 4);
    return {n_ok && kappa_ok && rho_ok && roundtrip && spot, d.str()};
}

Outcome criterion9() {
    const int trials = 100000;
    auto sample_nearest = [&](double lambda_g, double lambda_p,
                              std::uint64_t stream) {
        std::vector<double> out;
        out.reserve(trials);
        ModelConfig cfg(lambda_g, lambda_p, 1.0, 1.0, 4.0);
        for (int t = 0; t < trials; ++t) {
            RngStream rng(static_cast<std::uint64_t>(t), stream);
            const auto ps = sample_superposition(cfg, SimWindow{12}, rng);
            double best = 1e18;
            for (const auto& p : ps.points)
                best = std::min(best, p.x * p.x + p.y * p.y);
            out.push_back(std::sqrt(best));
        }
        return out;
    };
    const double ks_g = testutil::ks_statistic(
        sample_nearest(1.0, 0.0, 101),
        [](double r) { return grid_nearest_cdf(r, 1.0); });
    const double ks_p = testutil::ks_statistic(
        sample_nearest(0.0, 1.0, 102),
        [](double r) { return ppp_nearest_cdf(r, 1.0); });
    const double ks_s = testutil::ks_statistic(
        sample_nearest(1.0, 1.0, 103),
        [](double r) { return superposition_nearest_cdf(r, 1.0, 1.0); });

    QuadratureSpec spec{1e-12, 1e-12, 4000};
    const double total =
        integrate([](double r) { return grid_nearest_pdf(r, 1.0); }, 0.0, 0.5,
                  spec)
            .value +
        integrate([](double r) { return grid_nearest_pdf(r, 1.0); }, 0.5,
                  1.0 / constants::sqrt2, spec)
            .value;
    const bool pdf_ok = std::fabs(total - 1.0) <= 1e-9;

    const double h = 1e-5;
    double worst_deriv = 0.0;
    for (int i = 1; i < 1000; ++i) {
        const double r = 0.7071 * i / 1000.0;
        if (std::fabs(r - 0.5) < 5e-3 ||
            std::fabs(r - 1.0 / constants::sqrt2) < 5e-3)
            continue;
        const double num =
            (grid_nearest_cdf(r + h, 1.0) - grid_nearest_cdf(r - h, 1.0)) /
            (2.0 * h);
        worst_deriv = std::max(worst_deriv,
                               std::fabs(num - grid_nearest_pdf(r, 1.0)));
    }

    std::ostringstream d;
    d << "KS grid/ppp/mix = " << fmt(ks_g, 3) << "/" << fmt(ks_p, 3) << "/"
      << fmt(ks_s, 3) << " (limit 0.01); pdf integral off by "
      << fmt(std::fabs(total - 1.0), 2) << "; max |pdf - dCDF/dr| = "
      << fmt(worst_deriv, 2);
    const bool ok = ks_g < 0.01 && ks_p < 0.01 && ks_s < 0.01 && pdf_ok &&
                    worst_deriv <= 1e-6;
    return {ok, d.str()};
}

Outcome criterion10() {
    bool ok = true;
    std::ostringstream d;

    // (a) PPP-interference transform vs Monte Carlo at 5 parameter points.
    // Draws live on the annulus [a, R]; the evaluator's outer tail beyond R
    // is removed analytically so the comparison is exact in expectation.
    struct PppPt {
        double xi, a, lambda, alpha;
    };
    const PppPt ppp_pts[5] = {{0.5, 1.0, 1.0, 4.0},
                              {1.0, 1.0, 1.0, 4.0},
                              {2.0, 1.5, 0.5, 4.0},
                              {1.0, 0.8, 1.0, 3.0},
                              {0.7, 2.0, 2.0, 3.5}};
    double worst_z_ppp = 0.0;
    for (const auto& p : ppp_pts) {
        const double R = 10.0;
        const double analytic =
            std::exp(-2.0 * constants::pi * p.lambda *
                     (lattice::c_times_m(p.xi, p.a, p.alpha) -
                      lattice::c_times_m(p.xi, R, p.alpha)));
        RngStream rng(55, static_cast<std::uint64_t>(p.xi * 100 + p.a * 10));
        const double area = constants::pi * (R * R - p.a * p.a);
        const int draws = 100000;
        double sum = 0.0, sq = 0.0;
        for (int k = 0; k < draws; ++k) {
            const std::uint64_t n = rng.next_poisson(p.lambda * area);
            double interf = 0.0;
            for (std::uint64_t i = 0; i < n; ++i) {
                const double u = rng.next_double();
                const double r = std::sqrt(p.a * p.a + u * (R * R - p.a * p.a));
                interf += rng.next_exp() * std::pow(r, -p.alpha);
            }
            const double x = std::exp(-p.xi * interf);
            sum += x;
            sq += x * x;
        }
        const double mean = sum / draws;
        const double sd = std::sqrt((sq / draws - mean * mean) / draws);
        const double z = std::fabs(mean - analytic) / std::max(sd, 1e-12);
        worst_z_ppp = std::max(worst_z_ppp, z);
        if (z > 3.0) ok = false;
    }

    // (b) grid-interference transforms vs Monte Carlo at 5 points
    // (3 conditioned on grid association, 2 on an exclusion ball).
    const int n_win = 8;
    lattice::Grid grid(n_win);
    double worst_z_grid = 0.0;
    {
        struct GridPt {
            double xi, ux, uy;
        };
        const GridPt pts[3] = {{0.5, 0.1, 0.05}, {1.0, 0.3, 0.2}, {2.0, 0.45, 0.4}};
        lattice::PowKernel pk(4.0);
        for (const auto& p : pts) {
            const auto sandwich = laplace_grid_bounds_assoc(
                p.xi, p.ux, p.uy, 1.0, 1.0, 4.0, {n_win});
            const double analytic = sandwich.second.value;  // truncated product
            RngStream rng(77, static_cast<std::uint64_t>(p.xi * 1000));
            std::vector<double> gains;
            for (int z1 = -n_win; z1 <= n_win; ++z1)
                for (int z2 = -n_win; z2 <= n_win; ++z2) {
                    if (z1 == 0 && z2 == 0) continue;
                    const double dx = p.ux + z1, dy = p.uy + z2;
                    gains.push_back(pk(dx * dx + dy * dy));
                }
            const int draws = 100000;
            double sum = 0.0, sq = 0.0;
            for (int k = 0; k < draws; ++k) {
                double interf = 0.0;
                for (const double g : gains) interf += rng.next_exp() * g;
                const double x = std::exp(-p.xi * interf);
                sum += x;
                sq += x * x;
            }
            const double mean = sum / draws;
            const double sd = std::sqrt((sq / draws - mean * mean) / draws);
            const double z = std::fabs(mean - analytic) / std::max(sd, 1e-12);
            worst_z_grid = std::max(worst_z_grid, z);
            if (z > 3.0) ok = false;
        }
    }
    {
        struct ExclPt {
            double xi, re;
        };
        const ExclPt pts[2] = {{0.8, 0.2}, {1.5, 0.4}};
        lattice::PowKernel pk(4.0);
        lattice::TailCoeffs coeffs(4.0);
        const double L = grid.boundary();
        for (const auto& p : pts) {
            const auto exact =
                laplace_grid_excl(p.xi, p.re, 1.0, 1.0, 4.0, {n_win});
            const double tail =
                lattice::tail_integral_log(p.xi, 4.0, L, coeffs, nullptr);
            RngStream rng(88, static_cast<std::uint64_t>(p.xi * 1000));
            const int draws = 100000;
            double sum = 0.0, sq = 0.0;
            int kept = 0;
            while (kept < draws) {
                const double ux = rng.next_uniform(-0.5, 0.5);
                const double uy = rng.next_uniform(-0.5, 0.5);
                if (ux * ux + uy * uy < p.re * p.re) continue;
                ++kept;
                double interf = 0.0;
                // z = 0 included: the serving point is in the PPP here
                for (int z1 = -n_win; z1 <= n_win; ++z1)
                    for (int z2 = -n_win; z2 <= n_win; ++z2) {
                        const double dx = ux + z1, dy = uy + z2;
                        interf += rng.next_exp() * pk(dx * dx + dy * dy);
                    }
                const double x = std::exp(-p.xi * interf - tail);
                sum += x;
                sq += x * x;
            }
            const double mean = sum / draws;
            const double sd = std::sqrt((sq / draws - mean * mean) / draws);
            const double z = std::fabs(mean - exact.value) /
                             std::max(sd + exact.truncation_error_bound, 1e-12);
            worst_z_grid = std::max(worst_z_grid, z);
            if (z > 3.0) ok = false;
        }
    }

    // (c) sandwich bounds on a 20-point (xi, geometry) grid
    bool sandwich_ok = true;
    for (double xi : {0.3, 0.8, 1.5, 2.5, 4.0}) {
        for (double u : {0.05, 0.45}) {
            const auto exact = laplace_grid_given_grid_assoc(
                xi, u, u / 2.0, 1.0, 1.0, 4.0, {40, 1e-10});
            const auto b =
                laplace_grid_bounds_assoc(xi, u, u / 2.0, 1.0, 1.0, 4.0, {12});
            if (b.first.value > exact.value + exact.truncation_error_bound + 1e-12 ||
                b.second.value < exact.value - exact.truncation_error_bound - 1e-12)
                sandwich_ok = false;
        }
        for (double re : {0.1, 0.35}) {
            const auto exact =
                laplace_grid_excl(xi, re, 1.0, 1.0, 4.0, {30, 1e-10});
            const auto b =
                laplace_grid_bounds_excl(xi, re, 1.0, 1.0, 4.0, {12});
            if (b.first.value > exact.value + exact.truncation_error_bound + 1e-7 ||
                b.second.value < exact.value - exact.truncation_error_bound - 1e-7)
                sandwich_ok = false;
        }
    }
    if (!sandwich_ok) ok = false;

    // (d) truncation self-consistency: window doubling stays within bounds
    bool trunc_ok = true;
    for (double xi : {0.5, 1.5}) {
        for (double alpha : {3.0, 4.0}) {
            const auto a1 = laplace_grid_given_grid_assoc(xi, 0.2, 0.3, 1.0,
                                                          1.0, alpha, {10});
            const auto a2 = laplace_grid_given_grid_assoc(xi, 0.2, 0.3, 1.0,
                                                          1.0, alpha, {20});
            if (std::fabs(a1.value - a2.value) >
                a1.truncation_error_bound + a2.truncation_error_bound + 1e-14)
                trunc_ok = false;
            const auto e1 = laplace_grid_excl(xi, 0.25, 1.0, 1.0, alpha, {10});
            const auto e2 = laplace_grid_excl(xi, 0.25, 1.0, 1.0, alpha, {20});
            if (std::fabs(e1.value - e2.value) >
                e1.truncation_error_bound + e2.truncation_error_bound + 1e-9)
                trunc_ok = false;
        }
    }
    if (!trunc_ok) ok = false;

    d << "mc max |z|: ppp " << fmt(worst_z_ppp, 3) << ", grid "
      << fmt(worst_z_grid, 3) << " (limit 3); sandwich "
      << (sandwich_ok ? "holds" : "VIOLATED") << "; window-doubling drift "
      << (trunc_ok ? "within reported bounds" : "EXCEEDS reported bounds");
    return {ok, d.str()};
}

Outcome criterion11() {
    using testutil::run_cli;
    bool ok = true;
    std::string note = "byte-identical";
    {
        const std::string args =
            "simulate --lambda-g 1 --lambda-p 1 --t-db -4:8:4 --trials 2000 "
            "--m 8 --seed 12";
        const auto a = run_cli(args + " --threads 1");
        const auto b = run_cli(args + " --threads 1");
        const auto c = run_cli(args + " --threads 4");
        if (a.exit_code != 0 || a.out != b.out || a.out != c.out) {
            ok = false;
            note = "simulate output differs across runs/threads";
        }
    }
    {
        const auto a = run_cli("coverage --rho-lambda 1 --t-db -4:8:4 --threads 1");
        const auto b = run_cli("coverage --rho-lambda 1 --t-db -4:8:4 --threads 2");
        if (a.exit_code != 0 || a.out != b.out) {
            ok = false;
            note = "coverage output differs across thread counts";
        }
    }
    {
        const auto a = run_cli("sample --lambda-g 1 --lambda-p 2 --m 5 --seed 9");
        const auto b = run_cli("sample --lambda-g 1 --lambda-p 2 --m 5 --seed 9");
        if (a.exit_code != 0 || a.out != b.out) {
            ok = false;
            note = "sample output differs across runs";
        }
    }
    return {ok, note + " (simulate/coverage/sample, reruns and thread counts)"};
}

}  // namespace

int main() {
    Shared sh;
    int failures = 0;
    struct Entry {
        int id;
        const char* title;
        Outcome out;
    };
    std::vector<Entry> entries;

    entries.push_back({1, "association headline value + MC agreement",
                       criterion1()});
    entries.push_back({2, "association bound sandwich and tightness",
                       criterion2()});
    entries.push_back({3, "coverage exact vs MC on the standard sweep",
                       criterion3(sh)});
    entries.push_back({4, "coverage bound sandwich and window tightening",
                       criterion4(sh)});
    entries.push_back({5, "dense-randomness (pure PPP) limit", criterion5()});
    entries.push_back({6, "monotonicity in the intensity ratio",
                       criterion6(sh)});
    entries.push_back({7, "scale invariance and its bounded-gain breakdown",
                       criterion7()});
    entries.push_back({8, "fit pipeline on a synthetic deployment",
                       criterion8()});
    entries.push_back({9, "nearest-distance laws (KS, pdf consistency)",
                       criterion9()});
    entries.push_back({10, "interference transform oracles and bounds",
                       criterion10()});
    entries.push_back({11, "CLI determinism", criterion11()});

    for (const auto& e : entries) {
        if (!e.out.pass) ++failures;
        std::printf("[%s] criterion %d: %s -- %s\n",
                    e.out.pass ? "PASS" : "FAIL", e.id, e.title,
                    e.out.detail.c_str());
    }
    std::printf("%d/%zu criteria passed\n",
                static_cast<int>(entries.size()) - failures, entries.size());
    return failures;
}
