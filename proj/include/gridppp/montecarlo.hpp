// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "gridppp/model.hpp"
#include "gridppp/processes.hpp"
#include "gridppp/rng.hpp"
#include "gridppp/special.hpp"

namespace gridppp {

/// Simulation controls. pin_shift / pin_fading are deterministic test
/// hooks; production call sites leave them unset.
struct McOptions {
    SimWindow window{12};
    std::uint64_t seed = 0;
    int threads = 1;
    /// Replace the lattice component by an equal-intensity PPP that keeps
    /// the Grid label (two-independent-PPP comparison runs).
    bool grid_as_ppp = false;
    std::optional<Point> pin_shift;
    std::optional<double> pin_fading;
};

struct TrialOutcome {
    double sir;
    PointLabel assoc_label;
    double serving_distance;
};

struct McEstimate {
    double value;            ///< raw success fraction
    double ci95_halfwidth;   ///< Wilson-interval half width
    double ci_lo;
    double ci_hi;
    std::uint64_t trials;
    std::uint64_t seed;
};

/// 95% Wilson score interval.
inline McEstimate wilson_estimate(std::uint64_t successes, std::uint64_t n,
                                  std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("wilson_estimate: zero trials");
    const double z = constants::z95;
    const double p = static_cast<double>(successes) / static_cast<double>(n);
    const double nn = static_cast<double>(n);
    const double denom = 1.0 + z * z / nn;
    const double center = (p + z * z / (2.0 * nn)) / denom;
    const double half =
        z * std::sqrt(p * (1.0 - p) / nn + z * z / (4.0 * nn * nn)) / denom;
    return {p, half, std::max(0.0, center - half), std::min(1.0, center + half),
            n, seed};
}

namespace mc_detail {

/// Draw one realization into flat coordinate arrays. Draw order is part of
/// the determinism contract: shift (2), Poisson count (1), PPP positions
/// (2 each); fadings are drawn afterwards in storage order (grid block
/// first). Points are stored in [-side/2, side/2)^2 with the user at the
/// origin, so plain Euclidean distances already realize the torus metric.
struct Workspace {
    std::vector<double> px, py;
    std::vector<double> meanpow;  // transmit power * path gain per point
    std::size_t n_grid = 0;
    double side = 0.0;
};

inline void sample_points(const ModelConfig& config, const McOptions& opts,
                          RngStream& rng, Workspace& ws) {
    ws.px.clear();
    ws.py.clear();
    ws.n_grid = 0;
    const double cell = config.grid_enabled()
                            ? config.pitch()
                            : 1.0 / std::sqrt(config.lambda_p);
    ws.side = opts.window.side(cell);
    if (config.grid_enabled()) {
        if (opts.grid_as_ppp) {
            const std::uint64_t count =
                rng.next_poisson(config.lambda_g * ws.side * ws.side);
            for (std::uint64_t i = 0; i < count; ++i) {
                ws.px.push_back(rng.next_uniform(-ws.side / 2.0, ws.side / 2.0));
                ws.py.push_back(rng.next_uniform(-ws.side / 2.0, ws.side / 2.0));
            }
        } else {
            const double s = config.pitch();
            Point u;
            if (opts.pin_shift) {
                u = *opts.pin_shift;
            } else {
                u.x = rng.next_uniform(-s / 2.0, s / 2.0);
                u.y = rng.next_uniform(-s / 2.0, s / 2.0);
            }
            const int m = opts.window.m;
            for (int k1 = 0; k1 < m; ++k1)
                for (int k2 = 0; k2 < m; ++k2) {
                    ws.px.push_back(process_detail::wrap((k1 - m / 2) * s + u.x,
                                                         ws.side));
                    ws.py.push_back(process_detail::wrap((k2 - m / 2) * s + u.y,
                                                         ws.side));
                }
        }
        ws.n_grid = ws.px.size();
    }
    if (config.ppp_enabled()) {
        const std::uint64_t count =
            rng.next_poisson(config.lambda_p * ws.side * ws.side);
        for (std::uint64_t i = 0; i < count; ++i) {
            ws.px.push_back(rng.next_uniform(-ws.side / 2.0, ws.side / 2.0));
            ws.py.push_back(rng.next_uniform(-ws.side / 2.0, ws.side / 2.0));
        }
    }
}

/// Fill mean powers, pick the max-mean-power server (ties: lowest index;
/// grid block first, fixed storage order -> deterministic).
inline std::size_t associate(const ModelConfig& config, const PathLossModel& pl,
                             Workspace& ws, double* serving_dist) {
    const std::size_t n = ws.px.size();
    if (n == 0) throw std::domain_error("montecarlo: empty network realization");
    ws.meanpow.resize(n);
    std::size_t best = 0;
    double best_pow = -1.0;
    double best_d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = std::sqrt(ws.px[i] * ws.px[i] + ws.py[i] * ws.py[i]);
        const double p = (i < ws.n_grid) ? config.p_g : config.p_p;
        const double mp = p * pl.gain(d);
        ws.meanpow[i] = mp;
        if (mp > best_pow) {
            best_pow = mp;
            best = i;
            best_d = d;
        }
    }
    if (serving_dist) *serving_dist = best_d;
    return best;
}

}  // namespace mc_detail

/// One full trial: sample the network, associate by max mean power
/// (fading-free), then compute the SIR with a fresh Exp(1) fading draw on
/// every link including the serving one.
inline TrialOutcome run_trial(const ModelConfig& config, const PathLossModel& pl,
                              const McOptions& opts, std::uint64_t trial_idx) {
    RngStream rng(opts.seed, trial_idx);
    mc_detail::Workspace ws;
    mc_detail::sample_points(config, opts, rng, ws);
    double serving_dist = 0.0;
    const std::size_t serving = mc_detail::associate(config, pl, ws, &serving_dist);
    double total = 0.0;
    double signal = 0.0;
    for (std::size_t i = 0; i < ws.meanpow.size(); ++i) {
        const double h = opts.pin_fading ? *opts.pin_fading : rng.next_exp();
        const double contrib = h * ws.meanpow[i];
        total += contrib;
        if (i == serving) signal = contrib;
    }
    const double interference = total - signal;
    TrialOutcome out;
    out.sir = interference > 0.0
                  ? signal / interference
                  : std::numeric_limits<double>::infinity();
    out.assoc_label =
        serving < ws.n_grid ? PointLabel::Grid : PointLabel::Ppp;
    out.serving_distance = serving_dist;
    return out;
}

namespace mc_detail {

template <class PerTrial>
void parallel_trials(std::uint64_t trials, int threads, PerTrial&& body) {
    if (threads <= 1) {
        for (std::uint64_t t = 0; t < trials; ++t) body(t, 0);
        return;
    }
    const int nt = std::min<std::uint64_t>(threads, trials);
    std::vector<std::thread> pool;
    for (int k = 0; k < nt; ++k) {
        pool.emplace_back([&body, k, nt, trials]() {
            for (std::uint64_t t = k; t < trials; t += nt) body(t, k);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace mc_detail

/// Coverage curve estimate: one SIR sample per trial compared against every
/// threshold (linear scale). Bit-identical across thread counts.
inline std::vector<McEstimate> estimate_coverage_curve(
    const ModelConfig& config, const PathLossModel& pl,
    const std::vector<double>& t_linear, std::uint64_t trials,
    const McOptions& opts) {
    if (trials < 1) throw std::invalid_argument("estimate_coverage_curve: no trials");
    const int nt = std::max(1, opts.threads);
    std::vector<std::vector<std::uint64_t>> counts(
        nt, std::vector<std::uint64_t>(t_linear.size(), 0));
    mc_detail::parallel_trials(trials, nt, [&](std::uint64_t t, int worker) {
        const TrialOutcome out = run_trial(config, pl, opts, t);
        auto& local = counts[worker];
        for (std::size_t j = 0; j < t_linear.size(); ++j)
            if (out.sir >= t_linear[j]) ++local[j];
    });
    std::vector<McEstimate> res;
    res.reserve(t_linear.size());
    for (std::size_t j = 0; j < t_linear.size(); ++j) {
        std::uint64_t succ = 0;
        for (int k = 0; k < nt; ++k) succ += counts[k][j];
        res.push_back(wilson_estimate(succ, trials, opts.seed));
    }
    return res;
}

inline McEstimate estimate_coverage(const ModelConfig& config,
                                    const PathLossModel& pl, SirThreshold t,
                                    std::uint64_t trials, const McOptions& opts) {
    return estimate_coverage_curve(config, pl, {t.t_linear}, trials, opts)[0];
}

/// Association estimate (fading-free mean-power rule, power-law gain with
/// the configured alpha).
inline McEstimate estimate_association(const ModelConfig& config,
                                       std::uint64_t trials,
                                       const McOptions& opts) {
    const PathLossModel pl = PathLossModel::power_law(config.alpha);
    const int nt = std::max(1, opts.threads);
    std::vector<std::uint64_t> counts(nt, 0);
    mc_detail::parallel_trials(trials, nt, [&](std::uint64_t t, int worker) {
        RngStream rng(opts.seed, t);
        mc_detail::Workspace ws;
        mc_detail::sample_points(config, opts, rng, ws);
        const std::size_t serving = mc_detail::associate(config, pl, ws, nullptr);
        if (serving >= ws.n_grid) ++counts[worker];
    });
    std::uint64_t succ = 0;
    for (auto c : counts) succ += c;
    return wilson_estimate(succ, trials, opts.seed);
}

enum class NdistComponent { Grid, Ppp, Both };

/// Empirical nearest-distance CDF of the requested component at the
/// requested radii.
inline std::vector<double> estimate_nearest_cdf(const ModelConfig& config,
                                                NdistComponent component,
                                                const std::vector<double>& r_grid,
                                                std::uint64_t trials,
                                                const McOptions& opts) {
    ModelConfig c = config;
    if (component == NdistComponent::Grid) c.lambda_p = 0.0;
    if (component == NdistComponent::Ppp) c.lambda_g = 0.0;
    c.validate();
    const int nt = std::max(1, opts.threads);
    std::vector<std::vector<std::uint64_t>> counts(
        nt, std::vector<std::uint64_t>(r_grid.size(), 0));
    mc_detail::parallel_trials(trials, nt, [&](std::uint64_t t, int worker) {
        RngStream rng(opts.seed, t);
        mc_detail::Workspace ws;
        mc_detail::sample_points(c, opts, rng, ws);
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < ws.px.size(); ++i)
            best = std::min(best,
                            ws.px[i] * ws.px[i] + ws.py[i] * ws.py[i]);
        best = std::sqrt(best);
        auto& local = counts[worker];
        for (std::size_t j = 0; j < r_grid.size(); ++j)
            if (best <= r_grid[j]) ++local[j];
    });
    std::vector<double> cdf(r_grid.size(), 0.0);
    for (std::size_t j = 0; j < r_grid.size(); ++j) {
        std::uint64_t succ = 0;
        for (int k = 0; k < nt; ++k) succ += counts[k][j];
        cdf[j] = static_cast<double>(succ) / static_cast<double>(trials);
    }
    return cdf;
}

}  // namespace gridppp
