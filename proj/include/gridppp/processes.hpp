// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gridppp/model.hpp"
#include "gridppp/rng.hpp"

namespace gridppp {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

/// The single uniform translation shared by all lattice points.
struct GridShift {
    Point u;
};

/// Toroidal simulation window: an (m s) x (m s) square centered at the
/// origin with periodic boundary, containing exactly m^2 grid points.
struct SimWindow {
    int m = 12;

    void validate() const {
        if (m < 3) throw std::invalid_argument("SimWindow: m must be >= 3");
    }
    double side(double s) const { return m * s; }
};

enum class PointLabel { Grid, Ppp };

struct LabeledPointSet {
    std::vector<Point> points;
    std::vector<PointLabel> labels;
    GridShift shift;
    SimWindow window;
    double side = 0.0;  ///< torus edge length in absolute units
};

namespace process_detail {

/// Wrap a coordinate into [-side/2, side/2).
inline double wrap(double x, double side) {
    const double w = x - side * std::floor(x / side + 0.5);
    // floor rounding can land exactly on +side/2; fold it back.
    return (w >= side / 2.0) ? w - side : w;
}

}  // namespace process_detail

/// Sample the randomly shifted lattice of pitch s on the torus: exactly
/// m^2 points sharing one uniform shift U on [-s/2, s/2]^2.
inline LabeledPointSet sample_grid(double s, SimWindow window, RngStream& rng) {
    if (!(s > 0.0)) throw std::invalid_argument("sample_grid: s must be > 0");
    window.validate();
    LabeledPointSet ps;
    ps.window = window;
    ps.side = window.side(s);
    ps.shift.u = {rng.next_uniform(-s / 2.0, s / 2.0),
                  rng.next_uniform(-s / 2.0, s / 2.0)};
    const int m = window.m;
    ps.points.reserve(static_cast<std::size_t>(m) * m);
    for (int k1 = 0; k1 < m; ++k1)
        for (int k2 = 0; k2 < m; ++k2) {
            const double x = (k1 - m / 2) * s + ps.shift.u.x;
            const double y = (k2 - m / 2) * s + ps.shift.u.y;
            ps.points.push_back({process_detail::wrap(x, ps.side),
                                 process_detail::wrap(y, ps.side)});
        }
    ps.labels.assign(ps.points.size(), PointLabel::Grid);
    return ps;
}

/// Sample a PPP of intensity lambda_p on the torus whose edge is
/// window.m * cell (cell plays the role of the lattice pitch so that grid
/// and PPP draws share a window).
inline LabeledPointSet sample_ppp(double lambda_p, SimWindow window, double cell,
                                  RngStream& rng) {
    if (lambda_p < 0.0)
        throw std::invalid_argument("sample_ppp: negative intensity");
    if (!(cell > 0.0)) throw std::invalid_argument("sample_ppp: cell must be > 0");
    window.validate();
    LabeledPointSet ps;
    ps.window = window;
    ps.side = window.side(cell);
    const double area = ps.side * ps.side;
    const std::uint64_t count = rng.next_poisson(lambda_p * area);
    ps.points.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        const double x = rng.next_uniform(-ps.side / 2.0, ps.side / 2.0);
        const double y = rng.next_uniform(-ps.side / 2.0, ps.side / 2.0);
        ps.points.push_back({x, y});
    }
    ps.labels.assign(ps.points.size(), PointLabel::Ppp);
    return ps;
}

/// Sample the superposition: one grid draw plus one independent PPP draw
/// on the same torus, labels preserved. Disabled components are omitted
/// (lambda_g = 0 gives a pure PPP whose window scale falls back to
/// 1/sqrt(lambda_p)).
inline LabeledPointSet sample_superposition(const ModelConfig& config,
                                            SimWindow window, RngStream& rng) {
    config.validate();
    window.validate();
    const double cell = config.grid_enabled()
                            ? config.pitch()
                            : 1.0 / std::sqrt(config.lambda_p);
    if (!config.grid_enabled()) return sample_ppp(config.lambda_p, window, cell, rng);
    LabeledPointSet ps = sample_grid(config.pitch(), window, rng);
    if (config.ppp_enabled()) {
        LabeledPointSet pp = sample_ppp(config.lambda_p, window, cell, rng);
        ps.points.insert(ps.points.end(), pp.points.begin(), pp.points.end());
        ps.labels.insert(ps.labels.end(), pp.labels.begin(), pp.labels.end());
    }
    return ps;
}

/// Squared torus (min-image) distance.
inline double torus_dist2(const Point& a, const Point& b, double side) {
    const double dx = process_detail::wrap(a.x - b.x, side);
    const double dy = process_detail::wrap(a.y - b.y, side);
    return dx * dx + dy * dy;
}

/// Nearest point to `origin` under the torus metric; ties broken toward
/// Grid label first, then lexicographically by (x, y).
inline std::pair<double, PointLabel> nearest(const LabeledPointSet& ps,
                                             const Point& origin) {
    if (ps.points.empty())
        throw std::domain_error("nearest: empty point set");
    double best_d2 = -1.0;
    std::size_t best = 0;
    for (std::size_t i = 0; i < ps.points.size(); ++i) {
        const double d2 = torus_dist2(ps.points[i], origin, ps.side);
        if (best_d2 < 0.0 || d2 < best_d2) {
            best_d2 = d2;
            best = i;
        } else if (d2 == best_d2) {
            const bool igrid = ps.labels[i] == PointLabel::Grid;
            const bool bgrid = ps.labels[best] == PointLabel::Grid;
            if (igrid != bgrid) {
                if (igrid) best = i;
            } else if (ps.points[i].x < ps.points[best].x ||
                       (ps.points[i].x == ps.points[best].x &&
                        ps.points[i].y < ps.points[best].y)) {
                best = i;
            }
        }
    }
    return {std::sqrt(best_d2), ps.labels[best]};
}

}  // namespace gridppp
