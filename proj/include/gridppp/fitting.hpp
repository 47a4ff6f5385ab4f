// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gridppp/processes.hpp"
#include "gridppp/special.hpp"

namespace gridppp {

/// Observed base-station coordinates with their analysis window.
struct DeploymentData {
    enum class Crs { Planar, LatLon };

    std::vector<Point> points;
    double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;  ///< bounding window
    Crs source_crs = Crs::Planar;

    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
};

/// Wrap planar points, window = data bounding box.
inline DeploymentData make_deployment(std::vector<Point> pts) {
    if (pts.empty()) throw std::invalid_argument("make_deployment: no points");
    DeploymentData d;
    d.x0 = d.x1 = pts[0].x;
    d.y0 = d.y1 = pts[0].y;
    for (const auto& p : pts) {
        d.x0 = std::min(d.x0, p.x);
        d.x1 = std::max(d.x1, p.x);
        d.y0 = std::min(d.y0, p.y);
        d.y1 = std::max(d.y1, p.y);
    }
    d.points = std::move(pts);
    return d;
}

/// Equirectangular projection about the centroid (Earth radius 6371 km);
/// output coordinates are kilometers.
inline DeploymentData project_latlon(
    const std::vector<std::pair<double, double>>& records) {
    if (records.empty()) throw std::invalid_argument("project_latlon: no records");
    constexpr double r_earth = 6371.0;
    constexpr double deg = constants::pi / 180.0;
    double lat0 = 0.0, lon0 = 0.0;
    for (const auto& [lat, lon] : records) {
        if (!(std::fabs(lat) < 89.0))
            throw std::domain_error("project_latlon: |lat| must be < 89 degrees");
        lat0 += lat;
        lon0 += lon;
    }
    lat0 /= records.size();
    lon0 /= records.size();
    const double scale_x = r_earth * std::cos(lat0 * deg) * deg;
    std::vector<Point> pts;
    pts.reserve(records.size());
    for (const auto& [lat, lon] : records)
        pts.push_back({scale_x * (lon - lon0), r_earth * deg * (lat - lat0)});
    DeploymentData d = make_deployment(std::move(pts));
    d.source_crs = DeploymentData::Crs::LatLon;
    return d;
}

/// Average pair correlation of the superposition model (closed form):
/// kappa = 1 - 1/(1+rho_lambda)^2.
inline double kappa_from_rho(double rho_lambda) {
    if (rho_lambda < 0.0)
        throw std::domain_error("kappa_from_rho: rho_lambda must be >= 0");
    const double q = 1.0 + rho_lambda;
    return 1.0 - 1.0 / (q * q);
}

/// Inverse map rho_lambda = 1/sqrt(1-kappa) - 1. kappa >= 1 is rejected
/// (the model cannot represent attraction); negative kappa (estimator
/// noise) is clamped to 0 with `clamped` set.
inline double rho_from_kappa(double kappa, bool* clamped = nullptr) {
    if (clamped) *clamped = false;
    if (kappa >= 1.0)
        throw std::domain_error(
            "rho_from_kappa: kappa >= 1 indicates an attractive pattern; "
            "the model cannot represent it");
    if (kappa < 0.0) {
        if (clamped) *clamped = true;
        return 0.0;
    }
    return 1.0 / std::sqrt(1.0 - kappa) - 1.0;
}

/// Kernel pair-correlation estimate plus its averaged kappa.
struct PcfEstimate {
    std::vector<double> r_grid;
    std::vector<double> g_hat;
    double bandwidth;
    double kappa_avg;
    double lambda_hat;
};

/// Kernel (Epanechnikov) pair-correlation estimator with translation edge
/// correction. The intensity window is the data bounding box inflated by
/// one bandwidth per side; the averaging range for kappa is the whole
/// default radius grid [h, 1.25/sqrt(lambda_hat)].
inline PcfEstimate estimate_pcf(const DeploymentData& data,
                                std::optional<double> bandwidth = std::nullopt,
                                std::optional<std::vector<double>> r_grid =
                                    std::nullopt) {
    const std::size_t n = data.points.size();
    if (n < 30)
        throw std::invalid_argument(
            "estimate_pcf: need at least 30 points, got " + std::to_string(n));
    if (!(data.width() > 0.0) || !(data.height() > 0.0))
        throw std::invalid_argument("estimate_pcf: degenerate (zero-area) window");
    const double lambda0 =
        static_cast<double>(n) / (data.width() * data.height());
    const double h = bandwidth ? *bandwidth : 0.15 / std::sqrt(lambda0);
    if (!(h > 0.0)) throw std::invalid_argument("estimate_pcf: bad bandwidth");
    const double a = data.width() + 2.0 * h;
    const double b = data.height() + 2.0 * h;
    const double area = a * b;
    const double lambda_hat = static_cast<double>(n) / area;

    std::vector<double> rs;
    if (r_grid) {
        rs = *r_grid;
    } else {
        const double rmax = 1.25 / std::sqrt(lambda_hat);
        const int nr = 30;
        for (int i = 0; i < nr; ++i)
            rs.push_back(h + (rmax - h) * i / (nr - 1.0));
    }
    if (rs.empty()) throw std::invalid_argument("estimate_pcf: empty radius grid");
    const double rmax_all = *std::max_element(rs.begin(), rs.end());

    std::vector<double> accum(rs.size(), 0.0);
    const double inv_h = 1.0 / h;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dx = std::fabs(data.points[i].x - data.points[j].x);
            const double dy = std::fabs(data.points[i].y - data.points[j].y);
            const double d = std::hypot(dx, dy);
            if (d > rmax_all + h) continue;
            const double w = (a - dx) * (b - dy);
            if (!(w > 0.0)) continue;
            for (std::size_t k = 0; k < rs.size(); ++k) {
                const double t = (rs[k] - d) * inv_h;
                if (std::fabs(t) >= 1.0) continue;
                const double kern = 0.75 * (1.0 - t * t) * inv_h;
                accum[k] += 2.0 * kern / w;  // ordered pairs
            }
        }
    }
    PcfEstimate est;
    est.r_grid = rs;
    est.bandwidth = h;
    est.lambda_hat = lambda_hat;
    est.g_hat.resize(rs.size());
    const double norm =
        area * area / (static_cast<double>(n) * (static_cast<double>(n) - 1.0));
    double sum = 0.0;
    for (std::size_t k = 0; k < rs.size(); ++k) {
        est.g_hat[k] = norm * accum[k] / (2.0 * constants::pi * rs[k]);
        sum += est.g_hat[k];
    }
    est.kappa_avg = sum / static_cast<double>(rs.size());
    return est;
}

struct FittedModel {
    double kappa_avg;
    double rho_lambda_hat;
    double lambda_hat;
    double lambda_g_hat;
    double lambda_p_hat;
    bool kappa_clamped;
    PcfEstimate pcf;
};

/// Full fitting pipeline: pair-correlation estimate -> kappa -> rho_lambda
/// -> intensity split.
inline FittedModel fit_model(const DeploymentData& data,
                             std::optional<double> bandwidth = std::nullopt) {
    PcfEstimate pcf = estimate_pcf(data, bandwidth);
    FittedModel fm;
    fm.kappa_avg = pcf.kappa_avg;
    fm.rho_lambda_hat = rho_from_kappa(pcf.kappa_avg, &fm.kappa_clamped);
    fm.lambda_hat = pcf.lambda_hat;
    fm.lambda_g_hat = pcf.lambda_hat / (1.0 + fm.rho_lambda_hat);
    fm.lambda_p_hat = pcf.lambda_hat * fm.rho_lambda_hat /
                      (1.0 + fm.rho_lambda_hat);
    fm.pcf = std::move(pcf);
    return fm;
}

}  // namespace gridppp
