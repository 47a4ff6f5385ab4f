// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <stdexcept>

#include "gridppp/quadrature.hpp"
#include "gridppp/special.hpp"

namespace gridppp {

/// CDF of the distance from the typical point to the nearest grid point
/// (randomly shifted square lattice of pitch s). The middle branch is the
/// circle/square intersection-area fraction; it is continuous, reaches 1 at
/// r = s/sqrt(2), and differentiates to grid_nearest_pdf. (A commonly seen
/// alternative printing of this branch evaluates to -1 at r = s/sqrt(2) and
/// is inconsistent with the PDF; we use the intersection-area form.)
inline double grid_nearest_cdf(double r, double s) {
    if (!(s > 0.0)) throw std::invalid_argument("grid_nearest_cdf: s must be > 0");
    if (r <= 0.0) return 0.0;
    const double x = r / s;  // normalized radius, pitch-1 lattice
    if (x <= 0.5) return constants::pi * x * x;
    if (x < 1.0 / constants::sqrt2) {
        const double x2 = x * x;
        return constants::pi * x2 - 4.0 * x2 * std::acos(0.5 / x) +
               std::sqrt(4.0 * x2 - 1.0);
    }
    return 1.0;
}

/// PDF matching grid_nearest_cdf.
inline double grid_nearest_pdf(double r, double s) {
    if (!(s > 0.0)) throw std::invalid_argument("grid_nearest_pdf: s must be > 0");
    if (r <= 0.0) return 0.0;
    const double x = r / s;
    if (x <= 0.5) return 2.0 * constants::pi * r / (s * s);
    if (x <= 1.0 / constants::sqrt2)
        return 2.0 * constants::pi * r / (s * s) -
               (8.0 * r / (s * s)) * std::acos(s / (2.0 * r));
    return 0.0;
}

/// Nearest-distance CDF of a PPP with intensity lambda_p (void probability).
inline double ppp_nearest_cdf(double r, double lambda_p) {
    if (lambda_p < 0.0)
        throw std::invalid_argument("ppp_nearest_cdf: negative intensity");
    if (r <= 0.0 || lambda_p == 0.0) return 0.0;
    return -std::expm1(-constants::pi * lambda_p * r * r);
}

/// Nearest-distance PDF of a PPP with intensity lambda_p.
inline double ppp_nearest_pdf(double r, double lambda_p) {
    if (lambda_p < 0.0)
        throw std::invalid_argument("ppp_nearest_pdf: negative intensity");
    if (r <= 0.0 || lambda_p == 0.0) return 0.0;
    return 2.0 * constants::pi * lambda_p * r *
           std::exp(-constants::pi * lambda_p * r * r);
}

/// Nearest-distance CDF of the superposition: product-complement of the two
/// independent component laws. Pass s <= 0 to disable the grid component,
/// lambda_p = 0 to disable the random component (at least one must be active).
inline double superposition_nearest_cdf(double r, double s, double lambda_p) {
    const bool grid = s > 0.0;
    const bool ppp = lambda_p > 0.0;
    if (!grid && !ppp)
        throw std::invalid_argument(
            "superposition_nearest_cdf: no active component");
    if (!grid) return ppp_nearest_cdf(r, lambda_p);
    if (!ppp) return grid_nearest_cdf(r, s);
    const double fg = grid_nearest_cdf(r, s);
    const double fp = ppp_nearest_cdf(r, lambda_p);
    return 1.0 - (1.0 - fg) * (1.0 - fp);
}

/// Average area fraction of the plane covered by cells of the random (PPP)
/// component, as a function of the intensity ratio rho_lambda. Equal to the
/// probability that a uniformly random location is closer to a PPP point
/// than to the nearest grid point, evaluated by quadrature in normalized
/// coordinates (serving-distance density 2 pi (rho/4) r exp(-pi (rho/4) r^2)
/// against the survival function of the pitch-2 lattice nearest distance).
inline double area_fraction_ppp(double rho, QuadratureSpec spec = {}) {
    if (!(rho > 0.0))
        throw std::invalid_argument("area_fraction_ppp: rho must be > 0");
    const double q = constants::pi * rho / 4.0;
    auto integrand = [q, rho](double r) {
        const double f = 2.0 * q * r * std::exp(-q * r * r);
        return f * (1.0 - grid_nearest_cdf(r, 2.0));
    };
    // Split at the CDF branch point r = 1 (pitch-2 lattice) for smoothness.
    const double part1 = integrate(integrand, 0.0, 1.0, spec).value;
    const double part2 = integrate(integrand, 1.0, constants::sqrt2, spec).value;
    return part1 + part2;
}

inline double area_fraction_grid(double rho, QuadratureSpec spec = {}) {
    return 1.0 - area_fraction_ppp(rho, spec);
}

}  // namespace gridppp
