// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "gridppp/quadrature.hpp"
#include "gridppp/special.hpp"

namespace gridppp {

/// Truncation window for lattice sums/products: indices (z1,z2) in
/// [-n, n]^2. n = 0 requests automatic selection pushing the certified
/// tail bound below tail_target (exact evaluators only; bound evaluators
/// use the window as given).
struct LatticeWindow {
    int n = 0;
    double tail_target = 1e-8;
};

namespace lattice {

/// Fast r^(-alpha) from r^2, with special-cased common exponents.
struct PowKernel {
    double half_alpha;
    int mode;  // 0: generic, 1: alpha == 4, 2: alpha == 3

    explicit PowKernel(double alpha) : half_alpha(alpha / 2.0) {
        if (alpha == 4.0)
            mode = 1;
        else if (alpha == 3.0)
            mode = 2;
        else
            mode = 0;
    }

    double operator()(double d2) const {
        const double inv = 1.0 / d2;
        switch (mode) {
            case 1: return inv * inv;
            case 2: return inv * std::sqrt(inv);
            default: return std::pow(inv, half_alpha);
        }
    }
};

/// Phi_alpha(b) = integral_b^inf w / (1 + w^alpha) dw, alpha > 2.
inline double phi_alpha(double b, double alpha) {
    if (!(alpha > 2.0)) throw std::domain_error("phi_alpha: alpha must be > 2");
    if (b < 0.0) throw std::domain_error("phi_alpha: b must be >= 0");
    const double B = std::max(b, 4.0);
    double head = 0.0;
    if (b < B) {
        QuadratureSpec spec;
        spec.abs_tol = 1e-12;
        spec.rel_tol = 1e-12;
        head = integrate([alpha](double w) { return w / (1.0 + std::pow(w, alpha)); },
                         b, B, spec)
                   .value;
    }
    // Tail: expand 1/(1+w^alpha) in powers of w^(-alpha); B >= 4 makes the
    // alternating series converge geometrically.
    double tail = 0.0;
    double term;
    int j = 1;
    const double ratio = std::pow(B, -alpha);
    double pw = std::pow(B, 2.0 - alpha);
    do {
        term = pw / (j * alpha - 2.0);
        tail += (j % 2 == 1) ? term : -term;
        pw *= ratio;
        ++j;
    } while (term > 1e-18 && j < 200);
    return head + tail;
}

/// Closed form of Phi_alpha(0) = (pi/alpha) / sin(2 pi/alpha).
inline double phi_alpha_zero(double alpha) {
    return (constants::pi / alpha) / std::sin(2.0 * constants::pi / alpha);
}

/// c * integral_a^inf v^(1-alpha) / (1 + c v^(-alpha)) dv.
/// Scale-reduces to c^(2/alpha) * Phi_alpha(a c^(-1/alpha)); for alpha = 4
/// the elementary antiderivative (sqrt(c)/2) atan(sqrt(c)/a^2) is used
/// unless force_quadrature is set (kept as an internal cross-check).
inline double c_times_m(double c, double a, double alpha,
                        bool force_quadrature = false) {
    if (c < 0.0 || a < 0.0) throw std::domain_error("c_times_m: negative argument");
    if (c == 0.0) return 0.0;
    if (alpha == 4.0 && !force_quadrature) {
        const double sc = std::sqrt(c);
        const double at = (a == 0.0) ? constants::pi / 2.0
                                     : std::atan(sc / (a * a));
        return 0.5 * sc * at;
    }
    const double b = a * std::pow(c, -1.0 / alpha);
    const double phi = (b == 0.0) ? phi_alpha_zero(alpha) : phi_alpha(b, alpha);
    return std::pow(c, 2.0 / alpha) * phi;
}

/// J(a) = integral_a^inf v log(1 + c v^(-alpha)) dv (closed form by parts).
inline double j_radial(double a, double c, double alpha) {
    if (c == 0.0) return 0.0;
    const double boundary =
        (a == 0.0) ? 0.0
                   : -0.5 * a * a * std::log1p(c * std::pow(a, -alpha));
    return boundary + 0.5 * alpha * c_times_m(c, a, alpha);
}

/// Angular coefficients C_j = integral_0^{pi/4} cos(theta)^(j*alpha-2)
/// dtheta used by the series form of the square-exterior tail integral.
struct TailCoeffs {
    double alpha;
    double c[4];

    explicit TailCoeffs(double alpha_) : alpha(alpha_) {
        QuadratureSpec spec;
        spec.abs_tol = 1e-13;
        spec.rel_tol = 1e-13;
        for (int j = 1; j <= 4; ++j) {
            const double p = j * alpha - 2.0;
            c[j - 1] = integrate(
                           [p](double th) { return std::pow(std::cos(th), p); },
                           0.0, constants::pi / 4.0, spec)
                           .value;
        }
    }
};

/// Integral of log(1 + c ||y||^(-alpha)) over the plane outside the square
/// [-L, L]^2. Series path (x = c L^(-alpha) small) or exact nested
/// quadrature fallback. `resid` receives a bound on the series truncation.
inline double tail_integral_log(double c, double alpha, double L,
                                const TailCoeffs& coeffs, double* resid = nullptr) {
    if (c == 0.0) {
        if (resid) *resid = 0.0;
        return 0.0;
    }
    const double x = c * std::pow(L, -alpha);
    if (x <= 0.1) {
        double sum = 0.0;
        double cj = 1.0;
        for (int j = 1; j <= 4; ++j) {
            cj *= c;
            const double term = cj * std::pow(L, 2.0 - j * alpha) *
                                coeffs.c[j - 1] / (j * (j * alpha - 2.0));
            sum += (j % 2 == 1) ? 8.0 * term : -8.0 * term;
        }
        if (resid)
            *resid = 8.0 * std::pow(c, 5.0) * std::pow(L, 2.0 - 5.0 * alpha) *
                     coeffs.c[0] / (5.0 * (5.0 * alpha - 2.0));
        return sum;
    }
    // Exact (to quadrature tolerance) fallback for large x.
    QuadratureSpec spec;
    spec.abs_tol = 1e-10;
    spec.rel_tol = 1e-10;
    const double val =
        8.0 * integrate(
                  [c, alpha, L](double th) {
                      return j_radial(L / std::cos(th), c, alpha);
                  },
                  0.0, constants::pi / 4.0, spec)
                  .value;
    if (resid) *resid = 1e-9 * std::max(1.0, std::fabs(val));
    return val;
}

/// Certified bound on the midpoint-rule error of approximating the far
/// lattice sum of log(1 + c ||u+z||^(-alpha)) by tail_integral_log with
/// L = n + 1/2. Falls back to the whole tail magnitude when the curvature
/// bound's validity condition fails.
inline double midpoint_bound(double c, double alpha, double L,
                             const TailCoeffs& coeffs) {
    if (c == 0.0) return 0.0;
    const double Lm = L - constants::sqrt2;
    if (Lm > 1.0 && c * std::pow(Lm, -alpha) <= 1.0)
        return constants::pi * c * (alpha + 1.0) / 3.0 * std::pow(Lm, -alpha);
    const double Lsafe = std::max(Lm, 0.7);
    double resid = 0.0;
    return tail_integral_log(c, alpha, Lsafe, coeffs, &resid) + resid;
}

/// Certified upper bound on sum over ||z||_inf > n of c ||u+z||^(-alpha),
/// valid for any shift u in the unit cell (shell-counting + Hurwitz zeta).
inline double tail_sum_upper_linear(double c, double alpha, int n) {
    if (c == 0.0) return 0.0;
    const double q = n + 0.5;
    return 8.0 * c * (zeta_hurwitz_upper(alpha - 1.0, q) +
                      0.5 * zeta_hurwitz_upper(alpha, q));
}

/// Smallest window half-width pushing the certified correction residual
/// (midpoint bound + series remainder) below `target`.
inline int auto_window(double c_max, double alpha, double target,
                       int n_min = 8, int n_max = 1200) {
    if (c_max <= 0.0) return n_min;
    const double L = std::pow(constants::pi * c_max * (alpha + 1.0) /
                                  (3.0 * target),
                              1.0 / alpha) +
                     constants::sqrt2;
    const int n = static_cast<int>(std::ceil(L - 0.5)) + 1;
    return std::clamp(n, n_min, n_max);
}

/// Precomputed offsets of the lattice window [-n, n]^2 (z = 0 stored first
/// so it can be skipped cheaply).
class Grid {
public:
    explicit Grid(int n) : n_(n) {
        if (n < 0) throw std::invalid_argument("lattice::Grid: n must be >= 0");
        zx_.reserve((2 * n + 1) * (2 * n + 1));
        zy_.reserve(zx_.capacity());
        zx_.push_back(0.0);
        zy_.push_back(0.0);
        for (int z1 = -n; z1 <= n; ++z1)
            for (int z2 = -n; z2 <= n; ++z2) {
                if (z1 == 0 && z2 == 0) continue;
                zx_.push_back(static_cast<double>(z1));
                zy_.push_back(static_cast<double>(z2));
            }
    }

    int n() const { return n_; }
    double boundary() const { return n_ + 0.5; }

    /// Sum of log(1 + c ||u+z||^(-alpha)) over the window.
    double sum_log1p(double ux, double uy, double c, const PowKernel& pk,
                     bool include_zero) const {
        double s = 0.0;
        const std::size_t start = include_zero ? 0 : 1;
        for (std::size_t i = start; i < zx_.size(); ++i) {
            const double dx = ux + zx_[i];
            const double dy = uy + zy_[i];
            s += std::log1p(c * pk(dx * dx + dy * dy));
        }
        return s;
    }

    /// Sum of c ||u+z||^(-alpha) over the window.
    double sum_linear(double ux, double uy, double c, const PowKernel& pk,
                      bool include_zero) const {
        double s = 0.0;
        const std::size_t start = include_zero ? 0 : 1;
        for (std::size_t i = start; i < zx_.size(); ++i) {
            const double dx = ux + zx_[i];
            const double dy = uy + zy_[i];
            s += c * pk(dx * dx + dy * dy);
        }
        return s;
    }

private:
    int n_;
    std::vector<double> zx_, zy_;
};

}  // namespace lattice
}  // namespace gridppp
