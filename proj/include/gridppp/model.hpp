// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <variant>

namespace gridppp {

/// Full parameterization of the grid+PPP superposition model.
///
/// The grid component is a square lattice of pitch s = 1/sqrt(lambda_g)
/// shifted by a single uniform vector; the random component is a PPP of
/// intensity lambda_p. Powers are linear-scale transmit powers.
struct ModelConfig {
    double lambda_g = 1.0;  ///< grid intensity (points per unit area), 0 disables the grid
    double lambda_p = 1.0;  ///< PPP intensity, 0 disables the random component
    double p_g = 1.0;       ///< grid transmit power (linear)
    double p_p = 1.0;       ///< PPP transmit power (linear)
    double alpha = 4.0;     ///< path-loss exponent, must exceed 2

    ModelConfig() = default;
    ModelConfig(double lg, double lp, double pg, double pp, double a)
        : lambda_g(lg), lambda_p(lp), p_g(pg), p_p(pp), alpha(a) {
        validate();
    }

    void validate() const {
        if (!(alpha > 2.0))
            throw std::invalid_argument("ModelConfig: alpha must be > 2, got " + std::to_string(alpha));
        if (lambda_g < 0.0 || lambda_p < 0.0)
            throw std::invalid_argument("ModelConfig: intensities must be non-negative");
        if (lambda_g == 0.0 && lambda_p == 0.0)
            throw std::invalid_argument("ModelConfig: at least one component must have positive intensity");
        if (!(p_g > 0.0) || !(p_p > 0.0))
            throw std::invalid_argument("ModelConfig: transmit powers must be positive");
    }

    bool grid_enabled() const { return lambda_g > 0.0; }
    bool ppp_enabled() const { return lambda_p > 0.0; }

    /// Lattice pitch s = 1/sqrt(lambda_g). Requires an active grid.
    double pitch() const {
        if (!grid_enabled())
            throw std::domain_error("pitch: model degenerates to pure PPP (lambda_g = 0)");
        return 1.0 / std::sqrt(lambda_g);
    }

    /// Intensity ratio lambda_p / lambda_g. Requires an active grid.
    double rho_lambda() const {
        if (!grid_enabled())
            throw std::domain_error("rho_lambda: model degenerates to pure PPP (lambda_g = 0)");
        return lambda_p / lambda_g;
    }

    /// Power ratio p_p / p_g.
    double eta() const { return p_p / p_g; }

    /// Effective association parameter rho = rho_lambda * eta^(2/alpha).
    double rho() const { return rho_lambda() * std::pow(eta(), 2.0 / alpha); }
};

struct DerivedRatios {
    double rho_lambda;
    double eta;
    double rho;
    double s;
};

/// All four derived scalars at once; throws if the grid is disabled.
inline DerivedRatios derive_ratios(const ModelConfig& config) {
    config.validate();
    return {config.rho_lambda(), config.eta(), config.rho(), config.pitch()};
}

/// Unbounded power-law path gain r^(-alpha).
struct PowerLaw {
    double alpha;
};

/// Gain min(C0, r^(-alpha)): received power bounded near the transmitter.
struct BoundedSingleSlope {
    double c0;
    double alpha;
};

/// Two-slope bounded gain, continuous at the breakpoint r1.
/// For r < r1 the gain is min(C0, r^(-alpha1)); beyond r1 it is
/// min(C1 r^(-alpha1), C2 r^(-alpha2)) with C1, C2 fixed by continuity.
struct DualSlope {
    double c0;
    double r1;
    double alpha1;
    double alpha2;
    double c1;  // derived: continuity of the first branch at r1
    double c2;  // derived: both branches equal at r1

    DualSlope(double c0_, double r1_, double a1, double a2)
        : c0(c0_), r1(r1_), alpha1(a1), alpha2(a2) {
        if (!(c0 > 0.0) || !(r1 > 0.0))
            throw std::invalid_argument("DualSlope: constants must be positive");
        if (!(alpha1 > 2.0) || alpha2 < alpha1)
            throw std::invalid_argument("DualSlope: need alpha2 >= alpha1 > 2");
        // gain just below r1 is min(c0, r1^-alpha1); c1, c2 make both
        // r>=r1 branches take that value at r1.
        const double g1 = std::min(c0, std::pow(r1, -alpha1));
        c1 = g1 * std::pow(r1, alpha1);
        c2 = g1 * std::pow(r1, alpha2);
    }
};

class PathLossModel {
public:
    using Variant = std::variant<PowerLaw, BoundedSingleSlope, DualSlope>;

    static PathLossModel power_law(double alpha) {
        check_alpha(alpha);
        return PathLossModel(PowerLaw{alpha});
    }
    static PathLossModel bounded_single_slope(double c0, double alpha) {
        check_alpha(alpha);
        if (!(c0 > 0.0)) throw std::invalid_argument("BoundedSingleSlope: C0 must be positive");
        return PathLossModel(BoundedSingleSlope{c0, alpha});
    }
    static PathLossModel dual_slope(double c0, double r1, double alpha1, double alpha2) {
        return PathLossModel(DualSlope(c0, r1, alpha1, alpha2));
    }

    /// Path gain at distance r; strictly positive and non-increasing.
    double gain(double r) const {
        return std::visit(
            [r](const auto& m) { return eval(m, r); }, variant_);
    }

    const Variant& variant() const { return variant_; }

private:
    explicit PathLossModel(Variant v) : variant_(std::move(v)) {}

    static void check_alpha(double a) {
        if (!(a > 2.0)) throw std::invalid_argument("PathLossModel: alpha must be > 2");
    }

    static double eval(const PowerLaw& m, double r) {
        if (!(r > 0.0))
            throw std::domain_error("PowerLaw gain is singular at r = 0");
        return std::pow(r, -m.alpha);
    }
    static double eval(const BoundedSingleSlope& m, double r) {
        if (r < 0.0) throw std::domain_error("path gain: negative distance");
        if (r == 0.0) return m.c0;
        return std::min(m.c0, std::pow(r, -m.alpha));
    }
    static double eval(const DualSlope& m, double r) {
        if (r < 0.0) throw std::domain_error("path gain: negative distance");
        if (r < m.r1) {
            if (r == 0.0) return m.c0;
            return std::min(m.c0, std::pow(r, -m.alpha1));
        }
        return std::min(m.c1 * std::pow(r, -m.alpha1), m.c2 * std::pow(r, -m.alpha2));
    }

    Variant variant_;
};

/// SIR threshold, stored linear; constructible from decibels.
struct SirThreshold {
    double t_linear;

    explicit SirThreshold(double linear) : t_linear(linear) {
        if (!(t_linear > 0.0))
            throw std::invalid_argument("SirThreshold: threshold must be positive");
    }
    static SirThreshold from_db(double t_db) {
        return SirThreshold(std::pow(10.0, t_db / 10.0));
    }
    double db() const { return 10.0 * std::log10(t_linear); }
};

}  // namespace gridppp
