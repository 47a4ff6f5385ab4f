// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gridppp/distributions.hpp"
#include "gridppp/quadrature.hpp"
#include "gridppp/special.hpp"

namespace gridppp {

enum class AssocMethod { Exact, Lower, Upper };

struct AssociationResult {
    double p_assoc_ppp;
    double p_assoc_grid;
    AssocMethod method;
};

/// Probability that the typical user associates with the random (PPP)
/// component under max-mean-power association. Depends on the inputs only
/// through rho = rho_lambda * eta^(2/alpha).
inline double assoc_prob_ppp(double rho_lambda, double eta, double alpha,
                             QuadratureSpec spec = {}) {
    if (!(rho_lambda > 0.0) || !(eta > 0.0))
        throw std::invalid_argument("assoc_prob_ppp: rho_lambda, eta must be > 0");
    if (!(alpha > 2.0))
        throw std::invalid_argument("assoc_prob_ppp: alpha must be > 2");
    const double rho = rho_lambda * std::pow(eta, 2.0 / alpha);
    return area_fraction_ppp(rho, spec);
}

inline AssociationResult assoc_exact(double rho_lambda, double eta,
                                     double alpha, QuadratureSpec spec = {}) {
    const double p = assoc_prob_ppp(rho_lambda, eta, alpha, spec);
    return {p, 1.0 - p, AssocMethod::Exact};
}

struct AssociationBounds {
    double lower;      ///< clamped to [0,1]
    double upper;      ///< clamped to [0,1]
    double raw_lower;  ///< analytic value before clamping
    double raw_upper;
    bool clamped;
};

/// Closed-form lower/upper bounds on assoc_prob_ppp as a function of
/// rho = rho_lambda * eta^(2/alpha). The two bounds differ exactly by
/// gamma(rho) = 0.0956 (e^{-pi rho/4} - e^{-pi rho/2}).
inline AssociationBounds assoc_bounds(double rho) {
    if (!(rho > 0.0))
        throw std::invalid_argument("assoc_bounds: rho must be > 0");
    const double pi = constants::pi;
    const double beta = erf(std::sqrt(pi * rho / 2.0)) -
                        erf(std::sqrt(pi * rho / 4.0));
    const double upper = 1.0 + std::expm1(-pi * rho / 2.0) / rho +
                         (pi / 2.0 - 1.0) * beta /
                             (std::sqrt(rho) * (constants::sqrt2 - 1.0));
    const double gamma =
        0.0956 * (std::exp(-pi * rho / 4.0) - std::exp(-pi * rho / 2.0));
    const double lower = upper - gamma;
    AssociationBounds b;
    b.raw_lower = lower;
    b.raw_upper = upper;
    b.lower = std::clamp(lower, 0.0, 1.0);
    b.upper = std::clamp(upper, 0.0, 1.0);
    b.clamped = (b.lower != lower) || (b.upper != upper);
    return b;
}

}  // namespace gridppp
