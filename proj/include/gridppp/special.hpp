// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace gridppp {

/// Error function, implemented in-module (no libm dependency assumed for
/// the guarantee): Maclaurin series in long double for |z| <= 4, asymptotic
/// complementary expansion beyond. Absolute error < 1e-10 everywhere
/// (in practice < 1e-13).
inline double erf(double z) {
    if (std::isnan(z)) return z;
    const double az = std::fabs(z);
    double result;
    if (az <= 4.0) {
        // erf(z) = 2/sqrt(pi) * sum_k (-1)^k z^(2k+1) / (k! (2k+1))
        const long double x = az;
        const long double x2 = x * x;
        long double term = x;  // z^(2k+1)/k! running factor
        long double sum = x;
        for (int k = 1; k < 200; ++k) {
            term *= -x2 / k;
            const long double add = term / (2 * k + 1);
            sum += add;
            if (std::fabs(static_cast<double>(add)) <
                1e-22L * std::fabs(static_cast<double>(sum)) + 1e-300)
                break;
        }
        const long double two_over_sqrt_pi =
            1.128379167095512573896158903121545172L;
        result = static_cast<double>(two_over_sqrt_pi * sum);
    } else {
        // erfc(z) ~ exp(-z^2)/(z sqrt(pi)) * [1 + sum_k (-1)^k (2k-1)!!/(2z^2)^k]
        const long double x = az;
        const long double inv2x2 = 1.0L / (2.0L * x * x);
        long double term = 1.0L, sum = 1.0L;
        for (int k = 1; k < 40; ++k) {
            const long double next = term * -(2 * k - 1) * inv2x2;
            if (std::fabs(static_cast<double>(next)) >=
                std::fabs(static_cast<double>(term)))
                break;  // asymptotic series: stop at smallest term
            term = next;
            sum += term;
        }
        const long double sqrt_pi = 1.772453850905516027298167483341145183L;
        const long double erfc =
            std::exp(-static_cast<long double>(x) * x) / (x * sqrt_pi) * sum;
        result = static_cast<double>(1.0L - erfc);
    }
    return z < 0.0 ? -result : result;
}

/// Certified upper bound on the Hurwitz zeta function
/// sum_{k>=0} (q+k)^(-s), s > 1, q > 0:
/// direct sum of the first N terms plus the integral-comparison cap
/// (q+N)^(-s) + (q+N)^(1-s)/(s-1) on the remainder.
inline double zeta_hurwitz_upper(double s, double q) {
    if (!(s > 1.0)) throw std::domain_error("zeta_hurwitz_upper: requires s > 1");
    if (!(q > 0.0)) throw std::domain_error("zeta_hurwitz_upper: requires q > 0");
    constexpr int N = 24;
    double sum = 0.0;
    for (int k = 0; k < N; ++k) sum += std::pow(q + k, -s);
    const double qN = q + N;
    sum += std::pow(qN, -s) + std::pow(qN, 1.0 - s) / (s - 1.0);
    return sum;
}

namespace constants {
inline constexpr double pi = 3.14159265358979323846;
inline constexpr double sqrt2 = 1.41421356237309504880;
/// 95% two-sided normal quantile, used by the Wilson interval.
inline constexpr double z95 = 1.959963984540054;
}  // namespace constants

}  // namespace gridppp
