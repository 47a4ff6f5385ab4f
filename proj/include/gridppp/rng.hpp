// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace gridppp {

/// Counter-based deterministic random stream built on splitmix64.
///
/// A stream is keyed by (seed, stream index); trial-level parallelism uses
/// one stream per trial index, so estimates are independent of thread count
/// and execution order.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0) {
        // Decorrelate (seed, stream) pairs: fold both through the splitmix
        // finalizer before use.
        state_ = mix(seed + 0x9E3779B97F4A7C15ULL * (stream + 1));
        state_ = mix(state_ ^ 0xBF58476D1CE4E5B9ULL);
    }

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    /// Uniform double in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double next_uniform(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

    /// Exp(1) variate.
    double next_exp() { return -std::log1p(-next_double()); }

    /// Poisson(mu) variate: inversion-by-multiplication for small mu,
    /// Hörmann's PTRS transformed rejection for large mu.
    std::uint64_t next_poisson(double mu) {
        if (mu < 0.0) throw std::domain_error("next_poisson: negative mean");
        if (mu == 0.0) return 0;
        if (mu < 10.0) {
            const double limit = std::exp(-mu);
            double prod = 1.0;
            std::uint64_t k = 0;
            while (true) {
                prod *= next_double();
                if (prod <= limit) return k;
                ++k;
            }
        }
        // PTRS (W. Hörmann, "The transformed rejection method for generating
        // Poisson random variables"), valid for mu >= 10.
        const double b = 0.931 + 2.53 * std::sqrt(mu);
        const double a = -0.059 + 0.02483 * b;
        const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
        const double vr = 0.9277 - 3.6224 / (b - 2.0);
        const double log_mu = std::log(mu);
        while (true) {
            const double u = next_double() - 0.5;
            const double v = next_double();
            const double us = 0.5 - std::fabs(u);
            const double kf = std::floor((2.0 * a / us + b) * u + mu + 0.43);
            if (us >= 0.07 && v <= vr)
                return static_cast<std::uint64_t>(kf);
            if (kf < 0.0 || (us < 0.013 && v > us)) continue;
            const double k = kf;
            if (std::log(v) + std::log(inv_alpha) -
                    std::log(a / (us * us) + b) <=
                k * log_mu - mu - std::lgamma(k + 1.0))
                return static_cast<std::uint64_t>(kf);
        }
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

}  // namespace gridppp
