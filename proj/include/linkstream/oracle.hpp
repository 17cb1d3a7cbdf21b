#pragma once

// Two independent oracles for the pair delta-density, used to verify the
// closed-form implementation. Both work from first principles on the raw
// occurrence times and deliberately share no arithmetic with density.hpp:
//
//  - exact_density_oracle measures the union of intervals from which a
//    window of length delta catches an occurrence, via an interval sweep;
//  - mc_density_oracle samples window starts uniformly and counts hits.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>

#include "linkstream/stream.hpp"

namespace linkstream {

struct OracleEstimate {
    double value = 0.0;
    std::optional<double> stderr_est;   // Monte Carlo only
    std::optional<std::size_t> samples; // Monte Carlo only
};

namespace detail {

inline void check_oracle_args(double delta, double alpha, double omega) {
    if (!(alpha < omega)) throw std::invalid_argument("oracle: need alpha < omega");
    if (!(delta >= 0.0) || delta >= omega - alpha)
        throw std::invalid_argument("oracle: need 0 <= delta < duration");
}

}  // namespace detail

/// Exact interval-measure oracle. A window [t, t + delta] contains the
/// occurrence t_i iff t lies in [t_i - delta, t_i]; the density is the
/// measure of the union of those intervals, clipped to the admissible
/// start range [alpha, omega - delta], divided by omega - alpha - delta.
inline OracleEstimate exact_density_oracle(const ContactSeries& series, double delta,
                                           double alpha, double omega) {
    detail::check_oracle_args(delta, alpha, omega);
    const double hi_limit = omega - delta;
    double covered = 0.0;
    double cursor = alpha;  // everything below cursor is already accounted for
    for (double t : series.times) {
        const double lo = std::max(t - delta, cursor);
        const double hi = std::min(t, hi_limit);
        if (hi > lo) {
            covered += hi - lo;
            cursor = hi;
        } else {
            cursor = std::max(cursor, hi);
        }
    }
    return OracleEstimate{covered / (omega - alpha - delta), std::nullopt, std::nullopt};
}

/// Monte Carlo oracle: draws uniform window starts and counts windows
/// containing at least one occurrence. Returns the hit fraction with its
/// binomial standard error.
inline OracleEstimate mc_density_oracle(const ContactSeries& series, double delta, double alpha,
                                        double omega, std::size_t samples, std::uint64_t seed) {
    detail::check_oracle_args(delta, alpha, omega);
    if (samples < 1) throw std::invalid_argument("oracle: need at least 1 sample");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> start(alpha, omega - delta);
    std::size_t hits = 0;
    const auto& times = series.times;
    for (std::size_t i = 0; i < samples; ++i) {
        const double t = start(rng);
        auto it = std::lower_bound(times.begin(), times.end(), t);
        if (it != times.end() && *it <= t + delta) ++hits;
    }
    const double n = static_cast<double>(samples);
    const double p = static_cast<double>(hits) / n;
    const double se = std::sqrt(p * (1.0 - p) / n);
    return OracleEstimate{p, se, samples};
}

}  // namespace linkstream
