#pragma once

// Synthetic stream generators with known ground truth: periodic pairs,
// staggered periodic stars, periodic cliques, Poisson pairs and one-off
// bursts. Stochastic kinds are reproducible from a seed.

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "linkstream/stream.hpp"

namespace linkstream::synth {

inline void check_window(double alpha, double omega) {
    if (!(alpha < omega)) throw std::invalid_argument("generator: need alpha < omega");
}

/// Occurrences at alpha + phase, alpha + phase + period, ... up to omega.
inline std::vector<RawLink> periodic_rows(const std::string& u, const std::string& v,
                                          double period, double phase, double alpha,
                                          double omega) {
    check_window(alpha, omega);
    if (!(period > 0.0)) throw std::invalid_argument("periodic: period must be > 0");
    if (!(phase >= 0.0) || phase >= period)
        throw std::invalid_argument("periodic: need 0 <= phase < period");
    std::vector<RawLink> rows;
    for (std::size_t i = 0;; ++i) {
        const double t = alpha + phase + static_cast<double>(i) * period;
        if (t > omega) break;
        rows.push_back(RawLink{t, u, v});
    }
    return rows;
}

inline LinkStream gen_periodic(const std::string& u, const std::string& v, double period,
                               double phase, double alpha, double omega) {
    return build_stream(periodic_rows(u, v, period, phase, alpha, omega), alpha, omega);
}

/// Hub linked periodically to leaf-1 .. leaf-n, leaf i phase-shifted by
/// i * stagger (mod period). No leaf ever talks to another leaf.
inline std::vector<RawLink> star_rows(const std::string& hub, std::size_t leaf_count,
                                      double period, double stagger, double alpha,
                                      double omega) {
    if (leaf_count < 1) throw std::invalid_argument("star: need at least one leaf");
    if (!(stagger >= 0.0)) throw std::invalid_argument("star: stagger must be >= 0");
    std::vector<RawLink> rows;
    for (std::size_t i = 0; i < leaf_count; ++i) {
        const double phase = std::fmod(static_cast<double>(i) * stagger, period);
        std::string leaf = "leaf-" + std::to_string(i + 1);
        auto pair_rows = periodic_rows(hub, leaf, period, phase, alpha, omega);
        rows.insert(rows.end(), pair_rows.begin(), pair_rows.end());
    }
    return rows;
}

inline LinkStream gen_star(const std::string& hub, std::size_t leaf_count, double period,
                           double stagger, double alpha, double omega) {
    return build_stream(star_rows(hub, leaf_count, period, stagger, alpha, omega), alpha, omega);
}

/// Every unordered pair of the given nodes occurs periodically (phase 0).
inline std::vector<RawLink> clique_rows(const std::vector<std::string>& nodes, double period,
                                        double alpha, double omega) {
    if (nodes.size() < 2) throw std::invalid_argument("clique: need at least 2 nodes");
    std::vector<RawLink> rows;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = i + 1; j < nodes.size(); ++j) {
            auto pair_rows = periodic_rows(nodes[i], nodes[j], period, 0.0, alpha, omega);
            rows.insert(rows.end(), pair_rows.begin(), pair_rows.end());
        }
    return rows;
}

inline LinkStream gen_clique(const std::vector<std::string>& nodes, double period, double alpha,
                             double omega) {
    return build_stream(clique_rows(nodes, period, alpha, omega), alpha, omega);
}

/// Poisson pair: exponential inter-arrivals at the given rate.
inline std::vector<RawLink> poisson_rows(const std::string& u, const std::string& v, double rate,
                                         double alpha, double omega, std::uint64_t seed) {
    check_window(alpha, omega);
    if (!(rate > 0.0)) throw std::invalid_argument("poisson: rate must be > 0");
    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> gap(rate);
    std::vector<RawLink> rows;
    for (double t = alpha + gap(rng); t <= omega; t += gap(rng))
        rows.push_back(RawLink{t, u, v});
    return rows;
}

inline LinkStream gen_poisson(const std::string& u, const std::string& v, double rate,
                              double alpha, double omega, std::uint64_t seed) {
    return build_stream(poisson_rows(u, v, rate, alpha, omega, seed), alpha, omega);
}

/// All occurrences uniform inside one short window [start, start + length].
inline std::vector<RawLink> burst_rows(const std::string& u, const std::string& v, double start,
                                       double length, std::size_t count, double alpha,
                                       double omega, std::uint64_t seed) {
    check_window(alpha, omega);
    if (count < 1) throw std::invalid_argument("burst: need at least one event");
    if (!(length > 0.0)) throw std::invalid_argument("burst: length must be > 0");
    if (start < alpha || start + length > omega)
        throw std::invalid_argument("burst: window must lie inside [alpha, omega]");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> at(start, start + length);
    std::vector<RawLink> rows;
    rows.reserve(count);
    for (std::size_t i = 0; i < count; ++i) rows.push_back(RawLink{at(rng), u, v});
    return rows;
}

inline LinkStream gen_burst(const std::string& u, const std::string& v, double start,
                            double length, std::size_t count, double alpha, double omega,
                            std::uint64_t seed) {
    return build_stream(burst_rows(u, v, start, length, count, alpha, omega, seed), alpha, omega);
}

enum class Kind { periodic, poisson, burst, star, clique };

/// Declarative generator description, mirroring the CLI's synth options.
/// Identical spec + seed always produces the identical stream.
struct GeneratorSpec {
    Kind kind = Kind::periodic;
    std::string u = "a";
    std::string v = "b";
    std::vector<std::string> nodes;  // clique members
    std::string hub = "hub";
    std::size_t leaf_count = 3;
    double period = 1.0;
    double phase = 0.0;
    double stagger = 0.0;
    double rate = 1.0;
    double burst_start = 0.0;
    double burst_length = 1.0;
    std::size_t burst_count = 1;
    double alpha = 0.0;
    double omega = 1.0;
    std::uint64_t seed = 0;

    std::vector<RawLink> rows() const {
        switch (kind) {
            case Kind::periodic: return periodic_rows(u, v, period, phase, alpha, omega);
            case Kind::poisson: return poisson_rows(u, v, rate, alpha, omega, seed);
            case Kind::burst:
                return burst_rows(u, v, burst_start, burst_length, burst_count, alpha, omega,
                                  seed);
            case Kind::star: return star_rows(hub, leaf_count, period, stagger, alpha, omega);
            case Kind::clique: return clique_rows(nodes, period, alpha, omega);
        }
        throw std::invalid_argument("GeneratorSpec: unknown kind");
    }

    LinkStream generate() const { return build_stream(rows(), alpha, omega); }
};

}  // namespace linkstream::synth
