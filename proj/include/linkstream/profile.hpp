#pragma once

// Geometric delta grids, density profiles over a grid, characteristic-time
// extraction (largest single-step increase of a profile) and CCDF outputs.

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "linkstream/density.hpp"
#include "linkstream/parallel.hpp"
#include "linkstream/stream.hpp"

namespace linkstream {

/// Ascending delta values min, min*ratio, min*ratio^2, ... with max
/// appended as the final point, so profile endpoints always land exactly
/// on the full duration when max is the stream duration.
struct DeltaGrid {
    double min = 0.0;
    double max = 0.0;
    double ratio = 0.0;
    std::vector<double> points;

    std::size_t size() const { return points.size(); }
};

inline DeltaGrid geometric_grid(double min, double max, double ratio) {
    if (!(min > 0.0) || !(max > min))
        throw std::invalid_argument("geometric_grid: need 0 < min < max");
    if (!(ratio > 1.0)) throw std::invalid_argument("geometric_grid: ratio must be > 1");
    DeltaGrid grid;
    grid.min = min;
    grid.max = max;
    grid.ratio = ratio;
    for (double p = min; p < max; p *= ratio) grid.points.push_back(p);
    grid.points.push_back(max);
    return grid;
}

/// Delta-density values aligned with a grid. Values are non-decreasing by
/// construction: the underlying curve is mathematically monotone, so any
/// decrease beyond floating-point jitter is an evaluation bug and throws;
/// jitter itself is rounded up to keep the invariant exact.
struct DensityProfile {
    std::string target;
    DeltaGrid grid;
    std::vector<double> values;
};

namespace detail {

constexpr double kMonotoneJitter = 1e-9;

inline DensityProfile finalize_profile(std::string target, DeltaGrid grid,
                                       std::vector<double> values) {
    if (values.size() != grid.points.size())
        throw std::logic_error("DensityProfile: values/grid size mismatch");
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] < values[i - 1]) {
            if (values[i - 1] - values[i] > kMonotoneJitter)
                throw std::logic_error("DensityProfile: non-monotone density values");
            values[i] = values[i - 1];
        }
    }
    return DensityProfile{std::move(target), std::move(grid), std::move(values)};
}

}  // namespace detail

/// Profile of an arbitrary density function of delta over a grid.
inline DensityProfile density_profile(const std::function<double(double)>& evaluate,
                                      const DeltaGrid& grid, std::string target = {}) {
    std::vector<double> values;
    values.reserve(grid.size());
    for (double d : grid.points) values.push_back(evaluate(d));
    return detail::finalize_profile(std::move(target), grid, std::move(values));
}

inline DensityProfile pair_profile(const LinkStream& L, PairKey pair, const DeltaGrid& grid) {
    const GapSummary summary(L, pair);
    std::vector<double> values;
    values.reserve(grid.size());
    for (double d : grid.points) values.push_back(summary.density(d, L.duration()));
    return detail::finalize_profile(L.label(pair.lo) + "--" + L.label(pair.hi), grid,
                                    std::move(values));
}

namespace detail {

inline std::vector<GapSummary> incident_summaries(const LinkStream& L, NodeId v) {
    const std::vector<NodeId>& nbrs = L.neighbors(v);
    std::vector<GapSummary> summaries;
    summaries.reserve(nbrs.size());
    for (NodeId u : nbrs) summaries.emplace_back(L, PairKey::make(v, u));
    return summaries;
}

inline std::vector<double> mean_profile_values(const std::vector<GapSummary>& summaries,
                                               double denominator, const DeltaGrid& grid,
                                               double duration) {
    std::vector<double> values;
    values.reserve(grid.size());
    for (double d : grid.points) {
        double sum = 0.0;
        for (const GapSummary& s : summaries) sum += s.density(d, duration);
        values.push_back(clamp01(sum / denominator));
    }
    return values;
}

}  // namespace detail

/// Node density profile: mean over the links between v and its neighbors.
inline DensityProfile node_profile(const LinkStream& L, NodeId v, const DeltaGrid& grid) {
    const auto summaries = detail::incident_summaries(L, v);
    if (summaries.empty())
        throw std::out_of_range("node_profile: node has no links in this stream");
    auto values = detail::mean_profile_values(summaries, static_cast<double>(summaries.size()),
                                              grid, L.duration());
    return detail::finalize_profile("node " + L.label(v), grid, std::move(values));
}

/// Whole-stream density profile: mean over all unordered node pairs, with
/// absent pairs contributing 0 at every delta.
inline DensityProfile stream_profile(const LinkStream& L, const DeltaGrid& grid) {
    const std::size_t n = L.node_count();
    if (n < 2) throw std::invalid_argument("stream_profile: need at least 2 nodes");
    std::vector<GapSummary> summaries;
    summaries.reserve(L.pair_count());
    for (const auto& [pair, _] : L.pair_times()) summaries.emplace_back(L, pair);
    const double total_pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
    auto values = detail::mean_profile_values(summaries, total_pairs, grid, L.duration());
    return detail::finalize_profile("stream", grid, std::move(values));
}

/// The delta of the steepest single-step increase of a profile, kept only
/// when that increase reaches the threshold. tau is the right endpoint of
/// the steepest segment; ties go to the smallest delta.
struct CharacteristicTime {
    double tau = 0.0;
    double variation = 0.0;
    std::size_t grid_index = 0;  // index of tau in grid.points
};

inline std::optional<CharacteristicTime> characteristic_time(const DensityProfile& profile,
                                                             double threshold = 0.15) {
    if (profile.values.size() < 2)
        throw std::invalid_argument("characteristic_time: profile needs at least 2 points");
    std::size_t best = 0;
    double best_diff = profile.values[1] - profile.values[0];
    for (std::size_t i = 1; i + 1 < profile.values.size(); ++i) {
        const double diff = profile.values[i + 1] - profile.values[i];
        if (diff > best_diff) {
            best = i;
            best_diff = diff;
        }
    }
    if (best_diff < threshold) return std::nullopt;
    return CharacteristicTime{profile.grid.points[best + 1], best_diff, best + 1};
}

/// Complementary cumulative distribution: one breakpoint per distinct
/// value (plus x = 0), y = number of items strictly greater than x.
struct Ccdf {
    std::vector<std::pair<double, std::size_t>> points;

    std::size_t count_greater(double x) const {
        // step function: y of the largest breakpoint <= x, or total above all
        std::size_t y = points.empty() ? 0 : points.front().second;
        for (const auto& [bx, by] : points) {
            if (bx > x) break;
            y = by;
        }
        return y;
    }
};

inline Ccdf ccdf(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("ccdf: empty input");
    std::sort(values.begin(), values.end());
    std::vector<double> breakpoints(values);
    breakpoints.push_back(0.0);
    std::sort(breakpoints.begin(), breakpoints.end());
    breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());
    Ccdf out;
    out.points.reserve(breakpoints.size());
    for (double x : breakpoints) {
        const auto above = static_cast<std::size_t>(
            values.end() - std::upper_bound(values.begin(), values.end(), x));
        out.points.emplace_back(x, above);
    }
    return out;
}

/// Characteristic time of every occurring pair, keyed in pair order.
/// Per-pair work is independent; results are merged by key, so the output
/// does not depend on the worker count.
inline std::map<PairKey, std::optional<CharacteristicTime>> pair_characteristic_times(
    const LinkStream& L, const DeltaGrid& grid, double threshold = 0.15, unsigned workers = 0) {
    std::vector<PairKey> keys;
    keys.reserve(L.pair_count());
    for (const auto& [pair, _] : L.pair_times()) keys.push_back(pair);

    std::vector<std::optional<CharacteristicTime>> slots(keys.size());
    parallel_for(keys.size(), workers, [&](std::size_t i) {
        slots[i] = characteristic_time(pair_profile(L, keys[i], grid), threshold);
    });

    std::map<PairKey, std::optional<CharacteristicTime>> out;
    for (std::size_t i = 0; i < keys.size(); ++i) out.emplace(keys[i], slots[i]);
    return out;
}

/// Characteristic time of every node's density profile, keyed by node.
inline std::map<NodeId, std::optional<CharacteristicTime>> node_characteristic_times(
    const LinkStream& L, const DeltaGrid& grid, double threshold = 0.15, unsigned workers = 0) {
    std::vector<NodeId> ids;
    ids.reserve(L.node_count());
    for (NodeId v : L.nodes())
        if (!L.neighbors(v).empty()) ids.push_back(v);

    std::vector<std::optional<CharacteristicTime>> slots(ids.size());
    parallel_for(ids.size(), workers, [&](std::size_t i) {
        slots[i] = characteristic_time(node_profile(L, ids[i], grid), threshold);
    });

    std::map<NodeId, std::optional<CharacteristicTime>> out;
    for (std::size_t i = 0; i < ids.size(); ++i) out.emplace(ids[i], slots[i]);
    return out;
}

}  // namespace linkstream
