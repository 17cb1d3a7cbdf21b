#pragma once

// Delta-density in all its granularities: single pair, link set, whole
// stream / node set, per-node density and the delta-clustering coefficient,
// plus classical graph density.
//
// The pair density is the probability that a uniformly random window of
// length delta inside the capture contains at least one occurrence of the
// pair:
//
//     density(delta) = 1 - sum_i max(gap_i - delta, 0) / (duration - delta)
//
// with boundary-padded gaps. At delta == duration the quotient degenerates
// and the value is defined by the limit: 1 for an occurring pair, 0 for an
// absent one.

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "linkstream/stream.hpp"

namespace linkstream {

namespace detail {

inline void check_delta(double delta, double duration) {
    if (duration <= 0.0)
        throw std::invalid_argument("density: degenerate stream (duration must be > 0)");
    if (!(delta >= 0.0) || delta > duration)
        throw std::invalid_argument("density: delta must lie in [0, duration]");
}

inline double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace detail

/// Delta-density of one pair from its contact series. Plain linear pass
/// over the gaps; sweeps over many deltas should use GapSummary instead.
inline double pair_density(const ContactSeries& series, double delta, double duration) {
    detail::check_delta(delta, duration);
    if (delta == duration) return series.occurs() ? 1.0 : 0.0;
    double excess = 0.0;
    for (double g : series.gaps)
        if (g > delta) excess += g - delta;
    return detail::clamp01(1.0 - excess / (duration - delta));
}

/// Gaps of one pair sorted descending with running prefix sums, so that
/// sum over gaps > delta of (gap - delta) is one binary search away. Turns
/// a P-point profile of a k-occurrence pair from O(P*k) into O(k log k + P log k).
class GapSummary {
  public:
    GapSummary() = default;

    explicit GapSummary(const ContactSeries& series)
        : gaps_(series.gaps), occurs_(series.occurs()) {
        std::sort(gaps_.begin(), gaps_.end(), std::greater<>());
        prefix_.resize(gaps_.size() + 1);
        prefix_[0] = 0.0;
        for (std::size_t i = 0; i < gaps_.size(); ++i) prefix_[i + 1] = prefix_[i] + gaps_[i];
    }

    GapSummary(const LinkStream& L, PairKey pair) : GapSummary(contact_series(L, pair)) {}

    bool occurs() const { return occurs_; }

    /// sum over gaps strictly greater than delta of (gap - delta).
    double excess(double delta) const {
        auto it = std::lower_bound(gaps_.begin(), gaps_.end(), delta,
                                   [](double g, double d) { return g > d; });
        const auto n = static_cast<std::size_t>(it - gaps_.begin());
        return prefix_[n] - static_cast<double>(n) * delta;
    }

    double density(double delta, double duration) const {
        detail::check_delta(delta, duration);
        if (delta == duration) return occurs_ ? 1.0 : 0.0;
        return detail::clamp01(1.0 - excess(delta) / (duration - delta));
    }

  private:
    std::vector<double> gaps_;    // descending
    std::vector<double> prefix_;  // prefix_[j] = sum of the j largest gaps
    bool occurs_ = false;
};

namespace detail {

inline double pair_density_in(const LinkStream& L, PairKey pair, double delta) {
    return pair_density(contact_series(L, pair), delta, L.duration());
}

}  // namespace detail

/// Mean pair density over a set of links. Pairs absent from the stream
/// contribute 0.
inline double set_density(const LinkStream& L, const std::set<PairKey>& S, double delta) {
    if (S.empty()) throw std::invalid_argument("set_density: empty link set");
    detail::check_delta(delta, L.duration());
    double sum = 0.0;
    for (PairKey pair : S)
        if (L.times(pair)) sum += detail::pair_density_in(L, pair, delta);
    return detail::clamp01(sum / static_cast<double>(S.size()));
}

/// Mean pair density over all unordered pairs of a node group, counting
/// never-interacting pairs as 0. This is the stream-density formula applied
/// to an explicit node set.
inline double node_set_density(const LinkStream& L, const std::vector<NodeId>& group,
                               double delta) {
    std::vector<NodeId> members(group);
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    const std::size_t n = members.size();
    if (n < 2) throw std::invalid_argument("node_set_density: need at least 2 nodes");
    detail::check_delta(delta, L.duration());

    // Only occurring pairs contribute; iterate those and filter by membership.
    double sum = 0.0;
    for (const auto& [pair, _] : L.pair_times()) {
        if (std::binary_search(members.begin(), members.end(), pair.lo) &&
            std::binary_search(members.begin(), members.end(), pair.hi))
            sum += detail::pair_density_in(L, pair, delta);
    }
    const double total_pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
    return detail::clamp01(sum / total_pairs);
}

/// Delta-density of the whole stream: mean over all unordered pairs of its
/// node set, including pairs that never interact. At delta == duration this
/// equals the classical density of the induced graph.
inline double stream_density(const LinkStream& L, double delta) {
    if (L.node_count() < 2)
        throw std::invalid_argument("stream_density: need at least 2 nodes");
    return node_set_density(L, L.nodes(), delta);
}

/// Delta-density of a node: mean density of the links between v and its
/// neighbors (all of which occur by construction).
inline double node_density(const LinkStream& L, NodeId v, double delta) {
    const std::vector<NodeId>& nbrs = L.neighbors(v);
    if (nbrs.empty()) throw std::out_of_range("node_density: node has no links in this stream");
    detail::check_delta(delta, L.duration());
    double sum = 0.0;
    for (NodeId u : nbrs) sum += detail::pair_density_in(L, PairKey::make(v, u), delta);
    return detail::clamp01(sum / static_cast<double>(nbrs.size()));
}

/// Delta-clustering coefficient of a node: stream density of the substream
/// induced by its neighborhood, i.e. the mean density over all unordered
/// neighbor pairs, non-interacting ones included. 0 for degree < 2, like
/// the classical clustering coefficient.
inline double delta_clustering(const LinkStream& L, NodeId v, double delta) {
    const std::vector<NodeId>& nbrs = L.neighbors(v);
    if (nbrs.size() < 2) return 0.0;
    return node_set_density(L, nbrs, delta);
}

/// Classical density of a simple undirected graph: 2m / (n (n - 1)).
inline double graph_density(const InducedGraph& G) {
    const std::size_t n = G.vertex_count();
    if (n < 2) throw std::invalid_argument("graph_density: need at least 2 vertices");
    return 2.0 * static_cast<double>(G.edge_count()) /
           (static_cast<double>(n) * static_cast<double>(n - 1));
}

}  // namespace linkstream
