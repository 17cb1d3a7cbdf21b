#pragma once

// Per-node temporal/structural statistics (degree, characteristic time,
// tau-clustering coefficient) and rule-based role classification: star
// hubs whose neighbors never talk to each other, densely interacting
// groups, short-characteristic-time periodic services, and pairs only
// seen in a brief burst.

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "linkstream/density.hpp"
#include "linkstream/parallel.hpp"
#include "linkstream/profile.hpp"
#include "linkstream/stream.hpp"

namespace linkstream {

/// Thresholds for the ordered classification rules. The defaults encode
/// the qualitative descriptions behind each role; every one is exposed as
/// a CLI option.
struct RuleParams {
    std::size_t star_degree = 20;  // minimum degree of a star hub
    double star_cc = 0.05;         // maximum tau-cc of a star hub
    double dense_cc = 0.5;         // minimum tau-cc of a dense-group member
    double periodic_frac = 0.1;    // tau <= frac * duration for periodic-service
    double ephemeral_frac = 0.5;   // tau > frac * duration means ephemeral
};

enum class RoleLabel { star_hub, dense_group_member, periodic_service, ephemeral, unclassified };

inline std::string_view to_string(RoleLabel label) {
    switch (label) {
        case RoleLabel::star_hub: return "star-hub";
        case RoleLabel::dense_group_member: return "dense-group-member";
        case RoleLabel::periodic_service: return "periodic-service";
        case RoleLabel::ephemeral: return "ephemeral";
        case RoleLabel::unclassified: return "unclassified";
    }
    return "unclassified";
}

struct NodeStats {
    NodeId node = 0;
    std::size_t degree = 0;
    std::optional<CharacteristicTime> char_time;
    std::optional<double> tau_cc;  // delta-cc at the node's characteristic time
    bool nonzero_cc = false;       // at least one edge between two neighbors
};

struct NodeRole {
    NodeStats stats;
    RoleLabel label = RoleLabel::unclassified;
    std::string rule;  // the condition that fired
};

struct RoleReport {
    std::vector<NodeRole> nodes;  // ordered by node id
    std::map<RoleLabel, std::size_t> summary;
    std::size_t nonzero_cc_nodes = 0;
    double threshold = 0.15;
    RuleParams params;
};

/// Delta-clustering coefficient evaluated at the node's own characteristic
/// time.
inline double tau_clustering(const LinkStream& L, NodeId v, const CharacteristicTime& char_time) {
    return delta_clustering(L, v, char_time.tau);
}

namespace detail {

// Any edge between two distinct neighbors of v?
inline bool has_neighbor_edge(const InducedGraph& G, NodeId v) {
    const std::vector<NodeId>& nbrs = neighborhood(G, v);
    for (NodeId u : nbrs) {
        const std::vector<NodeId>& of_u = neighborhood(G, u);
        // sorted intersection; v itself is never in nbrs
        auto a = nbrs.begin();
        auto b = of_u.begin();
        while (a != nbrs.end() && b != of_u.end()) {
            if (*a < *b) {
                ++a;
            } else if (*b < *a) {
                ++b;
            } else {
                return true;
            }
        }
    }
    return false;
}

}  // namespace detail

/// Number of nodes with at least one edge between two of their neighbors,
/// i.e. nodes whose classical clustering coefficient is nonzero. 0 for any
/// bipartite stream.
inline std::size_t count_nonzero_cc_nodes(const InducedGraph& G) {
    std::size_t count = 0;
    for (NodeId v : G.vertices)
        if (detail::has_neighbor_edge(G, v)) ++count;
    return count;
}

/// One (degree, tau-cc) point per node that has both a nonzero classical
/// clustering coefficient and a defined characteristic time.
inline std::vector<std::pair<std::size_t, double>> degree_vs_tau_cc(const LinkStream& L,
                                                                    const DeltaGrid& grid,
                                                                    double threshold = 0.15,
                                                                    unsigned workers = 0) {
    const InducedGraph G = induced_graph(L);
    std::vector<NodeId> candidates;
    for (NodeId v : G.vertices)
        if (detail::has_neighbor_edge(G, v)) candidates.push_back(v);

    std::vector<std::optional<std::pair<std::size_t, double>>> slots(candidates.size());
    parallel_for(candidates.size(), workers, [&](std::size_t i) {
        const NodeId v = candidates[i];
        const auto ct = characteristic_time(node_profile(L, v, grid), threshold);
        if (!ct) return;
        slots[i] = std::make_pair(neighborhood(G, v).size(), tau_clustering(L, v, *ct));
    });

    std::vector<std::pair<std::size_t, double>> out;
    for (const auto& s : slots)
        if (s) out.push_back(*s);
    return out;
}

namespace detail {

inline NodeRole label_node(const NodeStats& stats, double duration, const RuleParams& p) {
    NodeRole role;
    role.stats = stats;
    if (stats.degree >= p.star_degree && stats.tau_cc && *stats.tau_cc <= p.star_cc) {
        role.label = RoleLabel::star_hub;
        role.rule = "degree >= star_degree and tau_cc <= star_cc";
    } else if (stats.degree >= 2 && stats.tau_cc && *stats.tau_cc >= p.dense_cc) {
        role.label = RoleLabel::dense_group_member;
        role.rule = "degree >= 2 and tau_cc >= dense_cc";
    } else if (stats.char_time && stats.char_time->tau <= p.periodic_frac * duration) {
        role.label = RoleLabel::periodic_service;
        role.rule = "tau <= periodic_frac * duration";
    } else if (!stats.char_time || stats.char_time->tau > p.ephemeral_frac * duration) {
        role.label = RoleLabel::ephemeral;
        role.rule = stats.char_time ? "tau > ephemeral_frac * duration" : "no characteristic time";
    } else {
        role.label = RoleLabel::unclassified;
        role.rule = "no rule matched";
    }
    return role;
}

}  // namespace detail

/// Full per-node statistics and role labels. Rules are applied in order
/// (star-hub first, so a periodic backup hub is reported as a star rather
/// than as one more periodic service); the first match wins.
inline RoleReport classify_roles(const LinkStream& L, const DeltaGrid& grid,
                                 double threshold = 0.15, const RuleParams& params = {},
                                 unsigned workers = 0) {
    const InducedGraph G = induced_graph(L);
    const double duration = L.duration();

    std::vector<NodeId> ids(G.vertices);
    std::vector<NodeRole> slots(ids.size());
    parallel_for(ids.size(), workers, [&](std::size_t i) {
        const NodeId v = ids[i];
        NodeStats stats;
        stats.node = v;
        stats.degree = neighborhood(G, v).size();
        stats.char_time = characteristic_time(node_profile(L, v, grid), threshold);
        stats.nonzero_cc = detail::has_neighbor_edge(G, v);
        if (stats.char_time && stats.degree >= 2)
            stats.tau_cc = tau_clustering(L, v, *stats.char_time);
        slots[i] = detail::label_node(stats, duration, params);
    });

    RoleReport report;
    report.threshold = threshold;
    report.params = params;
    report.nodes = std::move(slots);
    for (const NodeRole& r : report.nodes) ++report.summary[r.label];
    report.nonzero_cc_nodes = count_nonzero_cc_nodes(G);
    return report;
}

}  // namespace linkstream
