#pragma once

// Core link-stream model: timestamped undirected links between interned
// node labels, capture bounds [alpha, omega], per-pair contact series and
// the induced static graph. Streams are immutable once built; substream
// extraction produces new streams sharing the label table.

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace linkstream {

using NodeId = std::uint32_t;

/// Unordered pair of distinct nodes, canonically stored with lo < hi.
struct PairKey {
    NodeId lo = 0;
    NodeId hi = 0;

    static PairKey make(NodeId a, NodeId b) {
        if (a == b) throw std::invalid_argument("PairKey: self-pair not allowed");
        return a < b ? PairKey{a, b} : PairKey{b, a};
    }

    friend bool operator==(const PairKey&, const PairKey&) = default;
    friend auto operator<=>(const PairKey&, const PairKey&) = default;
};

struct Event {
    double t = 0.0;
    PairKey pair;
};

/// One raw trace row: timestamp plus two endpoint labels.
struct RawLink {
    double t = 0.0;
    std::string u;
    std::string v;
};

/// Occurrence times of one pair together with its inter-contact gaps.
/// Gaps are boundary-padded: gaps[0] = t1 - alpha, gaps[k] = omega - tk.
/// A pair that never occurs carries the single gap omega - alpha, which
/// makes its density evaluate to 0 without a special case.
struct ContactSeries {
    PairKey pair;
    std::vector<double> times;  // sorted, non-decreasing
    std::vector<double> gaps;   // size times.size() + 1, or {duration} if empty

    bool occurs() const { return !times.empty(); }
};

struct InducedGraph {
    std::vector<NodeId> vertices;                     // sorted
    std::vector<PairKey> edges;                       // sorted
    std::map<NodeId, std::vector<NodeId>> adjacency;  // sorted neighbor lists

    std::size_t vertex_count() const { return vertices.size(); }
    std::size_t edge_count() const { return edges.size(); }
};

class LinkStream;

LinkStream build_stream(const std::vector<RawLink>& rows,
                        std::optional<double> alpha = std::nullopt,
                        std::optional<double> omega = std::nullopt);
LinkStream substream_pairs(const LinkStream& L, const std::set<PairKey>& S);
LinkStream substream_nodes(const LinkStream& L, const std::vector<NodeId>& group);

class LinkStream {
  public:
    double alpha() const { return alpha_; }
    double omega() const { return omega_; }
    double duration() const { return omega_ - alpha_; }

    // Whether the bound was given explicitly or defaulted to the data extremum.
    bool alpha_explicit() const { return alpha_explicit_; }
    bool omega_explicit() const { return omega_explicit_; }

    const std::vector<Event>& events() const { return events_; }
    std::size_t size() const { return events_.size(); }

    /// Node set of the stream. For built streams this is every node with at
    /// least one event; for node-induced substreams it is the requested set,
    /// including members with no surviving event.
    const std::vector<NodeId>& nodes() const { return nodes_; }
    std::size_t node_count() const { return nodes_.size(); }

    const std::map<PairKey, std::vector<double>>& pair_times() const { return by_pair_; }
    std::size_t pair_count() const { return by_pair_.size(); }

    /// Occurrence times of a pair, or nullptr if the pair never occurs.
    const std::vector<double>* times(PairKey pair) const {
        auto it = by_pair_.find(pair);
        return it == by_pair_.end() ? nullptr : &it->second;
    }

    bool has_node(NodeId v) const {
        return std::binary_search(nodes_.begin(), nodes_.end(), v);
    }

    /// Sorted neighbor list of v. Empty for a node with no events in this
    /// stream; throws if v is not part of the stream at all.
    const std::vector<NodeId>& neighbors(NodeId v) const {
        if (!has_node(v)) throw std::out_of_range("LinkStream: unknown node id");
        auto it = adjacency_.find(v);
        static const std::vector<NodeId> kEmpty;
        return it == adjacency_.end() ? kEmpty : it->second;
    }

    const std::string& label(NodeId v) const {
        if (v >= table_->labels.size()) throw std::out_of_range("LinkStream: unknown node id");
        return table_->labels[v];
    }

    std::optional<NodeId> find(std::string_view name) const {
        auto it = table_->index.find(name);
        if (it == table_->index.end()) return std::nullopt;
        return it->second;
    }

    std::size_t dropped_self_loops() const { return dropped_self_loops_; }

  private:
    struct LabelTable {
        std::vector<std::string> labels;                      // id -> label
        std::map<std::string, NodeId, std::less<>> index;     // label -> id
    };

    LinkStream() = default;

    void index_events() {
        by_pair_.clear();
        adjacency_.clear();
        for (const Event& e : events_) by_pair_[e.pair].push_back(e.t);
        for (const auto& [pair, _] : by_pair_) {
            adjacency_[pair.lo].push_back(pair.hi);
            adjacency_[pair.hi].push_back(pair.lo);
        }
        for (auto& [_, nbrs] : adjacency_) {
            std::sort(nbrs.begin(), nbrs.end());
            nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
        }
    }

    std::shared_ptr<const LabelTable> table_;
    std::vector<Event> events_;  // sorted non-decreasing by t
    double alpha_ = 0.0;
    double omega_ = 0.0;
    bool alpha_explicit_ = false;
    bool omega_explicit_ = false;
    std::size_t dropped_self_loops_ = 0;
    std::vector<NodeId> nodes_;  // sorted
    std::map<PairKey, std::vector<double>> by_pair_;
    std::map<NodeId, std::vector<NodeId>> adjacency_;

    friend LinkStream build_stream(const std::vector<RawLink>&, std::optional<double>,
                                   std::optional<double>);
    friend LinkStream substream_pairs(const LinkStream&, const std::set<PairKey>&);
    friend LinkStream substream_nodes(const LinkStream&, const std::vector<NodeId>&);
};

/// Builds a stream from raw rows: normalizes to undirected pairs, drops
/// self-loops (counted), interns labels (ids are dense, in lexicographic
/// label order), stably sorts by time and fixes the capture bounds.
/// Bounds default to the observed extrema; explicit bounds must enclose
/// every timestamp.
inline LinkStream build_stream(const std::vector<RawLink>& rows,
                               std::optional<double> alpha,
                               std::optional<double> omega) {
    for (const RawLink& r : rows) {
        if (!std::isfinite(r.t) || r.t < 0.0)
            throw std::invalid_argument("build_stream: timestamps must be finite and non-negative");
        if (r.u.empty() || r.v.empty())
            throw std::invalid_argument("build_stream: empty node label");
    }

    LinkStream L;
    std::vector<const RawLink*> kept;
    kept.reserve(rows.size());
    for (const RawLink& r : rows) {
        if (r.u == r.v) {
            ++L.dropped_self_loops_;
        } else {
            kept.push_back(&r);
        }
    }

    auto table = std::make_shared<LinkStream::LabelTable>();
    {
        std::set<std::string_view> names;
        for (const RawLink* r : kept) {
            names.insert(r->u);
            names.insert(r->v);
        }
        table->labels.reserve(names.size());
        for (std::string_view n : names) {
            table->index.emplace(std::string(n), static_cast<NodeId>(table->labels.size()));
            table->labels.emplace_back(n);
        }
    }
    L.table_ = table;

    L.events_.reserve(kept.size());
    for (const RawLink* r : kept) {
        NodeId u = table->index.find(r->u)->second;
        NodeId v = table->index.find(r->v)->second;
        L.events_.push_back(Event{r->t, PairKey::make(u, v)});
    }
    std::stable_sort(L.events_.begin(), L.events_.end(),
                     [](const Event& a, const Event& b) { return a.t < b.t; });

    if (L.events_.empty() && (!alpha || !omega))
        throw std::invalid_argument("build_stream: empty stream needs explicit alpha and omega");

    const double min_t = L.events_.empty() ? 0.0 : L.events_.front().t;
    const double max_t = L.events_.empty() ? 0.0 : L.events_.back().t;
    L.alpha_ = alpha.value_or(min_t);
    L.omega_ = omega.value_or(max_t);
    L.alpha_explicit_ = alpha.has_value();
    L.omega_explicit_ = omega.has_value();
    if (!std::isfinite(L.alpha_) || !std::isfinite(L.omega_))
        throw std::invalid_argument("build_stream: bounds must be finite");
    if (L.alpha_ > L.omega_)
        throw std::invalid_argument("build_stream: alpha > omega");
    if (!L.events_.empty() && (L.alpha_ > min_t || L.omega_ < max_t))
        throw std::invalid_argument("build_stream: bounds do not enclose all timestamps");

    L.index_events();
    L.nodes_.reserve(L.adjacency_.size());
    for (const auto& [v, _] : L.adjacency_) L.nodes_.push_back(v);
    return L;
}

/// Contact series of a pair, including the k = 0 convention (single gap
/// spanning the whole capture).
inline ContactSeries contact_series(const LinkStream& L, PairKey pair) {
    ContactSeries cs;
    cs.pair = pair;
    if (const std::vector<double>* ts = L.times(pair)) cs.times = *ts;
    if (cs.times.empty()) {
        cs.gaps.push_back(L.duration());
        return cs;
    }
    cs.gaps.reserve(cs.times.size() + 1);
    cs.gaps.push_back(cs.times.front() - L.alpha());
    for (std::size_t i = 0; i + 1 < cs.times.size(); ++i)
        cs.gaps.push_back(cs.times[i + 1] - cs.times[i]);
    cs.gaps.push_back(L.omega() - cs.times.back());
    return cs;
}

/// Substream keeping exactly the events whose pair is in S. Bounds are
/// unchanged; the node set is re-derived from the surviving events.
inline LinkStream substream_pairs(const LinkStream& L, const std::set<PairKey>& S) {
    LinkStream out;
    out.table_ = L.table_;
    out.alpha_ = L.alpha_;
    out.omega_ = L.omega_;
    out.alpha_explicit_ = L.alpha_explicit_;
    out.omega_explicit_ = L.omega_explicit_;
    out.dropped_self_loops_ = L.dropped_self_loops_;
    for (const Event& e : L.events_)
        if (S.count(e.pair)) out.events_.push_back(e);
    out.index_events();
    for (const auto& [v, _] : out.adjacency_) out.nodes_.push_back(v);
    return out;
}

/// Substream induced by a node set: events with both endpoints in the set.
/// The node set of the result is the requested set itself, so that stream
/// density over the substream averages over all of its pairs, including
/// members that never interact.
inline LinkStream substream_nodes(const LinkStream& L, const std::vector<NodeId>& group) {
    LinkStream out;
    out.table_ = L.table_;
    out.alpha_ = L.alpha_;
    out.omega_ = L.omega_;
    out.alpha_explicit_ = L.alpha_explicit_;
    out.omega_explicit_ = L.omega_explicit_;
    out.dropped_self_loops_ = L.dropped_self_loops_;

    std::vector<NodeId> members(group);
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    for (NodeId v : members)
        if (v >= L.table_->labels.size())
            throw std::out_of_range("substream_nodes: unknown node id");
    out.nodes_ = std::move(members);

    auto in_group = [&out](NodeId v) {
        return std::binary_search(out.nodes_.begin(), out.nodes_.end(), v);
    };
    for (const Event& e : L.events_)
        if (in_group(e.pair.lo) && in_group(e.pair.hi)) out.events_.push_back(e);
    out.index_events();
    return out;
}

/// Static graph induced by the stream: one edge per pair occurring at
/// least once. Vertices are exactly the event endpoints, so every vertex
/// has degree >= 1.
inline InducedGraph induced_graph(const LinkStream& L) {
    InducedGraph G;
    G.edges.reserve(L.pair_times().size());
    for (const auto& [pair, _] : L.pair_times()) G.edges.push_back(pair);
    for (const auto& [pair, _] : L.pair_times()) {
        G.adjacency[pair.lo].push_back(pair.hi);
        G.adjacency[pair.hi].push_back(pair.lo);
    }
    for (auto& [_, nbrs] : G.adjacency) {
        std::sort(nbrs.begin(), nbrs.end());
        nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    }
    G.vertices.reserve(G.adjacency.size());
    for (const auto& [v, _] : G.adjacency) G.vertices.push_back(v);
    return G;
}

inline const std::vector<NodeId>& neighborhood(const InducedGraph& G, NodeId v) {
    auto it = G.adjacency.find(v);
    if (it == G.adjacency.end()) throw std::out_of_range("neighborhood: unknown node");
    return it->second;
}

}  // namespace linkstream
