#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>
#include <vector>

#include "linkstream/stream.hpp"

using namespace linkstream;

namespace {

LinkStream three_contacts() {
    // occurrences of (a, b) at 2, 5, 8 in a [0, 10] capture
    return build_stream({{2, "a", "b"}, {5, "a", "b"}, {8, "a", "b"}}, 0.0, 10.0);
}

std::vector<RawLink> random_rows(std::mt19937_64& rng, std::size_t n) {
    const char* names[] = {"a", "b", "c", "d", "e"};
    std::uniform_int_distribution<int> which(0, 4);
    std::uniform_real_distribution<double> when(0.0, 100.0);
    std::vector<RawLink> rows;
    for (std::size_t i = 0; i < n; ++i) {
        int u = which(rng), v = which(rng);
        while (v == u) v = which(rng);
        rows.push_back(RawLink{when(rng), names[u], names[v]});
    }
    return rows;
}

}  // namespace

TEST_CASE("build_stream sorts and merges directions") {
    const LinkStream L = build_stream({{5, "b", "a"}, {2, "a", "b"}});
    REQUIRE(L.size() == 2);
    CHECK(L.events()[0].t == 2.0);
    CHECK(L.events()[1].t == 5.0);
    CHECK(L.events()[0].pair == L.events()[1].pair);
    CHECK(L.alpha() == 2.0);
    CHECK(L.omega() == 5.0);
    CHECK_FALSE(L.alpha_explicit());
    CHECK(L.node_count() == 2);
}

TEST_CASE("build_stream drops self-loops with a count") {
    const LinkStream L = build_stream({{3, "x", "x"}}, 0.0, 10.0);
    CHECK(L.size() == 0);
    CHECK(L.dropped_self_loops() == 1);
    CHECK(L.node_count() == 0);
    CHECK(L.duration() == 10.0);
}

TEST_CASE("build_stream rejects bad bounds and empty unbounded input") {
    CHECK_THROWS_AS(build_stream({{2, "a", "b"}}, 5.0, std::nullopt), std::invalid_argument);
    CHECK_THROWS_AS(build_stream({{2, "a", "b"}}, std::nullopt, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(build_stream({}), std::invalid_argument);
    CHECK_THROWS_AS(build_stream({{-1, "a", "b"}}), std::invalid_argument);
}

TEST_CASE("contact series gaps are boundary padded") {
    const LinkStream L = three_contacts();
    const ContactSeries cs = contact_series(L, L.pair_times().begin()->first);
    CHECK(cs.times == std::vector<double>{2, 5, 8});
    CHECK(cs.gaps == std::vector<double>{2, 3, 3, 2});
}

TEST_CASE("contact series of an absent pair spans the capture") {
    const LinkStream L = build_stream({{2, "a", "b"}, {3, "c", "d"}}, 0.0, 10.0);
    const NodeId a = *L.find("a");
    const NodeId c = *L.find("c");
    const ContactSeries cs = contact_series(L, PairKey::make(a, c));
    CHECK_FALSE(cs.occurs());
    CHECK(cs.gaps == std::vector<double>{10.0});
}

TEST_CASE("duplicate events are kept and yield zero gaps") {
    const LinkStream L = build_stream({{5, "a", "b"}, {5, "b", "a"}}, 0.0, 10.0);
    CHECK(L.size() == 2);
    const ContactSeries cs = contact_series(L, PairKey{0, 1});
    CHECK(cs.times == std::vector<double>{5, 5});
    CHECK(cs.gaps == std::vector<double>{5, 0, 5});
}

TEST_CASE("contact series with an occurrence on the boundary") {
    const LinkStream L = build_stream({{0, "a", "b"}}, 0.0, 10.0);
    const ContactSeries cs = contact_series(L, L.pair_times().begin()->first);
    CHECK(cs.gaps == std::vector<double>{0.0, 10.0});
}

TEST_CASE("substream_pairs keeps selected pairs and bounds") {
    const LinkStream L =
        build_stream({{1, "a", "b"}, {2, "c", "d"}, {3, "a", "b"}}, 0.0, 5.0);
    const PairKey ab = PairKey::make(*L.find("a"), *L.find("b"));
    const LinkStream sub = substream_pairs(L, {ab});
    REQUIRE(sub.size() == 2);
    CHECK(sub.alpha() == 0.0);
    CHECK(sub.omega() == 5.0);
    CHECK(sub.events()[0].pair == ab);

    CHECK(substream_pairs(L, {}).size() == 0);

    std::set<PairKey> all;
    for (const auto& [pair, _] : L.pair_times()) all.insert(pair);
    const LinkStream same = substream_pairs(L, all);
    CHECK(same.size() == L.size());
}

TEST_CASE("substream_nodes equals substream over internal pairs") {
    std::mt19937_64 rng(7);
    const LinkStream L = build_stream(random_rows(rng, 200), 0.0, 100.0);
    const std::vector<NodeId> group = {0, 1, 2};
    const LinkStream by_nodes = substream_nodes(L, group);

    std::set<PairKey> internal;
    for (NodeId u : group)
        for (NodeId v : group)
            if (u < v) internal.insert(PairKey{u, v});
    const LinkStream by_pairs = substream_pairs(L, internal);

    REQUIRE(by_nodes.size() == by_pairs.size());
    for (std::size_t i = 0; i < by_nodes.size(); ++i) {
        CHECK(by_nodes.events()[i].t == by_pairs.events()[i].t);
        CHECK(by_nodes.events()[i].pair == by_pairs.events()[i].pair);
    }
    // node set of a node-induced substream is the requested group
    CHECK(by_nodes.nodes() == group);
}

TEST_CASE("substream_nodes edge cases") {
    const LinkStream L = build_stream({{1, "a", "b"}, {2, "a", "c"}}, 0.0, 5.0);
    CHECK(substream_nodes(L, {}).size() == 0);
    const LinkStream all = substream_nodes(L, L.nodes());
    CHECK(all.size() == L.size());

    const std::vector<NodeId> ab = {*L.find("a"), *L.find("b")};
    const LinkStream sub = substream_nodes(L, ab);
    REQUIRE(sub.size() == 1);
    CHECK(sub.events()[0].t == 1.0);
}

TEST_CASE("induced graph has one edge per occurring pair") {
    const LinkStream twice = build_stream({{1, "a", "b"}, {2, "a", "b"}}, 0.0, 5.0);
    const InducedGraph G = induced_graph(twice);
    CHECK(G.vertex_count() == 2);
    CHECK(G.edge_count() == 1);

    const LinkStream tri =
        build_stream({{1, "a", "b"}, {2, "b", "c"}, {3, "a", "c"}}, 0.0, 5.0);
    const InducedGraph T = induced_graph(tri);
    CHECK(T.vertex_count() == 3);
    CHECK(T.edge_count() == 3);

    const LinkStream empty = build_stream({}, 0.0, 1.0);
    CHECK(induced_graph(empty).vertex_count() == 0);
}

TEST_CASE("neighborhood lookups") {
    const LinkStream L = build_stream({{1, "h", "l1"}, {2, "h", "l2"}}, 0.0, 5.0);
    const InducedGraph G = induced_graph(L);
    const NodeId h = *L.find("h");
    CHECK(neighborhood(G, h).size() == 2);
    CHECK_THROWS_AS(neighborhood(G, 99), std::out_of_range);

    const LinkStream tri =
        build_stream({{1, "a", "b"}, {2, "b", "c"}, {3, "a", "c"}}, 0.0, 5.0);
    const InducedGraph T = induced_graph(tri);
    CHECK(neighborhood(T, *tri.find("a")) ==
          std::vector<NodeId>{*tri.find("b"), *tri.find("c")});
}

TEST_CASE("gap conservation over random streams") {
    std::mt19937_64 rng(42);
    for (int round = 0; round < 20; ++round) {
        const LinkStream L = build_stream(random_rows(rng, 50), 0.0, 100.0);
        for (const auto& [pair, _] : L.pair_times()) {
            const ContactSeries cs = contact_series(L, pair);
            double total = 0.0;
            for (double g : cs.gaps) total += g;
            CHECK_THAT(total, Catch::Matchers::WithinAbs(L.duration(), 1e-9));
        }
    }
}

TEST_CASE("rebuilding from a built stream reproduces it") {
    std::mt19937_64 rng(3);
    const LinkStream L = build_stream(random_rows(rng, 100), 0.0, 100.0);
    std::vector<RawLink> back;
    for (const Event& e : L.events())
        back.push_back(RawLink{e.t, L.label(e.pair.lo), L.label(e.pair.hi)});
    const LinkStream R = build_stream(back, L.alpha(), L.omega());
    REQUIRE(R.size() == L.size());
    for (std::size_t i = 0; i < L.size(); ++i) {
        CHECK(R.events()[i].t == L.events()[i].t);
        CHECK(R.label(R.events()[i].pair.lo) == L.label(L.events()[i].pair.lo));
        CHECK(R.label(R.events()[i].pair.hi) == L.label(L.events()[i].pair.hi));
    }
}

TEST_CASE("contact series is direction independent") {
    const LinkStream L = build_stream({{1, "a", "b"}, {4, "b", "a"}}, 0.0, 5.0);
    const NodeId a = *L.find("a");
    const NodeId b = *L.find("b");
    const ContactSeries uv = contact_series(L, PairKey::make(a, b));
    const ContactSeries vu = contact_series(L, PairKey::make(b, a));
    CHECK(uv.times == vu.times);
    CHECK(uv.gaps == vu.gaps);
}

TEST_CASE("induced graph of node substream stays inside the group") {
    std::mt19937_64 rng(11);
    const LinkStream L = build_stream(random_rows(rng, 150), 0.0, 100.0);
    const std::vector<NodeId> group = {1, 3};
    const InducedGraph G = induced_graph(substream_nodes(L, group));
    for (NodeId v : G.vertices)
        CHECK(std::find(group.begin(), group.end(), v) != group.end());
}
