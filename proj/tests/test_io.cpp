#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include <json.hpp>

#include "linkstream/io.hpp"
#include "linkstream/synth.hpp"

using namespace linkstream;

TEST_CASE("parse space separated rows") {
    std::istringstream in("12.5 a b\n3 c d\n");
    const ParsedTrace parsed = parse_trace(in);
    REQUIRE(parsed.rows.size() == 2);
    CHECK(parsed.rows[0].t == 12.5);
    CHECK(parsed.rows[0].u == "a");
    CHECK(parsed.rows[0].v == "b");
    CHECK(parsed.skipped == 0);
}

TEST_CASE("parse comma separated rows with header") {
    std::istringstream in("t,u,v\n12.5,a,b\n");
    TraceFormat format;
    format.delimiter = Delimiter::comma;
    format.header = true;
    const ParsedTrace parsed = parse_trace(in, format);
    REQUIRE(parsed.rows.size() == 1);
    CHECK(parsed.rows[0].t == 12.5);
}

TEST_CASE("malformed rows name their line") {
    std::istringstream in("1 a b\n12.5,a\n");
    TraceFormat format;
    format.delimiter = Delimiter::comma;
    try {
        parse_trace(in, format);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 1);  // "1 a b" has no commas
    }

    std::istringstream bad_time("x a b\n");
    try {
        parse_trace(bad_time, TraceFormat{});
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 1);
        CHECK(std::string(e.what()).find("line 1") != std::string::npos);
    }
}

TEST_CASE("lenient mode skips and counts") {
    std::istringstream in("1 a b\nbroken\n2 c d\n-3 e f\n");
    const ParsedTrace parsed = parse_trace(in, TraceFormat{}, true);
    CHECK(parsed.rows.size() == 2);
    CHECK(parsed.skipped == 2);
}

TEST_CASE("profile csv round trips") {
    DeltaGrid grid;
    grid.min = 1.0;
    grid.max = 10.0;
    grid.ratio = 3.0;
    grid.points = {1.0, 3.0, 10.0};
    DensityProfile p{"pair", grid, {1.0 / 3.0, 1.0, 1.0}};
    std::ostringstream out;
    write_profile(p, out);

    std::istringstream back(out.str());
    std::string line;
    std::getline(back, line);
    CHECK(line == "delta,density");
    std::size_t i = 0;
    while (std::getline(back, line)) {
        const auto comma = line.find(',');
        REQUIRE(comma != std::string::npos);
        CHECK(std::stod(line.substr(0, comma)) == grid.points[i]);
        CHECK(std::stod(line.substr(comma + 1)) == p.values[i]);
        ++i;
    }
    CHECK(i == 3);

    DensityProfile empty{"pair", DeltaGrid{}, {}};
    std::ostringstream sink;
    CHECK_THROWS_AS(write_profile(empty, sink), std::invalid_argument);
}

TEST_CASE("ccdf csv") {
    std::ostringstream out;
    write_ccdf(ccdf({3, 5, 5, 9}), out);
    CHECK(out.str() == "x,count\n0,4\n3,3\n5,1\n9,0\n");
}

TEST_CASE("role report serialization") {
    const LinkStream star = synth::gen_star("hub", 21, 900.0, 45.0, 0.0, 90000.0);
    const DeltaGrid grid = geometric_grid(1.0, star.duration(), 1.02);
    const RoleReport report = classify_roles(star, grid, 0.005);
    std::ostringstream out;
    write_report(report, star, out);

    const auto doc = nlohmann::json::parse(out.str());
    CHECK(doc["stream"]["events"].get<std::size_t>() == star.size());
    CHECK(doc["stream"]["dropped_self_loops"].get<std::size_t>() == 0);
    CHECK(doc["stream"]["alpha_explicit"].get<bool>() == true);
    CHECK(doc["summary"]["star-hub"].get<std::size_t>() == 1);
    CHECK(doc["nodes"].size() == star.node_count());

    std::size_t total = 0;
    for (const char* label :
         {"star-hub", "dense-group-member", "periodic-service", "ephemeral", "unclassified"})
        total += doc["summary"][label].get<std::size_t>();
    CHECK(total == star.node_count());

    // hub row carries the rule that fired
    bool hub_seen = false;
    for (const auto& node : doc["nodes"]) {
        if (node["node"] == "hub") {
            hub_seen = true;
            CHECK(node["role"] == "star-hub");
            CHECK(node["tau_clustering"].get<double>() == 0.0);
            CHECK(node["rule"].get<std::string>().find("star") != std::string::npos);
        }
    }
    CHECK(hub_seen);

    const LinkStream empty = build_stream({}, 0.0, 1.0);
    std::ostringstream sink;
    CHECK_THROWS_AS(write_report(report, empty, sink), std::invalid_argument);
}

TEST_CASE("trace writer emits parseable rows") {
    const auto rows = synth::poisson_rows("src", "dst", 0.2, 0.0, 300.0, 11);
    std::ostringstream out;
    write_trace(rows, out);
    std::istringstream in(out.str());
    const ParsedTrace parsed = parse_trace(in);
    REQUIRE(parsed.rows.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(parsed.rows[i].t == rows[i].t);  // 17 digits round-trip exactly
        CHECK(parsed.rows[i].u == rows[i].u);
    }
}
