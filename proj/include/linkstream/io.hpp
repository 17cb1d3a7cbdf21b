#pragma once

// Trace ingestion and result serialization. Traces are textual edge lists,
// one "t u v" row per packet (space or comma separated, optional header).
// Numbers are printed with 17 significant digits so every written value
// parses back to the exact double that produced it.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "linkstream/profile.hpp"
#include "linkstream/roles.hpp"
#include "linkstream/stream.hpp"

namespace linkstream {

enum class Delimiter { space, comma };

struct TraceFormat {
    Delimiter delimiter = Delimiter::space;
    bool header = false;  // skip the first line
};

struct ParseError : std::runtime_error {
    ParseError(std::size_t line_arg, const std::string& what_arg)
        : std::runtime_error("line " + std::to_string(line_arg) + ": " + what_arg),
          line(line_arg) {}
    std::size_t line;
};

struct ParsedTrace {
    std::vector<RawLink> rows;
    std::size_t skipped = 0;  // malformed rows dropped in lenient mode
};

namespace detail {

inline bool parse_time(const std::string& field, double& out) {
    if (field.empty()) return false;
    char* end = nullptr;
    out = std::strtod(field.c_str(), &end);
    return end == field.c_str() + field.size() && std::isfinite(out);
}

inline bool split_row(const std::string& line, Delimiter delim, std::string fields[3]) {
    if (delim == Delimiter::comma) {
        std::size_t from = 0;
        for (int i = 0; i < 3; ++i) {
            const std::size_t at = line.find(',', from);
            if (i < 2) {
                if (at == std::string::npos) return false;
                fields[i] = line.substr(from, at - from);
                from = at + 1;
            } else {
                if (at != std::string::npos) return false;  // extra column
                fields[i] = line.substr(from);
            }
        }
        return true;
    }
    // whitespace separated, exactly three tokens
    std::size_t pos = 0;
    for (int i = 0; i < 3; ++i) {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
        const std::size_t start = pos;
        while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t') ++pos;
        if (pos == start) return false;
        fields[i] = line.substr(start, pos - start);
    }
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    return pos == line.size();
}

}  // namespace detail

/// Reads rows in file order (build_stream does the sorting). In strict
/// mode the first malformed row raises a ParseError naming its line; in
/// lenient mode malformed rows are skipped and counted.
inline ParsedTrace parse_trace(std::istream& in, const TraceFormat& format = {},
                               bool lenient = false) {
    ParsedTrace out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line_no == 1 && format.header) continue;
        if (line.empty()) continue;
        std::string fields[3];
        double t = 0.0;
        const bool shape_ok = detail::split_row(line, format.delimiter, fields);
        const bool ok = shape_ok && detail::parse_time(fields[0], t) && t >= 0.0 &&
                        !fields[1].empty() && !fields[2].empty();
        if (!ok) {
            if (lenient) {
                ++out.skipped;
                continue;
            }
            throw ParseError(line_no, shape_ok ? "bad timestamp in column 1"
                                               : "expected 3 columns (t, u, v)");
        }
        out.rows.push_back(RawLink{t, fields[1], fields[2]});
    }
    return out;
}

/// 17 significant digits: round-trips any double exactly.
inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

/// CSV with header "delta,density", one row per grid point.
inline void write_profile(const DensityProfile& profile, std::ostream& out) {
    if (profile.values.empty())
        throw std::invalid_argument("write_profile: empty profile");
    out << "delta,density\n";
    for (std::size_t i = 0; i < profile.values.size(); ++i)
        out << format_double(profile.grid.points[i]) << ',' << format_double(profile.values[i])
            << '\n';
    if (!out) throw std::runtime_error("write_profile: I/O failure");
}

/// CSV with header "x,count": number of items strictly greater than x.
inline void write_ccdf(const Ccdf& dist, std::ostream& out) {
    out << "x,count\n";
    for (const auto& [x, y] : dist.points) out << format_double(x) << ',' << y << '\n';
    if (!out) throw std::runtime_error("write_ccdf: I/O failure");
}

/// CSV with header "degree,tau_cc", one row per plotted node.
inline void write_degree_vs_cc(const std::vector<std::pair<std::size_t, double>>& points,
                               std::ostream& out) {
    out << "degree,tau_cc\n";
    for (const auto& [degree, cc] : points) out << degree << ',' << format_double(cc) << '\n';
    if (!out) throw std::runtime_error("write_degree_vs_cc: I/O failure");
}

/// JSON role report: stream metadata (including the alpha/omega convention
/// and the dropped self-loop count), per-node statistics with the rule that
/// fired, and summary counts.
inline void write_report(const RoleReport& report, const LinkStream& L, std::ostream& out) {
    if (L.size() == 0) throw std::invalid_argument("write_report: empty stream");
    nlohmann::ordered_json doc;
    doc["stream"] = {
        {"events", L.size()},
        {"nodes", L.node_count()},
        {"pairs", L.pair_count()},
        {"alpha", L.alpha()},
        {"omega", L.omega()},
        {"duration", L.duration()},
        {"alpha_explicit", L.alpha_explicit()},
        {"omega_explicit", L.omega_explicit()},
        {"dropped_self_loops", L.dropped_self_loops()},
    };
    doc["params"] = {
        {"threshold", report.threshold},
        {"star_degree", report.params.star_degree},
        {"star_cc", report.params.star_cc},
        {"dense_cc", report.params.dense_cc},
        {"periodic_frac", report.params.periodic_frac},
        {"ephemeral_frac", report.params.ephemeral_frac},
    };
    doc["nodes"] = nlohmann::ordered_json::array();
    for (const NodeRole& r : report.nodes) {
        nlohmann::ordered_json node;
        node["node"] = L.label(r.stats.node);
        node["degree"] = r.stats.degree;
        if (r.stats.char_time) {
            node["characteristic_time"] = {
                {"tau", r.stats.char_time->tau},
                {"variation", r.stats.char_time->variation},
                {"grid_index", r.stats.char_time->grid_index},
            };
        } else {
            node["characteristic_time"] = nullptr;
        }
        if (r.stats.tau_cc) {
            node["tau_clustering"] = *r.stats.tau_cc;
        } else {
            node["tau_clustering"] = nullptr;
        }
        node["nonzero_cc"] = r.stats.nonzero_cc;
        node["role"] = to_string(r.label);
        node["rule"] = r.rule;
        doc["nodes"].push_back(std::move(node));
    }
    nlohmann::ordered_json summary;
    for (RoleLabel label :
         {RoleLabel::star_hub, RoleLabel::dense_group_member, RoleLabel::periodic_service,
          RoleLabel::ephemeral, RoleLabel::unclassified}) {
        auto it = report.summary.find(label);
        summary[std::string(to_string(label))] = it == report.summary.end() ? 0 : it->second;
    }
    summary["nonzero_cc_nodes"] = report.nonzero_cc_nodes;
    doc["summary"] = std::move(summary);
    out << doc.dump(2) << '\n';
    if (!out) throw std::runtime_error("write_report: I/O failure");
}

/// Edge-list writer for synthetic fixtures (space format, no header).
inline void write_trace(const std::vector<RawLink>& rows, std::ostream& out) {
    for (const RawLink& r : rows) out << format_double(r.t) << ' ' << r.u << ' ' << r.v << '\n';
    if (!out) throw std::runtime_error("write_trace: I/O failure");
}

}  // namespace linkstream
