// lsdensity: delta-density analysis of link streams.
//
// Subcommands:
//   pair-density  density of one pair at one delta
//   profile       density profile of a pair, a node, or the whole stream
//   char-times    characteristic times of all pairs or all nodes, as a CCDF
//   clustering    degree vs tau-clustering coefficient scatter data
//   report        per-node statistics and role labels (JSON)
//   synth         emit a synthetic fixture as an edge list
//   verify        cross-check the closed form against the exact oracle
//
// Exit codes: 0 success, 1 usage error, 2 data/verification error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "linkstream/density.hpp"
#include "linkstream/io.hpp"
#include "linkstream/oracle.hpp"
#include "linkstream/profile.hpp"
#include "linkstream/roles.hpp"
#include "linkstream/stream.hpp"
#include "linkstream/synth.hpp"

namespace {

using namespace linkstream;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct CommonOpts {
    std::string input;
    std::optional<double> alpha;
    std::optional<double> omega;
    std::string format = "space";
    bool header = false;
    bool lenient = false;
    double grid_min = 1.0;
    std::optional<double> grid_max;
    double grid_ratio = 1.01;
    double threshold = 0.15;
    unsigned workers = 0;
    std::string out;
};

void add_input_options(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("input", opts.input, "trace file (t u v rows)")->required();
    cmd->add_option("--alpha", opts.alpha, "capture start (defaults to first timestamp)");
    cmd->add_option("--omega", opts.omega, "capture end (defaults to last timestamp)");
    cmd->add_option("--format", opts.format, "row format: space or csv")
        ->check(CLI::IsMember({"space", "csv"}));
    cmd->add_flag("--header", opts.header, "skip the first line");
    cmd->add_flag("--lenient", opts.lenient, "skip malformed rows instead of failing");
    cmd->add_option("--workers", opts.workers, "worker threads (0 = hardware)");
    cmd->add_option("--out", opts.out, "output file (default stdout)");
}

void add_grid_options(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--grid-min", opts.grid_min, "smallest delta (default 1)");
    cmd->add_option("--grid-max", opts.grid_max, "largest delta (default stream duration)");
    cmd->add_option("--grid-ratio", opts.grid_ratio, "geometric step (default 1.01)");
    cmd->add_option("--threshold", opts.threshold,
                    "minimum density increase for a characteristic time (default 0.15)");
}

LinkStream load_stream(const CommonOpts& opts) {
    std::ifstream in(opts.input);
    if (!in) throw std::runtime_error("cannot open input: " + opts.input);
    TraceFormat format;
    format.delimiter = opts.format == "csv" ? Delimiter::comma : Delimiter::space;
    format.header = opts.header;
    ParsedTrace parsed = parse_trace(in, format, opts.lenient);
    if (parsed.skipped > 0)
        std::cerr << "warning: skipped " << parsed.skipped << " malformed rows\n";
    return build_stream(parsed.rows, opts.alpha, opts.omega);
}

DeltaGrid make_grid(const CommonOpts& opts, const LinkStream& L) {
    return geometric_grid(opts.grid_min, opts.grid_max.value_or(L.duration()), opts.grid_ratio);
}

// Writes through a file or stdout, with the stream flushed before exit.
class Output {
  public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw std::runtime_error("cannot open output: " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

PairKey find_pair(const LinkStream& L, const std::string& u, const std::string& v) {
    const auto a = L.find(u);
    const auto b = L.find(v);
    if (!a) throw std::runtime_error("unknown node: " + u);
    if (!b) throw std::runtime_error("unknown node: " + v);
    return PairKey::make(*a, *b);
}

int run_pair_density(const CommonOpts& opts, const std::string& u, const std::string& v,
                     double delta) {
    const LinkStream L = load_stream(opts);
    const PairKey pair = find_pair(L, u, v);
    const double d = pair_density(contact_series(L, pair), delta, L.duration());
    Output out(opts.out);
    out.stream() << format_double(d) << '\n';
    return kExitOk;
}

int run_profile(const CommonOpts& opts, const std::string& pair_arg, const std::string& node_arg,
                bool whole_stream) {
    const LinkStream L = load_stream(opts);
    const DeltaGrid grid = make_grid(opts, L);
    DensityProfile profile;
    if (whole_stream) {
        profile = stream_profile(L, grid);
    } else if (!node_arg.empty()) {
        const auto v = L.find(node_arg);
        if (!v) throw std::runtime_error("unknown node: " + node_arg);
        profile = node_profile(L, *v, grid);
    } else {
        const auto comma = pair_arg.find(',');
        if (comma == std::string::npos)
            throw CLI::ValidationError("--pair", "expected u,v");
        profile = pair_profile(
            L, find_pair(L, pair_arg.substr(0, comma), pair_arg.substr(comma + 1)), grid);
    }
    Output out(opts.out);
    write_profile(profile, out.stream());
    return kExitOk;
}

int run_char_times(const CommonOpts& opts, bool pairs, bool nodes) {
    const LinkStream L = load_stream(opts);
    const DeltaGrid grid = make_grid(opts, L);
    std::vector<double> taus;
    if (pairs) {
        for (const auto& [_, ct] : pair_characteristic_times(L, grid, opts.threshold, opts.workers))
            if (ct) taus.push_back(ct->tau);
    } else if (nodes) {
        for (const auto& [_, ct] : node_characteristic_times(L, grid, opts.threshold, opts.workers))
            if (ct) taus.push_back(ct->tau);
    }
    if (taus.empty()) throw std::runtime_error("no characteristic time passed the threshold");
    Output out(opts.out);
    write_ccdf(ccdf(taus), out.stream());
    return kExitOk;
}

int run_clustering(const CommonOpts& opts) {
    const LinkStream L = load_stream(opts);
    const DeltaGrid grid = make_grid(opts, L);
    Output out(opts.out);
    write_degree_vs_cc(degree_vs_tau_cc(L, grid, opts.threshold, opts.workers), out.stream());
    return kExitOk;
}

int run_report(const CommonOpts& opts, const RuleParams& params) {
    const LinkStream L = load_stream(opts);
    const DeltaGrid grid = make_grid(opts, L);
    const RoleReport report = classify_roles(L, grid, opts.threshold, params, opts.workers);
    Output out(opts.out);
    write_report(report, L, out.stream());
    return kExitOk;
}

int run_synth(const synth::GeneratorSpec& spec, const std::string& out_path) {
    Output out(out_path);
    write_trace(spec.rows(), out.stream());
    return kExitOk;
}

int run_verify(const std::string& input, const CommonOpts& opts, std::size_t fixtures,
               std::size_t deltas_per_fixture, std::size_t mc_samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> pick(0.0, 1.0);
    double worst = 0.0;
    std::size_t checks = 0;
    std::size_t mc_outside_3se = 0;

    auto check_series = [&](const ContactSeries& cs, double alpha, double omega) {
        const double duration = omega - alpha;
        const GapSummary summary(cs);
        for (std::size_t k = 0; k < deltas_per_fixture; ++k) {
            double delta = pick(rng) * duration;
            while (delta >= duration) delta = pick(rng) * duration;
            const double closed = summary.density(delta, duration);
            const double oracle = exact_density_oracle(cs, delta, alpha, omega).value;
            worst = std::max(worst, std::abs(closed - oracle));
            ++checks;
            if (mc_samples > 0) {
                const OracleEstimate mc =
                    mc_density_oracle(cs, delta, alpha, omega, mc_samples, rng());
                const double se =
                    std::sqrt(closed * (1.0 - closed) / static_cast<double>(mc_samples));
                if (std::abs(closed - mc.value) > 3.0 * se + 1e-12) ++mc_outside_3se;
            }
        }
    };

    if (!input.empty()) {
        CommonOpts in_opts(opts);
        in_opts.input = input;
        const LinkStream L = load_stream(in_opts);
        if (L.size() == 0) throw std::runtime_error("verify: stream has no events");
        for (const auto& [pair, _] : L.pair_times())
            check_series(contact_series(L, pair), L.alpha(), L.omega());
    } else {
        for (std::size_t i = 0; i < fixtures; ++i) {
            const double omega = 200.0 + 2000.0 * pick(rng);
            const double rate = 0.01 + 0.5 * pick(rng);
            const LinkStream L = synth::gen_poisson("a", "b", rate, 0.0, omega, rng());
            check_series(contact_series(L, PairKey{0, 1}), 0.0, omega);
        }
    }

    std::cout << "checks: " << checks << "\n";
    std::cout << "max |closed form - oracle|: " << format_double(worst) << "\n";
    if (mc_samples > 0) std::cout << "monte carlo outside 3 standard errors: " << mc_outside_3se
                                  << "\n";
    const bool ok = worst <= 1e-9;
    std::cout << (ok ? "OK" : "FAIL") << "\n";
    return ok ? kExitOk : kExitData;
}

}  // namespace

int run_cli(int argc, char** argv) {
    CLI::App app{"delta-density analysis of link streams"};
    app.require_subcommand(1);

    CommonOpts opts;

    auto* pair_density_cmd = app.add_subcommand("pair-density", "density of one pair at one delta");
    std::string u_arg, v_arg;
    double delta_arg = 0.0;
    add_input_options(pair_density_cmd, opts);
    pair_density_cmd->add_option("--u", u_arg, "first endpoint")->required();
    pair_density_cmd->add_option("--v", v_arg, "second endpoint")->required();
    pair_density_cmd->add_option("--delta", delta_arg, "window length in seconds")->required();

    auto* profile_cmd = app.add_subcommand("profile", "density profile over a delta grid");
    std::string profile_pair, profile_node;
    bool profile_stream_flag = false;
    add_input_options(profile_cmd, opts);
    add_grid_options(profile_cmd, opts);
    auto* popt = profile_cmd->add_option("--pair", profile_pair, "pair profile, as u,v");
    auto* nopt = profile_cmd->add_option("--node", profile_node, "node profile");
    auto* sopt = profile_cmd->add_flag("--stream", profile_stream_flag, "whole-stream profile");
    popt->excludes(nopt)->excludes(sopt);
    nopt->excludes(sopt);

    auto* char_cmd = app.add_subcommand("char-times", "characteristic-time CCDF");
    bool char_pairs = false, char_nodes = false;
    add_input_options(char_cmd, opts);
    add_grid_options(char_cmd, opts);
    auto* cpf = char_cmd->add_flag("--pairs", char_pairs, "characteristic time per pair");
    auto* cnf = char_cmd->add_flag("--nodes", char_nodes, "characteristic time per node");
    cpf->excludes(cnf);

    auto* clustering_cmd = app.add_subcommand("clustering", "degree vs tau-cc data");
    add_input_options(clustering_cmd, opts);
    add_grid_options(clustering_cmd, opts);

    auto* report_cmd = app.add_subcommand("report", "role report (JSON)");
    RuleParams params;
    add_input_options(report_cmd, opts);
    add_grid_options(report_cmd, opts);
    report_cmd->add_option("--star-degree", params.star_degree, "minimum star-hub degree");
    report_cmd->add_option("--star-cc", params.star_cc, "maximum star-hub tau-cc");
    report_cmd->add_option("--dense-cc", params.dense_cc, "minimum dense-group tau-cc");
    report_cmd->add_option("--periodic-frac", params.periodic_frac,
                           "periodic-service tau cap, as a fraction of duration");
    report_cmd->add_option("--ephemeral-frac", params.ephemeral_frac,
                           "ephemeral tau floor, as a fraction of duration");

    auto* synth_cmd = app.add_subcommand("synth", "emit a synthetic fixture");
    synth::GeneratorSpec spec;
    std::string synth_kind = "periodic";
    std::string synth_out;
    std::vector<std::string> clique_nodes;
    synth_cmd->add_option("--kind", synth_kind, "periodic | poisson | burst | star | clique")
        ->check(CLI::IsMember({"periodic", "poisson", "burst", "star", "clique"}));
    synth_cmd->add_option("--u", spec.u, "first endpoint label");
    synth_cmd->add_option("--v", spec.v, "second endpoint label");
    synth_cmd->add_option("--hub", spec.hub, "star hub label");
    synth_cmd->add_option("--leaves", spec.leaf_count, "star leaf count");
    synth_cmd->add_option("--nodes", clique_nodes, "clique node labels")->delimiter(',');
    synth_cmd->add_option("--period", spec.period, "period in seconds");
    synth_cmd->add_option("--phase", spec.phase, "phase offset in seconds");
    synth_cmd->add_option("--stagger", spec.stagger, "per-leaf phase stagger");
    synth_cmd->add_option("--rate", spec.rate, "poisson rate, events per second");
    synth_cmd->add_option("--burst-start", spec.burst_start, "burst window start");
    synth_cmd->add_option("--burst-length", spec.burst_length, "burst window length");
    synth_cmd->add_option("--burst-count", spec.burst_count, "events in the burst");
    synth_cmd->add_option("--alpha", spec.alpha, "capture start")->required();
    synth_cmd->add_option("--omega", spec.omega, "capture end")->required();
    synth_cmd->add_option("--seed", spec.seed, "seed for stochastic kinds");
    synth_cmd->add_option("--out", synth_out, "output file (default stdout)");

    auto* verify_cmd = app.add_subcommand("verify", "oracle cross-check");
    std::string verify_input;
    std::size_t fixtures = 100, deltas = 20, mc_samples = 0;
    std::uint64_t verify_seed = 1;
    verify_cmd->add_option("input", verify_input, "optional trace to check");
    verify_cmd->add_option("--alpha", opts.alpha, "capture start override");
    verify_cmd->add_option("--omega", opts.omega, "capture end override");
    verify_cmd->add_option("--format", opts.format, "row format: space or csv")
        ->check(CLI::IsMember({"space", "csv"}));
    verify_cmd->add_flag("--header", opts.header, "skip the first line");
    verify_cmd->add_flag("--lenient", opts.lenient, "skip malformed rows");
    verify_cmd->add_option("--fixtures", fixtures, "random fixtures when no input is given");
    verify_cmd->add_option("--deltas", deltas, "random deltas per fixture");
    verify_cmd->add_option("--mc-samples", mc_samples,
                           "also run the Monte Carlo oracle with this many samples");
    verify_cmd->add_option("--seed", verify_seed, "random seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (pair_density_cmd->parsed()) return run_pair_density(opts, u_arg, v_arg, delta_arg);
        if (profile_cmd->parsed()) {
            if (profile_pair.empty() && profile_node.empty() && !profile_stream_flag) {
                std::cerr << "profile: one of --pair, --node, --stream is required\n";
                return kExitUsage;
            }
            return run_profile(opts, profile_pair, profile_node, profile_stream_flag);
        }
        if (char_cmd->parsed()) {
            if (char_pairs == char_nodes) {
                std::cerr << "char-times: exactly one of --pairs, --nodes is required\n";
                return kExitUsage;
            }
            return run_char_times(opts, char_pairs, char_nodes);
        }
        if (clustering_cmd->parsed()) return run_clustering(opts);
        if (report_cmd->parsed()) return run_report(opts, params);
        if (synth_cmd->parsed()) {
            if (synth_kind == "periodic") spec.kind = synth::Kind::periodic;
            if (synth_kind == "poisson") spec.kind = synth::Kind::poisson;
            if (synth_kind == "burst") spec.kind = synth::Kind::burst;
            if (synth_kind == "star") spec.kind = synth::Kind::star;
            if (synth_kind == "clique") {
                spec.kind = synth::Kind::clique;
                spec.nodes = clique_nodes;
            }
            return run_synth(spec, synth_out);
        }
        if (verify_cmd->parsed())
            return run_verify(verify_input, opts, fixtures, deltas, mc_samples, verify_seed);
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}

int main(int argc, char** argv) { return run_cli(argc, argv); }
