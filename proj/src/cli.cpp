#include "pm4cover/cli.hpp"

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "pm4cover/cover_engine.hpp"
#include "pm4cover/graph_io.hpp"
#include "pm4cover/instance_gen.hpp"
#include "pm4cover/oracle.hpp"

namespace pm4cover {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalidInput = 1;
constexpr int kExitInternal = 2;
constexpr int kExitNegative = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Err::Syntax, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Err::Syntax, "cannot write " + path);
    out << data;
}

void apply_size_cap_env() {
    if (const char* cap = std::getenv("PM4COVER_SIZE_CAP")) {
        int value = std::atoi(cap);
        if (value > 0) {
            oracle_caps().matching_vertices = value;
            oracle_caps().cover_vertices = value;
            oracle_caps().circuit_vertices = value;
        }
    }
}

// ordered parallel map over [0, count)
void parallel_for(int count, int jobs, const std::function<void(int)>& work) {
    if (jobs <= 1) {
        for (int i = 0; i < count; i++) work(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; t++)
        pool.emplace_back([&]() {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) work(i);
        });
    for (auto& th : pool) th.join();
}

int run_cover(const std::string& in_path, const std::string& out_path, std::ostream& out,
              std::ostream& err) {
    ThreePole pole = parse_pole(read_file(in_path));
    try {
        CoverOutcome outcome = compute_proper_cover(pole);
        std::string doc = serialize_cover(pole, outcome.cover, outcome.trace);
        if (out_path.empty())
            out << doc;
        else
            write_file(out_path, doc);
        return kExitOk;
    } catch (const EngineError& e) {
        // still emit a partial certificate for debugging
        ProperCover empty;
        empty.h.assign(pole.n, 0);
        empty.chord.assign(pole.chords.size(), 0);
        std::string doc = serialize_cover(pole, empty, e.partial_trace);
        if (!out_path.empty()) write_file(out_path, doc);
        err << e.what() << "\n";
        return kExitInternal;
    }
}

int run_verify(const std::string& cover_path, const std::string& pole_path, std::ostream& out,
               std::ostream& err) {
    CoverDocument doc = parse_cover(read_file(cover_path));
    if (!pole_path.empty()) {
        ThreePole given = parse_pole(read_file(pole_path));
        if (!(given == doc.pole)) {
            err << "cover document embeds a different pole\n";
            return kExitInvalidInput;
        }
    }
    CoverReport report = verify_proper_cover(doc.pole, doc.cover);
    if (report.ok()) {
        out << "proper 4-cover: yes (" << doc.pole.n << " vertices)\n";
        return kExitOk;
    }
    out << "proper 4-cover: no, " << report.violations.size() << " violation(s)\n";
    for (const auto& v : report.violations) out << "  " << v.detail << "\n";
    return kExitNegative;
}

int run_gen(int n, std::uint64_t seed, int count, const std::string& profile, bool forbid_digons,
            const std::string& out_path, int jobs, std::ostream& out) {
    auto constraint = profile_constraint_from_name(profile);
    if (!constraint) throw Error(Err::Syntax, "unknown profile '" + profile + "'");
    std::vector<std::string> lines(count);
    parallel_for(count, jobs, [&](int i) {
        GenSpec spec{n, seed + static_cast<std::uint64_t>(i), *constraint, !forbid_digons};
        lines[i] = serialize_pole(gen_random_pole(spec));
    });
    std::string all;
    for (const auto& line : lines) all += line;
    if (out_path.empty())
        out << all;
    else
        write_file(out_path, all);
    return kExitOk;
}

int run_oracle(const std::string& pole_path, const std::string& graph_path, int k, bool circuits,
               bool matchings, std::ostream& out) {
    if (!graph_path.empty()) {
        CubicGraph g = parse_graph6_cubic(read_file(graph_path));
        KCoverResult result = covers_with_k_matchings(g, k);
        if (!result.coverable) {
            out << "not coverable by " << k << " perfect matchings\n";
            return kExitNegative;
        }
        out << "coverable by " << k << " perfect matchings; witness:\n";
        for (const auto& m : result.witness) {
            for (int e : m) out << " (" << g.edges[e].first << "," << g.edges[e].second << ")";
            out << "\n";
        }
        return kExitOk;
    }
    ThreePole pole = parse_pole(read_file(pole_path));
    if (matchings) {
        auto list = enumerate_perfect_matchings(pole);
        out << list.size() << " perfect matchings\n";
        for (const auto& m : list) {
            for (const EdgeRef& e : m) out << " " << e.to_string();
            out << "\n";
        }
        return kExitOk;
    }
    if (circuits) {
        auto list = brute_alternating_circuits(pole);
        out << list.size() << " alternating circuits\n";
        for (const auto& c : list) out << " " << c.to_string() << "\n";
        return kExitOk;
    }
    auto cover = brute_force_proper_cover(pole);
    if (!cover) {
        out << "no proper 4-cover found\n";
        return kExitNegative;
    }
    out << serialize_cover(pole, *cover, {});
    return kExitOk;
}

int run_split_cover(const std::string& graph_path, const std::string& two_factor_path,
                    const std::string& out_path, std::ostream& out, std::ostream& err) {
    CubicGraph g = parse_graph6_cubic(read_file(graph_path));
    std::optional<TwoFactorSplit> split;
    if (!two_factor_path.empty()) split = parse_two_factor(g, read_file(two_factor_path));
    try {
        GraphCoverCertificate cert = cover_two_circuit_graph(g, split);
        std::string doc = serialize_graph_cover(g, cert);
        if (out_path.empty())
            out << doc;
        else
            write_file(out_path, doc);
        return kExitOk;
    } catch (const Error& e) {
        if (e.code == Err::NoQualifyingTwoFactor) {
            err << e.what() << "\n";
            return kExitNegative;
        }
        throw;
    }
}

int run_sweep(int max_n, int jobs, std::ostream& out) {
    long long total = 0, agreed = 0;
    for (int n = 3; n <= max_n; n += 2) {
        std::vector<ThreePole> poles = enumerate_poles(n);
        std::vector<char> ok(poles.size(), 0);
        parallel_for(static_cast<int>(poles.size()), jobs, [&](int i) {
            CoverOutcome outcome = compute_proper_cover(poles[i]);
            bool fine = verify_proper_cover(poles[i], outcome.cover).ok() &&
                        independent_cover_check(poles[i], outcome.cover);
            if (n <= oracle_caps().cover_vertices)
                fine = fine && brute_force_proper_cover(poles[i]).has_value();
            ok[i] = fine;
        });
        long long good = std::count(ok.begin(), ok.end(), 1);
        out << "n=" << n << ": " << good << "/" << poles.size() << " verified\n";
        total += static_cast<long long>(poles.size());
        agreed += good;
    }
    double rate = total ? 100.0 * static_cast<double>(agreed) / static_cast<double>(total) : 100.0;
    out << "agreement " << rate << "% (" << agreed << "/" << total << " poles)\n";
    return agreed == total ? kExitOk : kExitNegative;
}

} // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    apply_size_cap_env();

    CLI::App app{"proper 4-cover toolkit for Hamiltonian cubic 3-poles"};
    app.require_subcommand(1);

    std::string in_path, out_path, pole_path, cover_path, graph_path, two_factor_path;
    std::string profile = "any";
    int n = 9, count = 1, k = 4, max_n = 11, jobs = 1;
    std::uint64_t seed = 1;
    bool circuits = false, matchings = false, forbid_digons = false;

    auto* cover = app.add_subcommand("cover", "compute a proper 4-cover of a pole");
    cover->add_option("--in", in_path, "pole document")->required();
    cover->add_option("--out", out_path, "cover document (stdout when omitted)");

    auto* verify = app.add_subcommand("verify", "check a cover document");
    verify->add_option("--cover", cover_path, "cover document")->required();
    verify->add_option("--pole", pole_path, "pole document to cross-check");

    auto* gen = app.add_subcommand("gen", "generate seeded random poles");
    gen->add_option("--n", n, "vertex count (odd)")->required();
    gen->add_option("--seed", seed, "base seed; instance i uses seed+i");
    gen->add_option("--count", count, "number of poles");
    gen->add_option("--profile", profile, "any|three-odd|len2|unique-exterior|rich");
    gen->add_flag("--forbid-digons", forbid_digons, "disallow chords parallel to circuit edges");
    gen->add_option("--out", out_path, "output file (stdout when omitted)");
    gen->add_option("--jobs", jobs, "parallel workers");

    auto* oracle = app.add_subcommand("oracle", "brute-force ground truth");
    oracle->add_option("--pole", pole_path, "pole document");
    oracle->add_option("--graph", graph_path, "graph6 file");
    oracle->add_option("--k", k, "matchings allowed for --graph coverage check");
    oracle->add_flag("--circuits", circuits, "list alternating circuits of --pole");
    oracle->add_flag("--matchings", matchings, "list perfect matchings of --pole");

    auto* split = app.add_subcommand("split-cover", "cover a two-odd-circuit cubic graph");
    split->add_option("--graph", graph_path, "graph6 file")->required();
    split->add_option("--two-factor", two_factor_path, "two-factor annotation document");
    split->add_option("--out", out_path, "certificate file (stdout when omitted)");

    auto* sweep = app.add_subcommand("sweep", "exhaustive engine-vs-oracle agreement");
    sweep->add_option("--max-n", max_n, "largest vertex count (odd)");
    sweep->add_option("--jobs", jobs, "parallel workers");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kExitOk;
        }
        err << e.what() << "\n";
        return kExitInvalidInput;
    }

    try {
        if (cover->parsed()) return run_cover(in_path, out_path, out, err);
        if (verify->parsed()) return run_verify(cover_path, pole_path, out, err);
        if (gen->parsed())
            return run_gen(n, seed, count, profile, forbid_digons, out_path, jobs, out);
        if (oracle->parsed()) {
            if (pole_path.empty() == graph_path.empty())
                throw Error(Err::Syntax, "oracle needs exactly one of --pole or --graph");
            return run_oracle(pole_path, graph_path, k, circuits, matchings, out);
        }
        if (split->parsed()) return run_split_cover(graph_path, two_factor_path, out_path, out, err);
        if (sweep->parsed()) return run_sweep(max_n, jobs, out);
    } catch (const EngineError& e) {
        err << e.what() << "\n";
        return kExitInternal;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return e.code == Err::InternalProofViolation ? kExitInternal : kExitInvalidInput;
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return kExitInvalidInput;
    }
    return kExitInvalidInput;
}

} // namespace pm4cover
