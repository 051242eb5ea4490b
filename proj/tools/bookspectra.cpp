// Command-line surface for the bookspectra library. Exit codes: 0 success,
// 1 usage or input error, 2 a verification found violations or failed.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bookspectra/booksize.hpp"
#include "bookspectra/census.hpp"
#include "bookspectra/graph.hpp"
#include "bookspectra/jsonw.hpp"
#include "bookspectra/proof_trace.hpp"
#include "bookspectra/search.hpp"
#include "bookspectra/spectral.hpp"
#include "bookspectra/version.hpp"

namespace bs = bookspectra;

namespace {

// --- I/O plumbing -----------------------------------------------------------

struct Sink {
    std::ofstream file;
    std::ostream* os = &std::cout;
};

Sink open_out(const std::string& path) {
    Sink s;
    if (!path.empty()) {
        s.file.open(path);
        if (!s.file) throw std::runtime_error("cannot open output file: " + path);
        s.os = &s.file;
    }
    return s;
}

struct Source {
    std::ifstream file;
    std::istream* is = &std::cin;
};

Source open_in(const std::string& path) {
    Source s;
    if (!path.empty()) {
        s.file.open(path);
        if (!s.file) throw std::runtime_error("cannot open input file: " + path);
        s.is = &s.file;
    }
    return s;
}

std::string source_label(const std::string& path) { return path.empty() ? "stdin" : path; }

bs::CensusFormat parse_format(const std::string& f) {
    if (f == "csv") return bs::CensusFormat::csv;
    if (f == "jsonl") return bs::CensusFormat::jsonl;
    throw std::runtime_error("unknown format: " + f);
}

std::vector<int> parse_weights(const std::string& csv) {
    std::vector<int> out;
    std::istringstream is(csv);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        if (tok.empty()) throw std::runtime_error("empty weight in list");
        out.push_back(std::stoi(tok));
    }
    if (out.empty()) throw std::runtime_error("weight list is empty");
    return out;
}

std::vector<std::pair<long long, long long>> parse_splus_list(const std::string& spec) {
    std::vector<std::pair<long long, long long>> out;
    std::istringstream is(spec);
    std::string tok;
    while (std::getline(is, tok, ';')) {
        const auto comma = tok.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error("bad splus pair (want m,s): " + tok);
        out.emplace_back(std::stoll(tok.substr(0, comma)), std::stoll(tok.substr(comma + 1)));
    }
    return out;
}

// --- shared option bags -----------------------------------------------------

struct ConstructOpts {
    std::string family;
    int a = 1, b = 1, r = 1, s = 1;
    long long m = 0;
    std::string base, weights, out;
};

struct StreamOpts {
    std::string in, out, format;
    long long r = 1;
    double tol = 1e-10;
    int threads = 0;
};

struct TraceOpts {
    std::string graph, out;
    long long r = 1;
    double c = 1.0;
    double tol = 1e-10;
    bool json = false;
};

struct CensusOpts {
    int n_min = 1, n_max = 7;
    bool acknowledge_large = false;
    bool all_graphs = false;  // default: connected only
    std::string in, out, format = "csv";
    long long r = 1;
    double tol = 1e-10;
    int threads = 0;
};

struct ExtremalOpts {
    int k_max = 10;
    std::string splus = "17,1;37,2;101,4;1001,8";
    double tol = 1e-9;
};

struct AnnealOpts {
    int n = 12;
    std::string condition = "weak";
    std::uint64_t seed = 42;
    double t0 = 0.2, cooling = 0.999;
    long long steps = -1;
    int restarts = 8;
    bool trajectory = false;
    double tol = 1e-10;
    int threads = 0;
    std::string out;
};

struct BlowupOpts {
    int base_n_max = 6;
    std::string condition = "weak";
    double tol = 1e-10;
    int threads = 0;
    std::string out;
};

bs::Condition parse_condition(const std::string& c) {
    if (c == "weak") return bs::Condition::weak;
    if (c == "strict-nosal") return bs::Condition::strict_nosal;
    throw std::runtime_error("unknown condition: " + c + " (want weak or strict-nosal)");
}

// --- subcommand bodies ------------------------------------------------------

int run_construct(const ConstructOpts& o) {
    bs::Graph g;
    if (o.family == "complete-bipartite") {
        g = bs::complete_bipartite(o.a, o.b);
    } else if (o.family == "book") {
        g = bs::book(o.r);
    } else if (o.family == "splus") {
        g = bs::s_plus(o.m, o.s);
    } else if (o.family == "prism") {
        g = bs::triangular_prism();
    } else if (o.family == "blowup") {
        if (o.base.empty() || o.weights.empty())
            throw std::runtime_error("construct blowup needs --base and --weights");
        g = bs::blow_up({bs::parse_graph6(o.base), parse_weights(o.weights)});
    } else {
        throw std::runtime_error("unknown family: " + o.family);
    }
    Sink sink = open_out(o.out);
    *sink.os << bs::write_graph6(g) << '\n';
    std::cerr << "{\"subcommand\":\"construct\",\"family\":" << bs::jsonw::str(o.family)
              << ",\"n\":" << g.n() << ",\"m\":" << g.m() << "}\n";
    return 0;
}

int run_stats(const StreamOpts& o) {
    Source src = open_in(o.in);
    Sink sink = open_out(o.out);
    bs::CensusConfig cfg;
    cfg.r = o.r;
    cfg.tol = o.tol;
    cfg.threads = o.threads;
    cfg.format = parse_format(o.format.empty() ? "csv" : o.format);
    cfg.source = source_label(o.in);
    bs::census_stream(*src.is, cfg, *sink.os, std::cerr);
    return 0;
}

// rho and bk are line-by-line stream transforms; jsonl is their natural shape
int run_rho(const StreamOpts& o) {
    Source src = open_in(o.in);
    Sink sink = open_out(o.out);
    *sink.os << "{\"config\":{\"subcommand\":\"rho\",\"source\":"
             << bs::jsonw::str(source_label(o.in)) << ",\"tol\":" << bs::jsonw::real(o.tol)
             << "}}\n";
    std::string line;
    for (long long lineno = 1; std::getline(*src.is, line); ++lineno) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        try {
            const bs::Graph g = bs::parse_graph6(line);
            const bs::SpectralCertificate cert = bs::spectral_radius(g, o.tol);
            *sink.os << "{\"graph6\":" << bs::jsonw::str(line)
                     << ",\"rho_lower\":" << bs::jsonw::real(cert.rho_lower)
                     << ",\"rho_upper\":" << bs::jsonw::real(cert.rho_upper)
                     << ",\"estimate\":" << bs::jsonw::real(cert.estimate)
                     << ",\"iterations\":" << cert.iterations
                     << ",\"converged\":" << (cert.converged ? "true" : "false") << "}\n";
        } catch (const std::exception& e) {
            std::cerr << "line " << lineno << ": " << e.what() << '\n';
        }
    }
    return 0;
}

int run_bk(const StreamOpts& o) {
    Source src = open_in(o.in);
    Sink sink = open_out(o.out);
    *sink.os << "{\"config\":{\"subcommand\":\"bk\",\"source\":"
             << bs::jsonw::str(source_label(o.in)) << "}}\n";
    std::string line;
    for (long long lineno = 1; std::getline(*src.is, line); ++lineno) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        try {
            const bs::Graph g = bs::parse_graph6(line);
            const bs::BookStats st = bs::booksize(g);
            *sink.os << "{\"graph6\":" << bs::jsonw::str(line) << ",\"bk\":" << st.bk
                     << ",\"k2t\":" << st.k2t << ",\"witness_edge\":";
            if (st.witness_edge)
                *sink.os << '[' << st.witness_edge->first << ',' << st.witness_edge->second << ']';
            else
                *sink.os << "null";
            *sink.os << ",\"witness_pages\":[";
            for (std::size_t i = 0; i < st.witness_pages.size(); ++i)
                *sink.os << (i ? "," : "") << st.witness_pages[i];
            *sink.os << "]}\n";
        } catch (const std::exception& e) {
            std::cerr << "line " << lineno << ": " << e.what() << '\n';
        }
    }
    return 0;
}

int run_solve_rho(long long m, long long s) {
    const double root = bs::solve_splus_rho(m, s);
    std::cout << bs::jsonw::real(root) << '\n';
    std::cerr << "{\"subcommand\":\"solve-rho\",\"m\":" << m << ",\"s\":" << s << "}\n";
    return 0;
}

int run_trace(const TraceOpts& o) {
    const bs::Graph g = bs::parse_graph6(o.graph);
    const bs::SpectralCertificate cert = bs::spectral_radius(g, o.tol);
    const bs::ProofTrace trace = bs::build_trace(g, cert, o.r, o.c);
    const bs::ClaimSet claims = bs::verify_claims(trace);
    Sink sink = open_out(o.out);

    std::ostringstream cfg;
    cfg << "{\"subcommand\":\"trace\",\"graph\":" << bs::jsonw::str(o.graph) << ",\"r\":" << o.r
        << ",\"c\":" << bs::jsonw::real(o.c) << ",\"tol\":" << bs::jsonw::real(o.tol) << '}';

    if (o.json) {
        *sink.os << bs::trace_to_json(trace, &claims, cfg.str()) << '\n';
        return 0;
    }
    std::ostream& os = *sink.os;
    os << "graph " << o.graph << ": n=" << trace.n << " m=" << trace.m << " rho="
       << bs::jsonw::real(trace.rho) << " (r=" << trace.r << ", c=" << bs::jsonw::real(trace.c)
       << ")\n";
    os << "u*=" << trace.u_star << " |U|=" << trace.U.size() << " |W|=" << trace.W.size()
       << " |W*|=" << trace.W_star.size() << " e(U)=" << trace.e_U
       << " bad_edges=" << trace.bad_edges.size() << " |U1|=" << trace.U1.size()
       << " |U2|=" << trace.U2.size() << " |V*|=" << trace.V_star.size() << '\n';
    os << "residuals: eq1=" << bs::jsonw::real(trace.residual_eq1)
       << " eq2=" << bs::jsonw::real(trace.residual_eq2)
       << " identities=" << (bs::verify_identities(trace) ? "pass" : "FAIL") << '\n';
    if (trace.wstar_saturated) os << "note: W* threshold is nonpositive, W* = W\n";
    if (trace.fragile)
        os << "note: " << trace.fragile_count << " set membership(s) decided by < 1e-9\n";
    auto claim_line = [&](const char* name, const bs::ClaimReport& rep) {
        os << name << ": ";
        if (!rep.applicable) {
            os << "not applicable\n";
            return;
        }
        os << (rep.holds ? "holds" : "VIOLATED") << " (margin " << bs::jsonw::real(rep.margin)
           << ")\n";
    };
    claim_line("growth-bound", claims.growth_bound);
    claim_line("heavy-degree", claims.heavy_degree);
    claim_line("missing-neighbors", claims.missing_neighbors);
    claim_line("quarter-bound", claims.quarter_bound);
    claim_line("splus-equation", claims.splus_equation);
    return 0;
}

int run_verify_census(const CensusOpts& o) {
    bs::CensusConfig cfg;
    cfg.r = o.r;
    cfg.tol = o.tol;
    cfg.threads = o.threads;
    cfg.format = parse_format(o.format);
    bs::CensusSummary summary;
    Sink sink = open_out(o.out);
    if (!o.in.empty()) {
        Source src = open_in(o.in);
        cfg.source = o.in;
        summary = bs::census_stream(*src.is, cfg, *sink.os, std::cerr);
    } else {
        cfg.connected_only = !o.all_graphs;
        cfg.source = "enumerate";
        summary = bs::census_enumerate(o.n_min, o.n_max, o.acknowledge_large, cfg, *sink.os);
    }
    // summary goes to stdout; when the records already went there, use stderr
    std::ostream& sos = o.out.empty() ? std::cerr : std::cout;
    sos << summary.to_json(/*include_runtime=*/true) << '\n';
    return summary.has_violation() ? 2 : 0;
}

int run_verify_extremal(const ExtremalOpts& o) {
    const bs::ExtremalReport report =
        bs::verify_extremal_families(o.k_max, parse_splus_list(o.splus), o.tol);
    for (const bs::ExtremalCheck& check : report.checks)
        std::cout << (check.pass ? "[ok]   " : "[FAIL] ") << check.instance << ": " << check.detail
                  << '\n';
    std::cout << (report.pass ? "extremal families verified" : "extremal verification FAILED")
              << " (" << report.checks.size() << " checks)\n";
    return report.pass ? 0 : 2;
}

int run_search_anneal(const AnnealOpts& o) {
    bs::AnnealSchedule sched;
    sched.t0 = o.t0;
    sched.cooling = o.cooling;
    sched.steps = o.steps;
    sched.restarts = o.restarts;
    const bs::Condition cond = parse_condition(o.condition);
    const bs::SearchResult result =
        bs::anneal_search(o.n, cond, o.seed, sched, o.threads, o.trajectory, o.tol);

    std::ostringstream cfg;
    cfg << "{\"subcommand\":\"search anneal\",\"n\":" << o.n
        << ",\"condition\":" << bs::jsonw::str(o.condition) << ",\"seed\":" << o.seed
        << ",\"schedule\":{\"t0\":" << bs::jsonw::real(sched.t0)
        << ",\"cooling\":" << bs::jsonw::real(sched.cooling) << ",\"steps\":" << sched.steps
        << ",\"restarts\":" << sched.restarts << "},\"tol\":" << bs::jsonw::real(o.tol)
        << ",\"version\":" << bs::jsonw::str(bs::kVersion) << '}';

    std::ofstream ledger;
    std::ostream* os = &std::cout;
    if (!o.out.empty()) {
        ledger.open(o.out, std::ios::app);  // results accumulate across runs
        if (!ledger) throw std::runtime_error("cannot open ledger file: " + o.out);
        os = &ledger;
    }
    *os << bs::search_result_to_json(result, cfg.str()) << '\n';
    return 0;
}

int run_search_blowup(const BlowupOpts& o) {
    const bs::Condition cond = parse_condition(o.condition);
    const bs::SearchResult result = bs::blowup_search(o.base_n_max, cond, o.tol, o.threads);

    std::ostringstream cfg;
    cfg << "{\"subcommand\":\"search blowup\",\"base_n_max\":" << o.base_n_max
        << ",\"condition\":" << bs::jsonw::str(o.condition)
        << ",\"tol\":" << bs::jsonw::real(o.tol) << ",\"version\":" << bs::jsonw::str(bs::kVersion)
        << '}';

    std::ofstream ledger;
    std::ostream* os = &std::cout;
    if (!o.out.empty()) {
        ledger.open(o.out, std::ios::app);
        if (!ledger) throw std::runtime_error("cannot open ledger file: " + o.out);
        os = &ledger;
    }
    *os << bs::search_result_to_json(result, cfg.str()) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bookspectra: spectral radius vs booksize toolkit"};
    app.set_version_flag("--version", std::string("bookspectra ") + bs::kVersion);
    app.require_subcommand(1);

    ConstructOpts con;
    auto* c_con = app.add_subcommand("construct", "emit a named family member as graph6");
    c_con->add_option("--family", con.family,
                      "complete-bipartite | book | splus | blowup | prism")
        ->required();
    c_con->add_option("--a", con.a, "left part size (complete-bipartite)");
    c_con->add_option("--b", con.b, "right part size (complete-bipartite)");
    c_con->add_option("--r", con.r, "page count (book)");
    c_con->add_option("--m", con.m, "edge count (splus)");
    c_con->add_option("--s", con.s, "small side size (splus)");
    c_con->add_option("--base", con.base, "base graph6 (blowup)");
    c_con->add_option("--weights", con.weights, "comma-separated class sizes (blowup)");
    c_con->add_option("--out", con.out, "output file (default stdout)");

    StreamOpts stats;
    auto* c_stats = app.add_subcommand("stats", "full census record per input graph6 line");
    c_stats->add_option("--in", stats.in, "graph6 file (default stdin)");
    c_stats->add_option("--out", stats.out, "output file (default stdout)");
    c_stats->add_option("--r", stats.r, "page bound for the flag predicates");
    c_stats->add_option("--tol", stats.tol, "relative enclosure tolerance");
    c_stats->add_option("--format", stats.format, "csv | jsonl (default csv)");
    c_stats->add_option("--threads", stats.threads, "worker threads (0 = all)");

    StreamOpts rho;
    auto* c_rho = app.add_subcommand("rho", "certified spectral radius enclosure per line");
    c_rho->add_option("--in", rho.in, "graph6 file (default stdin)");
    c_rho->add_option("--out", rho.out, "output file (default stdout)");
    c_rho->add_option("--tol", rho.tol, "relative enclosure tolerance");

    StreamOpts bk;
    auto* c_bk = app.add_subcommand("bk", "booksize and witness per line");
    c_bk->add_option("--in", bk.in, "graph6 file (default stdin)");
    c_bk->add_option("--out", bk.out, "output file (default stdout)");

    long long solve_m = 0, solve_s = 0;
    auto* c_solve = app.add_subcommand("solve-rho", "closed-form extremal radius for S+(m,s)");
    c_solve->add_option("--m", solve_m, "edge count")->required();
    c_solve->add_option("--s", solve_s, "small side size")->required();

    TraceOpts trace;
    auto* c_trace = app.add_subcommand("trace", "Perron decomposition, identities, claim audit");
    c_trace->add_option("--graph", trace.graph, "graph6 string")->required();
    c_trace->add_option("--r", trace.r, "page bound");
    c_trace->add_option("--c", trace.c, "machinery constant (1 or 2)");
    c_trace->add_option("--tol", trace.tol, "relative enclosure tolerance");
    c_trace->add_flag("--json", trace.json, "emit the full trace as JSON");
    c_trace->add_option("--out", trace.out, "output file (default stdout)");

    auto* c_verify = app.add_subcommand("verify", "run a verification suite");
    c_verify->require_subcommand(1);

    CensusOpts census;
    auto* c_census = c_verify->add_subcommand("census", "predicate census over a graph stream");
    c_census->add_option("--n-min", census.n_min, "smallest enumerated order");
    c_census->add_option("--n-max", census.n_max, "largest enumerated order (<= 8)");
    c_census->add_flag("--acknowledge-large", census.acknowledge_large,
                       "allow n = 8 (2^28 graphs)");
    c_census->add_flag("--all-graphs", census.all_graphs,
                       "enumerate disconnected graphs too (default: connected only)");
    c_census->add_option("--in", census.in, "graph6 file instead of the enumerator");
    c_census->add_option("--out", census.out, "record file (default stdout)");
    c_census->add_option("--r", census.r, "page bound for the flag predicates");
    c_census->add_option("--tol", census.tol, "relative enclosure tolerance");
    c_census->add_option("--format", census.format, "csv | jsonl");
    c_census->add_option("--threads", census.threads, "worker threads (0 = all)");

    ExtremalOpts extremal;
    auto* c_extremal = c_verify->add_subcommand("extremal", "check the named extremal families");
    c_extremal->add_option("--k-max", extremal.k_max, "largest prism blow-up factor");
    c_extremal->add_option("--splus", extremal.splus,
                           "semicolon-separated m,s pairs (default canonical list)");
    c_extremal->add_option("--tol", extremal.tol, "relative radius tolerance");

    auto* c_search = app.add_subcommand("search", "maximize bk/sqrt(m) under a condition");
    c_search->require_subcommand(1);

    AnnealOpts anneal;
    auto* c_anneal = c_search->add_subcommand("anneal", "simulated annealing over n-vertex graphs");
    c_anneal->add_option("--n", anneal.n, "vertex count")->required();
    c_anneal->add_option("--condition", anneal.condition, "weak | strict-nosal");
    c_anneal->add_option("--seed", anneal.seed, "base RNG seed");
    c_anneal->add_option("--t0", anneal.t0, "initial temperature");
    c_anneal->add_option("--cooling", anneal.cooling, "geometric cooling factor");
    c_anneal->add_option("--steps", anneal.steps, "moves per restart (-1: 200 n^2)");
    c_anneal->add_option("--restarts", anneal.restarts, "independent restarts");
    c_anneal->add_flag("--trajectory", anneal.trajectory, "record best-ratio samples");
    c_anneal->add_option("--tol", anneal.tol, "relative enclosure tolerance");
    c_anneal->add_option("--threads", anneal.threads, "worker threads (0 = all)");
    c_anneal->add_option("--out", anneal.out, "append result to this JSONL ledger");

    BlowupOpts blowup;
    auto* c_blowup = c_search->add_subcommand("blowup", "weighted blow-ups of small bases");
    c_blowup->add_option("--base-n-max", blowup.base_n_max, "largest base order (3..8)");
    c_blowup->add_option("--condition", blowup.condition, "weak | strict-nosal");
    c_blowup->add_option("--tol", blowup.tol, "relative enclosure tolerance");
    c_blowup->add_option("--threads", blowup.threads, "worker threads (0 = all)");
    c_blowup->add_option("--out", blowup.out, "append result to this JSONL ledger");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }

    try {
        if (app.got_subcommand(c_con)) return run_construct(con);
        if (app.got_subcommand(c_stats)) return run_stats(stats);
        if (app.got_subcommand(c_rho)) return run_rho(rho);
        if (app.got_subcommand(c_bk)) return run_bk(bk);
        if (app.got_subcommand(c_solve)) return run_solve_rho(solve_m, solve_s);
        if (app.got_subcommand(c_trace)) return run_trace(trace);
        if (app.got_subcommand(c_verify)) {
            if (c_verify->got_subcommand(c_census)) return run_verify_census(census);
            return run_verify_extremal(extremal);
        }
        if (app.got_subcommand(c_search)) {
            if (c_search->got_subcommand(c_anneal)) return run_search_anneal(anneal);
            return run_search_blowup(blowup);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    std::cerr << "error: no subcommand\n";
    return 1;
}
