#include "bookspectra/census.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "bookspectra/booksize.hpp"
#include "bookspectra/jsonw.hpp"
#include "bookspectra/parallel.hpp"

namespace bookspectra {

std::string_view to_string(FlagOutcome f) {
    switch (f) {
        case FlagOutcome::ok: return "ok";
        case FlagOutcome::violation: return "violation";
        case FlagOutcome::na: return "na";
        case FlagOutcome::recorded: return "recorded";
    }
    return "na";
}

CensusRecord classify_graph(const Graph& g, long long r, double tol) {
    if (g.n() < 1) throw std::invalid_argument("classify_graph: graph has no vertices");
    if (r < 1) throw std::invalid_argument("classify_graph: r must be at least 1");

    CensusRecord rec;
    rec.graph6 = write_graph6(g);
    rec.n = g.n();
    rec.m = g.m();
    rec.connected = is_connected(g);
    rec.bipartite = is_bipartite(g).bipartite;
    rec.complete_bipartite = is_complete_bipartite(g);
    rec.star = is_star(g);
    rec.has_c4 = has_c4(g);
    const BookStats bs = booksize(g);
    rec.bk = bs.bk;
    rec.k2t = bs.k2t;

    const SpectralCertificate cert = spectral_radius(g, tol);
    rec.rho_lower = cert.rho_lower;
    rec.rho_upper = cert.rho_upper;
    if (rec.m >= 1) {
        rec.nosal = nosal_classify(g, cert);
        try {
            rec.weak_condition = weak_condition_classify(g, cert);
        } catch (const std::domain_error&) {
            // enclosure touches 1: the right side m - 1 + 2/(rho - 1)
            // diverges as rho -> 1+, so the condition cannot hold
            rec.weak_condition = ThreeValued::certified_no;
        }
    }
    if (auto s = is_s_plus(g)) rec.s_plus = *s;

    using FO = FlagOutcome;
    const bool gate = rec.connected && rec.m >= 1;
    const bool nosal_yes = rec.nosal == ThreeValued::certified_yes;

    rec.flags[0] = !gate ? FO::na : (nosal_yes && rec.bk == 0) ? FO::violation : FO::ok;
    rec.flags[1] = !gate ? FO::na
                   : (rec.nosal != ThreeValued::certified_no && rec.bk == 0 &&
                      !rec.complete_bipartite)
                       ? FO::violation
                       : FO::ok;
    rec.flags[2] = !gate ? FO::na
                   : (nosal_yes && rec.m >= 10 && !rec.star && !rec.has_c4) ? FO::violation
                                                                            : FO::ok;
    rec.flags[3] =
        !gate ? FO::na : (nosal_yes && 81 * rec.bk * rec.bk <= rec.m) ? FO::violation : FO::ok;

    const long long n = rec.n;
    rec.flags[4] =
        (rec.m >= n * n / 4 + 1 && 6 * rec.bk < n) ? FO::violation : FO::ok;

    const bool applicable_f = gate && rec.bk <= r && rec.m >= 81 * r * r;
    rec.flags[5] = !applicable_f ? FO::na
                   : (nosal_yes ||
                      (rec.nosal == ThreeValued::borderline && !rec.complete_bipartite))
                       ? FO::violation
                       : FO::ok;

    const bool recorded_g = rec.connected && !rec.bipartite && rec.bk <= r &&
                            rec.weak_condition != ThreeValued::certified_no;
    rec.flags[6] = recorded_g ? FO::recorded : FO::na;
    rec.theorem2_threshold_met = recorded_g && rec.m >= 57600 * r * r;

    return rec;
}

// --- serialization ----------------------------------------------------------

std::string census_csv_header() {
    return "graph6,n,m,connected,bipartite,complete_bipartite,star,has_c4,bk,k2t,"
           "rho_lower,rho_upper,nosal,weak_condition,s_plus,flags,theorem2_threshold_met";
}

namespace {

const char* b2s(bool b) { return b ? "true" : "false"; }

constexpr char kFlagNames[7] = {'a', 'b', 'c', 'd', 'e', 'f', 'g'};

std::string flags_compact(const CensusRecord& rec) {
    std::string out;
    for (int i = 0; i < 7; ++i) {
        if (i) out += ';';
        out += kFlagNames[i];
        out += '=';
        out += to_string(rec.flags[i]);
    }
    return out;
}

}  // namespace

std::string record_to_csv(const CensusRecord& rec) {
    std::ostringstream os;
    os << rec.graph6 << ',' << rec.n << ',' << rec.m << ',' << b2s(rec.connected) << ','
       << b2s(rec.bipartite) << ',' << b2s(rec.complete_bipartite) << ',' << b2s(rec.star) << ','
       << b2s(rec.has_c4) << ',' << rec.bk << ',' << rec.k2t << ',' << jsonw::real(rec.rho_lower)
       << ',' << jsonw::real(rec.rho_upper) << ',' << to_string(rec.nosal) << ','
       << to_string(rec.weak_condition) << ',';
    if (rec.s_plus) os << *rec.s_plus;
    os << ',' << flags_compact(rec) << ',';
    if (rec.flags[6] == FlagOutcome::recorded)
        os << (rec.theorem2_threshold_met ? "met" : "unmet");
    else
        os << "na";
    return os.str();
}

std::string record_to_jsonl(const CensusRecord& rec) {
    std::ostringstream os;
    os << "{\"graph6\":" << jsonw::str(rec.graph6) << ",\"n\":" << rec.n << ",\"m\":" << rec.m
       << ",\"connected\":" << b2s(rec.connected) << ",\"bipartite\":" << b2s(rec.bipartite)
       << ",\"complete_bipartite\":" << b2s(rec.complete_bipartite)
       << ",\"star\":" << b2s(rec.star) << ",\"has_c4\":" << b2s(rec.has_c4)
       << ",\"bk\":" << rec.bk << ",\"k2t\":" << rec.k2t
       << ",\"rho_lower\":" << jsonw::real(rec.rho_lower)
       << ",\"rho_upper\":" << jsonw::real(rec.rho_upper)
       << ",\"nosal\":" << jsonw::str(to_string(rec.nosal))
       << ",\"weak_condition\":" << jsonw::str(to_string(rec.weak_condition)) << ",\"s_plus\":";
    if (rec.s_plus)
        os << *rec.s_plus;
    else
        os << "null";
    os << ",\"flags\":{";
    for (int i = 0; i < 7; ++i) {
        if (i) os << ',';
        os << '"' << kFlagNames[i] << "\":" << jsonw::str(to_string(rec.flags[i]));
    }
    os << "},\"theorem2_threshold_met\":";
    if (rec.flags[6] == FlagOutcome::recorded)
        os << b2s(rec.theorem2_threshold_met);
    else
        os << "null";
    os << '}';
    return os.str();
}

// --- enumeration ------------------------------------------------------------

std::uint64_t labeled_graph_count(int n) {
    if (n < 1 || n > 8) throw std::invalid_argument("labeled_graph_count: need 1 <= n <= 8");
    return 1ull << (n * (n - 1) / 2);
}

Graph graph_from_mask(int n, std::uint64_t mask) {
    if (n < 1 || n > 8) throw std::invalid_argument("graph_from_mask: need 1 <= n <= 8");
    if (n * (n - 1) / 2 < 64 && (mask >> (n * (n - 1) / 2)) != 0)
        throw std::invalid_argument("graph_from_mask: mask has bits beyond the pair count");
    Graph g(n);
    for (int i = 0; i < n && mask; ++i)
        for (int j = i + 1; j < n && mask; ++j) {
            if (mask & 1u) g.set_edge(i, j);
            mask >>= 1;
        }
    g.recount();
    return g;
}

void enumerate_labeled(int n, bool connected_only, bool acknowledge_large,
                       const std::function<void(const Graph&, std::uint64_t)>& fn) {
    if (n < 1 || n > 8) throw std::invalid_argument("enumerate_labeled: need 1 <= n <= 8");
    if (n == 8 && !acknowledge_large)
        throw std::invalid_argument(
            "enumerate_labeled: n = 8 enumerates 2^28 graphs; pass acknowledge_large");
    const std::uint64_t count = labeled_graph_count(n);
    for (std::uint64_t mask = 0; mask < count; ++mask) {
        Graph g = graph_from_mask(n, mask);
        if (connected_only && !is_connected(g)) continue;
        fn(g, mask);
    }
}

// --- census runs ------------------------------------------------------------

namespace {

constexpr std::size_t kMaskChunk = 16384;
constexpr std::size_t kLineChunk = 2048;

std::string format_name(CensusFormat f) { return f == CensusFormat::csv ? "csv" : "jsonl"; }

std::string make_config_json(const CensusConfig& cfg, const std::string& mode,
                             const std::string& extra) {
    std::ostringstream os;
    os << "{\"mode\":" << jsonw::str(mode) << ",\"source\":" << jsonw::str(cfg.source) << extra
       << ",\"r\":" << cfg.r << ",\"tol\":" << jsonw::real(cfg.tol)
       << ",\"format\":" << jsonw::str(format_name(cfg.format))
       << ",\"connected_only\":" << b2s(cfg.connected_only)
       << ",\"vertex_cap\":" << vertex_cap() << '}';
    return os.str();
}

void emit_stream_header(std::ostream& out, CensusFormat format, const std::string& config_json) {
    if (format == CensusFormat::csv)
        out << "# config " << config_json << '\n' << census_csv_header() << '\n';
    else
        out << "{\"config\":" << config_json << "}\n";
}

void tally(CensusSummary& s, const CensusRecord& rec) {
    ++s.records;
    for (int i = 0; i < 6; ++i)
        if (rec.flags[i] == FlagOutcome::violation) ++s.violations[i];
    if (rec.flags[6] == FlagOutcome::recorded) {
        ++s.recorded_g;
        if (rec.theorem2_threshold_met) ++s.threshold_met_g;
    }
    switch (rec.nosal) {
        case ThreeValued::certified_yes: ++s.nosal_yes; break;
        case ThreeValued::certified_no: ++s.nosal_no; break;
        case ThreeValued::borderline: ++s.nosal_borderline; break;
    }
    if (rec.nosal == ThreeValued::certified_yes) {
        const double ratio = static_cast<double>(rec.bk) / std::sqrt(static_cast<double>(rec.m));
        if (!s.empirical_c || ratio < *s.empirical_c) {
            s.empirical_c = ratio;
            s.empirical_c_witness = rec.graph6;
        }
    }
}

// merge must be applied in input order: the strict < keeps the earliest
// witness of the minimum
void merge(CensusSummary& into, const CensusSummary& part) {
    into.records += part.records;
    into.malformed += part.malformed;
    for (int i = 0; i < 6; ++i) into.violations[i] += part.violations[i];
    into.recorded_g += part.recorded_g;
    into.threshold_met_g += part.threshold_met_g;
    into.nosal_yes += part.nosal_yes;
    into.nosal_no += part.nosal_no;
    into.nosal_borderline += part.nosal_borderline;
    if (part.empirical_c && (!into.empirical_c || *part.empirical_c < *into.empirical_c)) {
        into.empirical_c = part.empirical_c;
        into.empirical_c_witness = part.empirical_c_witness;
    }
}

struct ChunkOut {
    std::string records;
    std::string diagnostics;
    CensusSummary partial;
};

}  // namespace

bool CensusSummary::has_violation() const {
    for (long long v : violations)
        if (v > 0) return true;
    return false;
}

std::string CensusSummary::to_json(bool include_runtime) const {
    std::ostringstream os;
    os << "{\"config\":" << (config_json.empty() ? "null" : config_json)
       << ",\"records\":" << records << ",\"malformed\":" << malformed << ",\"violations\":{";
    for (int i = 0; i < 6; ++i) {
        if (i) os << ',';
        os << '"' << kFlagNames[i] << "\":" << violations[i];
    }
    os << "},\"nosal\":{\"certified_yes\":" << nosal_yes << ",\"certified_no\":" << nosal_no
       << ",\"borderline\":" << nosal_borderline << "},\"theorem2\":{\"recorded\":" << recorded_g
       << ",\"threshold_met\":" << threshold_met_g << "},\"empirical_c\":"
       << (empirical_c ? jsonw::real(*empirical_c) : "null") << ",\"empirical_c_witness\":"
       << (empirical_c ? jsonw::str(empirical_c_witness) : "null");
    if (include_runtime) os << ",\"runtime_ms\":" << runtime_ms;
    os << '}';
    return os.str();
}

CensusSummary census_enumerate(int n_min, int n_max, bool acknowledge_large,
                               const CensusConfig& cfg, std::ostream& records_out) {
    if (n_min < 1 || n_max > 8 || n_min > n_max)
        throw std::invalid_argument("census_enumerate: need 1 <= n_min <= n_max <= 8");
    if (n_max == 8 && !acknowledge_large)
        throw std::invalid_argument(
            "census_enumerate: n = 8 enumerates 2^28 graphs; pass acknowledge_large");
    if (!(cfg.tol > 0)) throw std::invalid_argument("census_enumerate: tol must be positive");

    const auto t0 = std::chrono::steady_clock::now();

    std::ostringstream extra;
    extra << ",\"n_min\":" << n_min << ",\"n_max\":" << n_max;
    const std::string config_json = make_config_json(cfg, "enumerate", extra.str());
    emit_stream_header(records_out, cfg.format, config_json);

    struct Span {
        int n;
        std::uint64_t lo, hi;
    };
    std::vector<Span> spans;
    for (int n = n_min; n <= n_max; ++n) {
        const std::uint64_t count = labeled_graph_count(n);
        for (std::uint64_t lo = 0; lo < count; lo += kMaskChunk)
            spans.push_back({n, lo, std::min<std::uint64_t>(count, lo + kMaskChunk)});
    }

    CensusSummary summary;
    summary.config_json = config_json;

    std::function<ChunkOut(std::size_t)> work = [&](std::size_t k) {
        const Span span = spans[k];
        ChunkOut out;
        std::ostringstream os;
        for (std::uint64_t mask = span.lo; mask < span.hi; ++mask) {
            Graph g = graph_from_mask(span.n, mask);
            if (cfg.connected_only && !is_connected(g)) continue;
            CensusRecord rec = classify_graph(g, cfg.r, cfg.tol);
            os << (cfg.format == CensusFormat::csv ? record_to_csv(rec) : record_to_jsonl(rec))
               << '\n';
            tally(out.partial, rec);
        }
        out.records = os.str();
        return out;
    };
    std::function<void(ChunkOut&&)> emit = [&](ChunkOut&& out) {
        records_out << out.records;
        merge(summary, out.partial);
    };
    ordered_chunks<ChunkOut>(spans.size(), cfg.threads, work, emit);

    summary.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - t0)
                             .count();
    return summary;
}

CensusSummary census_stream(std::istream& graph6_lines, const CensusConfig& cfg,
                            std::ostream& records_out, std::ostream& diagnostics) {
    if (!(cfg.tol > 0)) throw std::invalid_argument("census_stream: tol must be positive");
    const auto t0 = std::chrono::steady_clock::now();

    std::vector<std::string> lines;
    for (std::string line; std::getline(graph6_lines, line);) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }

    const std::string config_json = make_config_json(cfg, "stream", "");
    emit_stream_header(records_out, cfg.format, config_json);

    CensusSummary summary;
    summary.config_json = config_json;

    const std::size_t chunk_count = (lines.size() + kLineChunk - 1) / kLineChunk;
    std::function<ChunkOut(std::size_t)> work = [&](std::size_t k) {
        ChunkOut out;
        std::ostringstream os, diag;
        const std::size_t lo = k * kLineChunk;
        const std::size_t hi = std::min(lines.size(), lo + kLineChunk);
        for (std::size_t i = lo; i < hi; ++i) {
            try {
                Graph g = parse_graph6(lines[i]);
                CensusRecord rec = classify_graph(g, cfg.r, cfg.tol);
                os << (cfg.format == CensusFormat::csv ? record_to_csv(rec)
                                                       : record_to_jsonl(rec))
                   << '\n';
                tally(out.partial, rec);
            } catch (const std::exception& e) {
                diag << "line " << (i + 1) << ": " << e.what() << '\n';
                ++out.partial.malformed;
            }
        }
        out.records = os.str();
        out.diagnostics = diag.str();
        return out;
    };
    std::function<void(ChunkOut&&)> emit = [&](ChunkOut&& out) {
        records_out << out.records;
        diagnostics << out.diagnostics;
        merge(summary, out.partial);
    };
    ordered_chunks<ChunkOut>(chunk_count, cfg.threads, work, emit);

    summary.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - t0)
                             .count();
    return summary;
}

// --- extremal family verification -------------------------------------------

ExtremalReport verify_extremal_families(
    int k_max, const std::vector<std::pair<long long, long long>>& splus_list, double tol) {
    if (!(tol > 0)) throw std::invalid_argument("verify_extremal_families: tol must be positive");
    ExtremalReport report;

    for (int k = 1; k <= k_max; ++k) {
        ExtremalCheck check;
        {
            std::ostringstream name;
            name << "prism-blowup[k=" << k << "]";
            check.instance = name.str();
        }
        std::ostringstream detail;
        try {
            const Graph g = blow_up({triangular_prism(), std::vector<int>(6, k)});
            const long long want_m = 9LL * k * k;
            const BookStats bs = booksize(g);
            const SpectralCertificate cert = spectral_radius(g);
            const double want_rho = 3.0 * k;
            const double dev = std::fabs(cert.estimate - want_rho);
            check.pass = g.m() == want_m && bs.bk == k && dev <= tol * want_rho;
            detail << "m=" << g.m() << " (want " << want_m << "), bk=" << bs.bk << " (want " << k
                   << "), rho=" << jsonw::real(cert.estimate) << ", |rho-3k|="
                   << jsonw::real(dev);
        } catch (const std::exception& e) {
            check.pass = false;
            detail << "construction failed: " << e.what();
        }
        check.detail = detail.str();
        report.pass = report.pass && check.pass;
        report.checks.push_back(std::move(check));
    }

    for (auto [m, s] : splus_list) {
        ExtremalCheck check;
        {
            std::ostringstream name;
            name << "splus[m=" << m << ",s=" << s << "]";
            check.instance = name.str();
        }
        std::ostringstream detail;
        try {
            const Graph g = s_plus(m, static_cast<int>(s));
            const SpectralCertificate cert = spectral_radius(g);
            const double root = solve_splus_rho(m, s);
            const double match = std::fabs(cert.estimate - root);
            const double residual = std::fabs(root * root - static_cast<double>(m - 1) -
                                              2.0 * static_cast<double>(s) / (root - 1.0));
            check.pass = match <= 1e-8 && residual <= 1e-8;
            detail << "spectral=" << jsonw::real(cert.estimate) << ", root=" << jsonw::real(root)
                   << ", |spectral-root|=" << jsonw::real(match)
                   << ", residual=" << jsonw::real(residual);
        } catch (const std::exception& e) {
            check.pass = false;
            detail << "construction failed: " << e.what();
        }
        check.detail = detail.str();
        report.pass = report.pass && check.pass;
        report.checks.push_back(std::move(check));
    }

    return report;
}

}  // namespace bookspectra
