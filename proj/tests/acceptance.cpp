// Acceptance harness: one line per criterion, [PASS]/[FAIL] plus diagnostics.
// Exit code is the number of failed criteria. Every tolerance is pinned in
// code here; nothing is configurable from the command line on purpose.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bookspectra/booksize.hpp"
#include "bookspectra/census.hpp"
#include "bookspectra/graph.hpp"
#include "bookspectra/proof_trace.hpp"
#include "bookspectra/rng.hpp"
#include "bookspectra/search.hpp"
#include "bookspectra/spectral.hpp"
#include "oracle.hpp"

using namespace bookspectra;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// diagnostics print floats at full diagnostic precision
std::ostringstream detail_stream() {
    std::ostringstream os;
    os.precision(12);
    return os;
}

// scratch space for the census record streams (~280 MB each); comparing
// them on disk keeps the harness within a small memory budget
std::filesystem::path scratch_dir() {
    static std::filesystem::path dir = [] {
        auto d = std::filesystem::temp_directory_path() /
                 ("bookspectra_accept_" +
                  std::to_string(std::chrono::steady_clock::now().time_since_epoch().count()));
        std::filesystem::create_directories(d);
        return d;
    }();
    return dir;
}

// byte offset of the first difference, or -1 when identical
long long first_difference(const std::filesystem::path& a, const std::filesystem::path& b) {
    std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
    std::vector<char> ba(1 << 20), bb(1 << 20);
    long long offset = 0;
    for (;;) {
        fa.read(ba.data(), static_cast<std::streamsize>(ba.size()));
        fb.read(bb.data(), static_cast<std::streamsize>(bb.size()));
        const std::streamsize na = fa.gcount(), nb = fb.gcount();
        const std::streamsize n = std::min(na, nb);
        for (std::streamsize i = 0; i < n; ++i)
            if (ba[static_cast<std::size_t>(i)] != bb[static_cast<std::size_t>(i)])
                return offset + i;
        if (na != nb) return offset + n;
        if (na == 0) return -1;
        offset += na;
    }
}

void report(int criterion, const char* name, bool pass, const std::string& detail) {
    std::printf("[%s] %d %s: %s\n", pass ? "PASS" : "FAIL", criterion, name, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

const std::vector<std::pair<long long, long long>> kSplusInstances = {
    {17, 1}, {37, 2}, {101, 4}, {1001, 3}, {1001, 8}};

// shared random trace suite for criteria 5 and 6: 1000 connected graphs up
// to 30 vertices plus the constructed families
struct TraceCase {
    Graph g;
    std::string label;
};

std::vector<TraceCase> trace_suite() {
    std::vector<TraceCase> cases;
    Rng rng(2024);
    for (int rep = 0; rep < 1000; ++rep) {
        int n = 2 + static_cast<int>(rng.below(29));
        cases.push_back({oracle::random_connected(rng, n, 0.3), "random"});
    }
    for (int k = 1; k <= 5; ++k)
        cases.push_back({blow_up({triangular_prism(), std::vector<int>(6, k)}), "prism-blowup"});
    for (int r = 1; r <= 8; ++r) cases.push_back({book(r), "book"});
    for (int a = 1; a <= 4; ++a)
        for (int b = a; b <= 5; ++b) cases.push_back({complete_bipartite(a, b), "bipartite"});
    for (auto [m, s] : kSplusInstances)
        if ((m - 1) % s == 0 && (m - 1) / s >= 2)
            cases.push_back({s_plus(m, static_cast<int>(s)), "splus"});
    return cases;
}

void criterion_1_extremal_values() {
    auto t0 = Clock::now();
    std::ostringstream bad = detail_stream();
    for (int k = 1; k <= 10; ++k) {
        Graph g = blow_up({triangular_prism(), std::vector<int>(6, k)});
        auto st = booksize(g);
        auto cert = spectral_radius(g);
        double target = 3.0 * k;
        if (g.m() != 9LL * k * k) bad << " m(k=" << k << ")=" << g.m();
        if (st.bk != k) bad << " bk(k=" << k << ")=" << st.bk;
        if (std::fabs(cert.estimate - target) > 1e-9 * target)
            bad << " |rho-3k|(k=" << k << ")=" << std::fabs(cert.estimate - target);
    }
    double el = seconds_since(t0);
    bool pass = bad.str().empty() && el < 5.0;
    std::ostringstream d = detail_stream();
    if (bad.str().empty())
        d << "k=1..10: m=9k^2, bk=k, |rho-3k|<=1e-9*3k, " << el << " s";
    else
        d << "deviations:" << bad.str();
    if (el >= 5.0) d << " (over 5 s budget: " << el << " s)";
    report(1, "prism-blowup-family", pass, d.str());
}

void criterion_2_splus_equation() {
    auto t0 = Clock::now();
    std::ostringstream bad = detail_stream();
    double worst_match = 0.0, worst_residual = 0.0;
    for (auto [m, s] : kSplusInstances) {
        double root = solve_splus_rho(m, s);
        try {
            Graph g = s_plus(m, static_cast<int>(s));
            auto cert = spectral_radius(g);
            double match = std::fabs(cert.estimate - root);
            double residual =
                std::fabs(cert.estimate * cert.estimate - static_cast<double>(m - 1) -
                          2.0 * static_cast<double>(s) / (cert.estimate - 1.0));
            worst_match = std::max(worst_match, match);
            worst_residual = std::max(worst_residual, residual);
            if (match > 1e-8) bad << " |rho-root|(m=" << m << ",s=" << s << ")=" << match;
            if (residual > 1e-6) bad << " residual(m=" << m << ",s=" << s << ")=" << residual;
        } catch (const std::exception& e) {
            bad << " construct(m=" << m << ",s=" << s << "): " << e.what()
                << " [closed-form root " << root << " exists but has no graph to match]";
        }
    }
    double el = seconds_since(t0);
    bool pass = bad.str().empty() && el < 10.0;
    std::ostringstream d = detail_stream();
    if (pass)
        d << "5 instances: max |rho-root| " << worst_match << ", max residual " << worst_residual
          << ", " << el << " s";
    else
        d << "constructible instances: max |rho-root| " << worst_match << ", max residual "
          << worst_residual << "; failures:" << bad.str();
    report(2, "splus-radius-equation", pass, d.str());
}

void criterion_3_splus_pair_identity() {
    std::ostringstream bad = detail_stream();
    double worst = 0.0;
    for (auto [m, s] : kSplusInstances) {
        try {
            Graph g = s_plus(m, static_cast<int>(s));
            ProofTrace t = build_trace(g, spectral_radius(g), s, 2.0);
            if (!t.eu_pair_sum.has_value()) {
                bad << " (m=" << m << ",s=" << s << "): expected exactly one edge inside U, got "
                    << t.e_U;
                continue;
            }
            double gap = std::fabs(*t.eu_pair_sum - 2.0 * static_cast<double>(s) / (t.rho - 1.0));
            worst = std::max(worst, gap);
            if (gap > 1e-6) bad << " gap(m=" << m << ",s=" << s << ")=" << gap;
        } catch (const std::exception& e) {
            bad << " construct(m=" << m << ",s=" << s << "): " << e.what();
        }
    }
    bool pass = bad.str().empty();
    std::ostringstream d = detail_stream();
    if (pass)
        d << "x_u1 + x_v1 = 2s/(rho-1) within 1e-6 on all 5 instances, worst gap " << worst;
    else
        d << "constructible instances worst gap " << worst << "; failures:" << bad.str();
    report(3, "splus-pair-identity", pass, d.str());
}

CensusConfig census_config(int threads) {
    CensusConfig cfg;
    cfg.r = 1;
    cfg.tol = 1e-10;
    cfg.threads = threads;
    cfg.format = CensusFormat::csv;
    cfg.connected_only = true;
    cfg.source = "enumerate";
    return cfg;
}

// record file and summary of the n <= 7 census, reused by criterion 9
struct CensusRun {
    std::filesystem::path records;
    std::string summary;  // runtime-free form
    CensusSummary full;
};

CensusRun run_census(int threads, const char* filename) {
    CensusRun run;
    run.records = scratch_dir() / filename;
    std::ofstream records(run.records, std::ios::binary);
    run.full = census_enumerate(1, 7, false, census_config(threads), records);
    run.summary = run.full.to_json(false);
    return run;
}

std::optional<CensusRun> census_first;  // kept for criterion 9

void criterion_4_census() {
    auto t0 = Clock::now();
    CensusRun run = run_census(0, "census_a.csv");
    double el = seconds_since(t0);
    std::ostringstream bad = detail_stream();
    if (run.full.records != 1893732) bad << " records=" << run.full.records << " (want 1893732)";
    const char* names = "abcde";
    for (int i = 0; i < 5; ++i)
        if (run.full.violations[i] != 0)
            bad << " violations(" << names[i] << ")=" << run.full.violations[i];
    if (el >= 600.0) bad << " runtime " << el << " s exceeds 10 min";
    bool pass = bad.str().empty();
    std::ostringstream d = detail_stream();
    if (pass)
        d << run.full.records << " connected graphs n<=7, zero violations in flags a-e, "
          << "empirical C " << *run.full.empirical_c << " (" << run.full.empirical_c_witness
          << "), " << el << " s";
    else
        d << "problems:" << bad.str();
    census_first = std::move(run);
    report(4, "desk-scale-census", pass, d.str());
}

// traces shared between criteria 5 and 6
struct BuiltTrace {
    std::string label;
    std::string graph6;
    ProofTrace t;
};

std::vector<BuiltTrace> built_traces;

void criterion_5_identities() {
    std::ostringstream bad = detail_stream();
    int count = 0;
    double worst = 0.0;
    std::vector<TraceCase> cases = trace_suite();
    built_traces.reserve(cases.size());
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const Graph& g = cases[i].g;
        long long r = std::max(1LL, booksize(g).bk);
        double c = (i % 2 == 0) ? 1.0 : 2.0;
        ProofTrace t = build_trace(g, spectral_radius(g), r, c);
        double rel = std::max(t.residual_eq1, t.residual_eq2) / static_cast<double>(t.m);
        worst = std::max(worst, rel);
        if (!verify_identities(t))
            bad << " " << cases[i].label << "(" << write_graph6(g)
                << "): eq1=" << t.residual_eq1 << " eq2=" << t.residual_eq2;
        built_traces.push_back({cases[i].label, write_graph6(g), std::move(t)});
        ++count;
    }
    bool pass = bad.str().empty();
    std::ostringstream d = detail_stream();
    if (pass)
        d << count << " traces (1000 random n<=30 + families), worst residual/m " << worst;
    else
        d << "failing traces:" << bad.str();
    report(5, "eigen-identities", pass, d.str());
}

void criterion_6_claim_margins() {
    std::ostringstream bad = detail_stream();
    long long applicable[4] = {0, 0, 0, 0};
    long long recorded_na = 0;
    double worst = 1e300;
    for (const BuiltTrace& bt : built_traces) {
        ClaimSet cs = verify_claims(bt.t);
        const ClaimReport* reports[4] = {&cs.growth_bound, &cs.heavy_degree,
                                         &cs.missing_neighbors, &cs.quarter_bound};
        const char* names[4] = {"growth-bound", "heavy-degree", "missing-neighbors",
                                "quarter-bound"};
        for (int i = 0; i < 4; ++i) {
            if (!reports[i]->applicable) {
                if (i == 3) ++recorded_na;
                continue;
            }
            ++applicable[i];
            worst = std::min(worst, reports[i]->margin);
            if (!reports[i]->holds)
                bad << " " << names[i] << "(" << bt.label << " " << bt.graph6
                    << ") margin=" << reports[i]->margin;
        }
    }
    bool pass = bad.str().empty();
    std::ostringstream d = detail_stream();
    if (pass) {
        d << "margins >= -1e-6 on " << applicable[0] << "/" << applicable[1] << "/"
          << applicable[2] << " applicable traces (worst " << worst << "); quarter-bound "
          << (applicable[3] > 0 ? "checked where applicable" : "applicable on none")
          << ", recorded not-applicable on " << recorded_na << " traces, never skipped silently";
    } else {
        d << "violations:" << bad.str();
    }
    report(6, "claim-margins", pass, d.str());
}

void criterion_7_oracle_enclosures() {
    Rng rng(4096);
    std::ostringstream bad = detail_stream();
    double worst_width = 0.0;
    for (int rep = 0; rep < 1000; ++rep) {
        int n = 2 + static_cast<int>(rng.below(9));
        Graph g = oracle::random_connected(rng, n);
        auto cert = spectral_radius(g);
        long double exact = oracle::spectral_radius(g);
        if (static_cast<long double>(cert.rho_lower) > exact ||
            static_cast<long double>(cert.rho_upper) < exact)
            bad << " enclosure-miss(" << write_graph6(g) << ")";
        if (cert.rho_upper > 0) {
            double rel = cert.width() / cert.rho_upper;
            worst_width = std::max(worst_width, rel);
            if (rel > 1e-9) bad << " width(" << write_graph6(g) << ")=" << rel;
        }
    }
    bool pass = bad.str().empty();
    std::ostringstream d = detail_stream();
    if (pass)
        d << "1000 random n<=10 graphs: dense-eigensolver value inside every enclosure, "
          << "worst relative width " << worst_width;
    else
        d << "failures:" << bad.str();
    report(7, "oracle-enclosures", pass, d.str());
}

struct SearchRuns {
    SearchResult blowup;
    SearchResult anneal;
    std::string blowup_json;
    std::string anneal_json;
};

SearchRuns run_searches(int threads) {
    SearchRuns r;
    r.blowup = blowup_search(6, Condition::weak, 1e-10, threads);
    r.anneal = anneal_search(12, Condition::weak, 42, AnnealSchedule{}, threads);
    r.blowup_json = search_result_to_json(r.blowup, "");
    r.anneal_json = search_result_to_json(r.anneal, "");
    return r;
}

std::optional<SearchRuns> search_first;

void criterion_8_search_floor() {
    auto t0 = Clock::now();
    SearchRuns runs = run_searches(0);
    double el = seconds_since(t0);
    std::ostringstream bad = detail_stream();
    const double floor = 1.0 / 3.0 - 1e-9;
    if (!(runs.blowup.feasible && runs.blowup.ratio >= floor))
        bad << " blowup ratio=" << runs.blowup.ratio << " feasible=" << runs.blowup.feasible;
    if (!(runs.anneal.feasible && runs.anneal.ratio >= floor))
        bad << " anneal ratio=" << runs.anneal.ratio << " feasible=" << runs.anneal.feasible;
    if (el >= 120.0) bad << " runtime " << el << " s exceeds 2 min";
    bool pass = bad.str().empty();
    std::ostringstream d = detail_stream();
    if (pass)
        d << "blowup(base<=6) ratio " << runs.blowup.ratio << ", anneal(n=12, seed 42) ratio "
          << runs.anneal.ratio << ", both certified weak, " << el << " s";
    else
        d << "failures:" << bad.str();
    search_first = std::move(runs);
    report(8, "search-floor", pass, d.str());
}

void criterion_9_determinism() {
    std::ostringstream bad = detail_stream();
    if (!census_first.has_value() || !search_first.has_value()) {
        report(9, "byte-determinism", false, "criteria 4 and 8 did not run");
        return;
    }
    // census again, different worker count: records and summary byte-identical
    CensusRun again = run_census(2, "census_b.csv");
    long long diff = first_difference(census_first->records, again.records);
    if (diff >= 0) bad << " census records diverge at byte " << diff;
    if (again.summary != census_first->summary) bad << " census summaries differ";

    SearchRuns sruns = run_searches(2);
    if (sruns.blowup_json != search_first->blowup_json) bad << " blowup result differs";
    if (sruns.anneal_json != search_first->anneal_json) bad << " anneal result differs";

    bool pass = bad.str().empty();
    std::ostringstream d = detail_stream();
    if (pass)
        d << "census records (" << std::filesystem::file_size(census_first->records)
          << " bytes), census summary, and both search results byte-identical on rerun "
          << "with a different worker count";
    else
        d << "mismatches:" << bad.str();
    report(9, "byte-determinism", pass, d.str());
}

}  // namespace

int main() {
    criterion_1_extremal_values();
    criterion_2_splus_equation();
    criterion_3_splus_pair_identity();
    criterion_4_census();
    criterion_5_identities();
    criterion_6_claim_margins();
    criterion_7_oracle_enclosures();
    criterion_8_search_floor();
    criterion_9_determinism();
    std::error_code ec;
    std::filesystem::remove_all(scratch_dir(), ec);  // best-effort scratch cleanup
    if (failures == 0)
        std::printf("all 9 criteria pass\n");
    else
        std::printf("%d criterion(s) failing\n", failures);
    return failures;
}
