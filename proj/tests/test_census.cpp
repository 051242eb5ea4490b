#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <vector>

#include "bookspectra/booksize.hpp"
#include "bookspectra/census.hpp"
#include "bookspectra/graph.hpp"
#include "bookspectra/spectral.hpp"

using namespace bookspectra;

namespace {

CensusConfig config_with(int threads, CensusFormat fmt = CensusFormat::csv,
                         bool connected_only = true) {
    CensusConfig cfg;
    cfg.r = 1;
    cfg.threads = threads;
    cfg.format = fmt;
    cfg.connected_only = connected_only;
    cfg.source = "enumerate";
    return cfg;
}

}  // namespace

TEST_CASE("labeled enumeration counts") {
    CHECK(labeled_graph_count(1) == 1);
    CHECK(labeled_graph_count(3) == 8);
    CHECK(labeled_graph_count(7) == 2097152);

    long long total = 0, connected = 0;
    enumerate_labeled(3, false, false, [&](const Graph&, std::uint64_t) { ++total; });
    enumerate_labeled(3, true, false, [&](const Graph&, std::uint64_t) { ++connected; });
    CHECK(total == 8);
    CHECK(connected == 4);

    connected = 0;
    enumerate_labeled(4, true, false, [&](const Graph&, std::uint64_t) { ++connected; });
    CHECK(connected == 38);
    connected = 0;
    enumerate_labeled(5, true, false, [&](const Graph&, std::uint64_t) { ++connected; });
    CHECK(connected == 728);
    connected = 0;
    enumerate_labeled(6, true, false, [&](const Graph&, std::uint64_t) { ++connected; });
    CHECK(connected == 26704);

    CHECK_THROWS(enumerate_labeled(0, false, false, [](const Graph&, std::uint64_t) {}));
    CHECK_THROWS(enumerate_labeled(9, false, false, [](const Graph&, std::uint64_t) {}));
    CHECK_THROWS(enumerate_labeled(8, false, false, [](const Graph&, std::uint64_t) {}));
    // n = 8 runs when acknowledged; probe only the first masks via an early count
}

TEST_CASE("graph_from_mask bit order") {
    // bits: (0,1) (0,2) (0,3) (1,2) (1,3) (2,3)
    Graph g = graph_from_mask(4, 0b001001);
    CHECK(g.m() == 2);
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(1, 2));
    CHECK(graph_from_mask(3, 0b111) == book(1));
    CHECK(graph_from_mask(3, 0).m() == 0);
    CHECK_THROWS(graph_from_mask(3, 0b1000));  // bit outside the pair range
}

TEST_CASE("classify S+_{13,2}: a survey row with recognized structure") {
    Graph g = s_plus(13, 2);
    CensusRecord rec = classify_graph(g, 2, 1e-10);
    CHECK(rec.n == 8);
    CHECK(rec.m == 13);
    CHECK(rec.connected);
    CHECK_FALSE(rec.bipartite);
    CHECK(rec.bk == 2);
    REQUIRE(rec.s_plus.has_value());
    CHECK(*rec.s_plus == 2);
    CHECK(rec.weak_condition != ThreeValued::certified_no);
    CHECK(rec.flags[6] == FlagOutcome::recorded);
    CHECK_FALSE(rec.theorem2_threshold_met);  // 13 < (240*2)^2
    for (int i = 0; i < 6; ++i) CHECK(rec.flags[i] != FlagOutcome::violation);
}

TEST_CASE("classify K_{3,3}: borderline equality, no violations") {
    Graph g = complete_bipartite(3, 3);
    CensusRecord rec = classify_graph(g, 1, 1e-10);
    CHECK(rec.nosal == ThreeValued::borderline);
    CHECK(rec.complete_bipartite);
    CHECK(rec.bk == 0);
    for (int i = 0; i < 6; ++i) CHECK(rec.flags[i] != FlagOutcome::violation);
}

TEST_CASE("classify the triangle: flags pass, weak condition certified") {
    CensusRecord rec = classify_graph(book(1), 1, 1e-10);
    CHECK(rec.nosal == ThreeValued::certified_yes);
    CHECK(rec.bk == 1);
    CHECK(rec.flags[0] == FlagOutcome::ok);
    REQUIRE(rec.s_plus.has_value());
    CHECK(*rec.s_plus == 1);
}

TEST_CASE("disconnected graphs park the structural flags") {
    Graph g = Graph::from_edges(5, {{0, 1}, {0, 2}, {1, 2}});  // K3 plus isolated vertices
    CensusRecord rec = classify_graph(g, 1, 1e-10);
    CHECK_FALSE(rec.connected);
    for (int i : {0, 1, 2, 3, 5}) CHECK(rec.flags[i] == FlagOutcome::na);
    CHECK(rec.flags[6] == FlagOutcome::na);
    // flag e is pure integer arithmetic and stays active
    CHECK(rec.flags[4] == FlagOutcome::ok);
}

TEST_CASE("census over n <= 5: zero violations, known empirical minimum") {
    std::ostringstream records;
    CensusSummary s = census_enumerate(1, 5, false, config_with(1), records);
    CHECK(s.records == 1 + 1 + 4 + 38 + 728);
    CHECK_FALSE(s.has_violation());
    for (long long v : s.violations) CHECK(v == 0);
    REQUIRE(s.empirical_c.has_value());
    CHECK(*s.empirical_c == doctest::Approx(1.0 / std::sqrt(6.0)).epsilon(1e-12));
    CHECK(s.runtime_ms >= 0);
}

TEST_CASE("record streams are byte-identical across thread counts") {
    std::ostringstream r1, r3;
    CensusSummary s1 = census_enumerate(1, 5, false, config_with(1), r1);
    CensusSummary s3 = census_enumerate(1, 5, false, config_with(3), r3);
    CHECK(r1.str() == r3.str());
    CHECK(s1.to_json(false) == s3.to_json(false));

    // jsonl lane too
    std::ostringstream j1, j4;
    CensusSummary t1 = census_enumerate(1, 4, false, config_with(1, CensusFormat::jsonl), j1);
    CensusSummary t4 = census_enumerate(1, 4, false, config_with(4, CensusFormat::jsonl), j4);
    CHECK(j1.str() == j4.str());
    CHECK(t1.to_json(false) == t4.to_json(false));
}

TEST_CASE("census stream mode: ingestion, order, malformed lines") {
    std::string input =
        "Bw\n"
        "this-is-not-graph6\n"
        "D~{\n"
        "\n"
        "A_\n";
    std::istringstream in(input);
    std::ostringstream records, diags;
    CensusConfig cfg = config_with(2, CensusFormat::csv, false);
    cfg.source = "test";
    CensusSummary s = census_stream(in, cfg, records, diags);
    CHECK(s.records == 3);
    CHECK(s.malformed == 2);  // the junk line and the empty line
    CHECK(diags.str().find("line 2") != std::string::npos);
    CHECK(diags.str().find("line 4") != std::string::npos);

    // records preserve input order: Bw then D~{ then A_
    std::istringstream out(records.str());
    std::string line;
    std::vector<std::string> firsts;
    while (std::getline(out, line)) {
        if (line.empty() || line[0] == '#' || line.substr(0, 6) == "graph6") continue;
        firsts.push_back(line.substr(0, line.find(',')));
    }
    REQUIRE(firsts.size() == 3);
    CHECK(firsts[0] == "Bw");
    CHECK(firsts[1] == "D~{");
    CHECK(firsts[2] == "A_");
}

TEST_CASE("csv and jsonl rows carry the full field set") {
    CensusRecord rec = classify_graph(s_plus(13, 2), 2, 1e-10);
    std::string csv = record_to_csv(rec);
    // leads with the graph6 key, 16 commas, flags in compact form
    CHECK(csv.rfind(rec.graph6 + ",", 0) == 0);
    CHECK(rec.graph6 == write_graph6(s_plus(13, 2)));
    CHECK(std::count(csv.begin(), csv.end(), ',') == 16);
    CHECK(csv.find("a=") != std::string::npos);
    CHECK(csv.find("g=recorded") != std::string::npos);

    std::string jl = record_to_jsonl(rec);
    for (const char* key : {"\"graph6\"", "\"n\"", "\"m\"", "\"connected\"", "\"bipartite\"",
                            "\"complete_bipartite\"", "\"star\"", "\"has_c4\"", "\"bk\"",
                            "\"k2t\"", "\"rho_lower\"", "\"rho_upper\"", "\"nosal\"",
                            "\"weak_condition\"", "\"s_plus\"", "\"flags\"",
                            "\"theorem2_threshold_met\""}) {
        CHECK_MESSAGE(jl.find(key) != std::string::npos, "missing " << key);
    }
    CHECK(census_csv_header().find("graph6,n,m,") == 0);
}

TEST_CASE("extremal family verification") {
    ExtremalReport rep = verify_extremal_families(3, {{17, 1}, {37, 2}}, 1e-9);
    CHECK(rep.pass);
    CHECK(rep.checks.size() == 5);
    for (const auto& c : rep.checks) CHECK_MESSAGE(c.pass, c.instance << ": " << c.detail);

    // an unconstructible pair is an honest failure, not a crash
    ExtremalReport bad = verify_extremal_families(1, {{1001, 3}}, 1e-9);
    CHECK_FALSE(bad.pass);
    REQUIRE(bad.checks.size() == 2);
    CHECK(bad.checks[0].pass);  // the prism at k=1
    CHECK_FALSE(bad.checks[1].pass);
    CHECK(bad.checks[1].detail.find("construction failed") != std::string::npos);
}

TEST_CASE("summary json excludes runtime on demand") {
    std::ostringstream records;
    CensusSummary s = census_enumerate(1, 3, false, config_with(1), records);
    CHECK(s.to_json(true).find("\"runtime_ms\"") != std::string::npos);
    CHECK(s.to_json(false).find("\"runtime_ms\"") == std::string::npos);
}
