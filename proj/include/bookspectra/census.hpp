#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bookspectra/graph.hpp"
#include "bookspectra/spectral.hpp"

namespace bookspectra {

// Outcome of one predicate flag on one graph. "recorded" is used by the
// survey flag (g), which collects rows instead of asserting anything.
enum class FlagOutcome { ok, violation, na, recorded };
std::string_view to_string(FlagOutcome f);

// One census row. Flags, in order a..g:
//   a  spectral-excess implies a triangle: violation iff nosal certified-yes
//      and bk = 0
//   b  equality forces complete bipartite: violation iff nosal is
//      certified-yes or borderline, the graph is triangle-free, and it is not
//      complete bipartite (exact equality cases are complete bipartite, so a
//      borderline enclosure there is consistent)
//   c  4-cycle or star: violation iff nosal certified-yes, m >= 10, not a
//      star, and no C4
//   d  booksize growth: violation iff nosal certified-yes and 81 bk^2 <= m
//   e  size forces pages: violation iff m >= floor(n^2/4)+1 and 6 bk < n
//   f  page-bounded radius: applicable iff connected, bk <= r and
//      m >= (9r)^2; violation iff applicable and nosal certified-yes, or
//      applicable and borderline on a non-complete-bipartite graph
//   g  survey row: recorded iff connected, non-bipartite, bk <= r and
//      weak_condition is certified-yes or borderline
// Flags a-d apply to connected graphs with m >= 1 and report na otherwise
// (isolated vertices break the equality structure of b and f); e is
// unconditional integer arithmetic.
struct CensusRecord {
    std::string graph6;
    int n = 0;
    long long m = 0;
    bool connected = false;
    bool bipartite = false;
    bool complete_bipartite = false;
    bool star = false;
    bool has_c4 = false;
    long long bk = 0;
    long long k2t = 0;
    double rho_lower = 0.0;
    double rho_upper = 0.0;
    ThreeValued nosal = ThreeValued::certified_no;
    ThreeValued weak_condition = ThreeValued::certified_no;
    std::optional<long long> s_plus;
    std::array<FlagOutcome, 7> flags{};
    bool theorem2_threshold_met = false;  // m >= (240 r)^2; meaningful when g = recorded
};

CensusRecord classify_graph(const Graph& g, long long r, double tol);

std::string census_csv_header();
std::string record_to_csv(const CensusRecord& rec);
std::string record_to_jsonl(const CensusRecord& rec);

// --- exhaustive enumeration ---------------------------------------------

// 2^binom(n,2) for 1 <= n <= 8
std::uint64_t labeled_graph_count(int n);

// Graph for an edge mask: bit k of mask is the k-th vertex pair in
// lexicographic order (0,1), (0,2), ..., (0,n-1), (1,2), ... Masks in
// increasing order enumerate every labeled simple graph exactly once.
Graph graph_from_mask(int n, std::uint64_t mask);

// Calls fn for every labeled graph on n vertices in edge-mask order.
// 1 <= n <= 8; n = 8 means 2^28 graphs and must be acknowledged explicitly.
void enumerate_labeled(int n, bool connected_only, bool acknowledge_large,
                       const std::function<void(const Graph&, std::uint64_t)>& fn);

// --- census runs ----------------------------------------------------------

enum class CensusFormat { csv, jsonl };

struct CensusConfig {
    long long r = 1;
    double tol = 1e-10;
    int threads = 0;  // <= 0: all hardware threads
    CensusFormat format = CensusFormat::csv;
    bool connected_only = false;  // enumeration runs only
    std::string source;           // label echoed into the config header
};

struct CensusSummary {
    std::string config_json;
    long long records = 0;
    long long malformed = 0;
    std::array<long long, 6> violations{};  // flags a..f
    long long recorded_g = 0;
    long long threshold_met_g = 0;
    long long nosal_yes = 0, nosal_no = 0, nosal_borderline = 0;
    std::optional<double> empirical_c;  // min bk/sqrt(m) over nosal certified-yes
    std::string empirical_c_witness;    // graph6 of the first minimizer in input order
    long long runtime_ms = 0;

    bool has_violation() const;
    // runtime is the only field that varies between identical runs; excluding
    // it yields a byte-reproducible document
    std::string to_json(bool include_runtime) const;
};

// Enumerates all labeled graphs for n = n_min..n_max and writes records (one
// line each, config header first) to records_out. Record output is
// byte-identical for a fixed config regardless of thread count.
CensusSummary census_enumerate(int n_min, int n_max, bool acknowledge_large,
                               const CensusConfig& cfg, std::ostream& records_out);

// Classifies one graph6 line per input line. Malformed lines are reported to
// diagnostics with their 1-based line number, counted, and skipped.
CensusSummary census_stream(std::istream& graph6_lines, const CensusConfig& cfg,
                            std::ostream& records_out, std::ostream& diagnostics);

// --- extremal family verification -----------------------------------------

struct ExtremalCheck {
    std::string instance;
    bool pass = false;
    std::string detail;
};

struct ExtremalReport {
    bool pass = true;
    std::vector<ExtremalCheck> checks;
};

// For k = 1..k_max: the k-blow-up of the 3-prism must have m = 9k^2,
// bk = k, and |rho - 3k| <= tol*3k. For each (m, s): the power-iteration
// radius of S+_{m,s} must match the closed-form root within 1e-8 and the
// root's defining residual must be at most 1e-8.
ExtremalReport verify_extremal_families(int k_max,
                                        const std::vector<std::pair<long long, long long>>& splus_list,
                                        double tol);

}  // namespace bookspectra
