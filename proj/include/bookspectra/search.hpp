#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bookspectra/graph.hpp"

namespace bookspectra {

// Spectral side condition a candidate graph must certify.
//   strict_nosal: rho > sqrt(m), certified when rho_lower - sqrt(m) > 0
//   weak:         rho^2 >= m - 1 + 2/(rho - 1), certified when
//                 h(rho_lower) - (m - 1) >= 0 with h(t) = t^2 - 2/(t - 1)
enum class Condition { strict_nosal, weak };
std::string_view to_string(Condition c);

struct AnnealSchedule {
    double t0 = 0.2;        // initial temperature
    double cooling = 0.999; // geometric factor per step
    long long steps = -1;   // moves per restart; -1 means 200 n^2
    int restarts = 8;
};

struct SearchResult {
    std::string best_graph6;
    double ratio = 0.0;  // bk / sqrt(m) of best_graph6, recomputed on report
    bool feasible = false;
    Condition condition = Condition::weak;
    // rho_lower - sqrt(m) for strict_nosal, h(rho_lower) - (m-1) for weak;
    // always derived from the certified lower bound, never the estimate
    double condition_margin = 0.0;
    std::uint64_t seed = 0;
    long long moves_evaluated = 0;
    std::vector<std::pair<long long, double>> trajectory;  // (step, best ratio) samples
};

// Simulated annealing over connected graphs on n labeled vertices, maximizing
// bk/sqrt(m) subject to the condition. Moves are edge add / remove / swap;
// moves that disconnect the graph are rejected. The objective of an
// uncertified candidate is penalized by 10x its condition deficit. Restart
// r uses seed + r; restarts run in parallel and reduce deterministically
// (max ratio, ties to the lexicographically smaller graph6), so the result
// depends only on (n, condition, seed, schedule, tol). Known families that
// fit n (prism blow-ups, S+, complete 4-partite) seed the first restarts;
// remaining restarts start from random connected graphs. The winner is
// re-verified from a fresh certificate before reporting. When no candidate
// certifies the condition, the result carries the best-scoring graph with
// feasible = false.
SearchResult anneal_search(int n, Condition condition, std::uint64_t seed,
                           const AnnealSchedule& schedule = {}, int threads = 0,
                           bool record_trajectory = false, double tol = 1e-10);

// Exhaustive scan over isomorphism-reduced connected triangle-containing base
// graphs on 3..base_n_max vertices (base_n_max <= 8); per base, integer
// weights in [1, 64] are optimized by best-improvement coordinate ascent on
// the blow-up ratio, with the condition certified through the weighted-base
// quotient. Ties break toward smaller total weight, then lexicographically
// smaller weights, then smaller base. The global winner is materialized and
// re-verified as a full graph.
SearchResult blowup_search(int base_n_max, Condition condition, double tol = 1e-10,
                           int threads = 0);

// One JSON line for the reproduction ledger. config_json, when nonempty, is
// embedded verbatim under "config".
std::string search_result_to_json(const SearchResult& r, std::string_view config_json);

}  // namespace bookspectra
