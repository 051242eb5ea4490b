#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "bookspectra/graph.hpp"

namespace bookspectra {

// bk: the booksize, max over edges uv of |N(u) n N(v)|; zero exactly on
// triangle-free graphs. k2t: the same maximum taken over all vertex pairs,
// adjacent or not (the largest t with K_{2,t} as a not-necessarily-induced
// subgraph). witness_edge is the lexicographically first edge attaining bk,
// present whenever the graph has an edge; witness_pages lists its common
// neighbors in increasing order.
struct BookStats {
    long long bk = 0;
    long long k2t = 0;
    std::optional<std::pair<int, int>> witness_edge;
    std::vector<int> witness_pages;
};

BookStats booksize(const Graph& g);

// bk(G) <= r, i.e. G contains no book with r+1 pages
bool is_book_free(const Graph& g, long long r);

// Booksize of blow_up(spec) without building it:
// max over base edges ij of the total weight of N(i) n N(j).
long long blowup_booksize(const BlowupSpec& spec);

// Edge count of blow_up(spec): sum over base edges ij of w_i * w_j.
long long blowup_edges(const BlowupSpec& spec);

}  // namespace bookspectra
