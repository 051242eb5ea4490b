#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bookspectra {

// Hard limit on vertex count. Defaults to 512; override with the
// BOOKSPECTRA_VERTEX_CAP environment variable (read once, at first use)
// or programmatically via set_vertex_cap before building any graph.
std::size_t vertex_cap();
void set_vertex_cap(std::size_t cap);

// Simple undirected graph on vertices 0..n-1, adjacency kept as bit rows
// packed into 64-bit words. Immutable once built: "mutation" goes through
// with_edge / without_edge, which return modified copies. The edge count m
// is cached at construction and every constructor validates symmetry and
// loop-freeness.
struct BlowupSpec;

class Graph {
public:
    Graph() : Graph(0) {}
    explicit Graph(int n);

    static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges);

    int n() const { return n_; }
    long long m() const { return m_; }

    bool has_edge(int u, int v) const {
        return (rows_[static_cast<std::size_t>(u) * words_ + static_cast<std::size_t>(v) / 64] >>
                (v % 64)) & 1u;
    }
    int degree(int v) const;
    int common_neighbors(int u, int v) const;

    const std::uint64_t* row(int v) const { return rows_.data() + static_cast<std::size_t>(v) * words_; }
    int row_words() const { return active_words_; }

    Graph with_edge(int u, int v) const;
    Graph without_edge(int u, int v) const;

    // edges in lexicographic order, u < v
    std::vector<std::pair<int, int>> edges() const;

    template <class F>
    void for_neighbors(int v, F&& f) const {
        const std::uint64_t* r = row(v);
        for (int w = 0; w < active_words_; ++w) {
            std::uint64_t bits = r[w];
            while (bits) {
                int b = __builtin_ctzll(bits);
                f(w * 64 + b);
                bits &= bits - 1;
            }
        }
    }

    bool operator==(const Graph& o) const;

private:
    friend Graph parse_graph6(std::string_view);
    friend Graph graph_from_mask(int, std::uint64_t);
    friend Graph complete_bipartite(int, int);
    friend Graph book(int);
    friend Graph s_plus(long long, int);
    friend Graph blow_up(const BlowupSpec&);

    void set_edge(int u, int v);
    void clear_edge(int u, int v);
    void recount();
    void check_invariants() const;

    int n_ = 0;
    long long m_ = 0;
    int words_ = 0;         // row stride, sized for the cap active at construction
    int active_words_ = 0;  // words actually spanned by n vertices
    std::vector<std::uint64_t> rows_;
};

// --- constructions ---------------------------------------------------------

// K_{a,b}; a, b >= 1
Graph complete_bipartite(int a, int b);

// book B_r: r triangles sharing one common edge; r >= 1.
// Vertices 0,1 are the spine, 2..r+1 the pages.
Graph book(int r);

// S+_{m,s}: K_{s,t} with t = (m-1)/s, plus one edge inside the t-side.
// Requires s >= 1, s | m-1, t >= 2. Vertices 0..s-1 are the s-side;
// the extra edge joins vertices s and s+1.
Graph s_plus(long long m, int s);

// the 3-prism (two triangles joined by a perfect matching, 6 vertices)
Graph triangular_prism();

struct BlowupSpec {
    Graph base;
    std::vector<int> weights;  // one per base vertex, each >= 1
};

// Replace base vertex i by an independent set of weights[i] vertices; blow-up
// vertices u in class i and v in class j are adjacent iff ij is a base edge.
// Class i occupies a contiguous index block, classes in base vertex order.
Graph blow_up(const BlowupSpec& spec);

// --- graph6 -----------------------------------------------------------------

// Canonical graph6 codec. Short form for n <= 62, 4-byte medium form up to
// n = 258047; the 8-byte long form is rejected on both ends. parse accepts
// exactly one complete encoding (no trailing bytes) and ignores the values of
// padding bits; write emits the canonical encoding, so
// write_graph6(parse_graph6(t)) == t for canonical-length t.
Graph parse_graph6(std::string_view s);
std::string write_graph6(const Graph& g);

// --- recognizers ------------------------------------------------------------

bool is_connected(const Graph& g);  // n >= 1

struct BipartiteCheck {
    bool bipartite = false;
    // side[v] in {0,1}: a valid 2-coloring when bipartite
    std::vector<std::int8_t> side;
    // when not bipartite: a closed walk of odd length, as a vertex sequence
    // that starts and ends at the same vertex
    std::vector<int> odd_walk;
};
BipartiteCheck is_bipartite(const Graph& g);

// true iff G is K_{a,b} for some a, b >= 1
bool is_complete_bipartite(const Graph& g);

// If removing a single edge leaves K_{s,t} with t >= 2 and both removed
// endpoints in the t-side, returns s; otherwise nullopt. Edges are scanned
// in lexicographic order and the first success is returned.
std::optional<int> is_s_plus(const Graph& g);

// true iff some vertex pair has two or more common neighbors
bool has_c4(const Graph& g);

// exact star K_{1,n-1}, n >= 2
bool is_star(const Graph& g);

}  // namespace bookspectra
