#include "bookspectra/graph.hpp"

#include <atomic>
#include <bit>
#include <cstdlib>
#include <deque>
#include <stdexcept>

namespace bookspectra {

namespace {

std::atomic<std::size_t> g_cap{0};

std::size_t read_cap_from_env() {
    if (const char* e = std::getenv("BOOKSPECTRA_VERTEX_CAP")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(e, &end, 10);
        if (end && *end == '\0' && v >= 1 && v <= (1ull << 24)) return static_cast<std::size_t>(v);
    }
    return 512;
}

[[noreturn]] void fail(const std::string& what) { throw std::invalid_argument(what); }

void require(bool ok, const char* what) {
    if (!ok) fail(what);
}

}  // namespace

std::size_t vertex_cap() {
    std::size_t c = g_cap.load(std::memory_order_relaxed);
    if (c == 0) {
        c = read_cap_from_env();
        g_cap.store(c, std::memory_order_relaxed);
    }
    return c;
}

void set_vertex_cap(std::size_t cap) {
    if (cap < 1) fail("vertex cap must be at least 1");
    g_cap.store(cap, std::memory_order_relaxed);
}

Graph::Graph(int n) {
    require(n >= 0, "Graph: negative vertex count");
    if (static_cast<std::size_t>(n) > vertex_cap())
        throw std::length_error("Graph: vertex count exceeds configured cap");
    n_ = n;
    words_ = static_cast<int>((vertex_cap() + 63) / 64);
    active_words_ = (n + 63) / 64;
    rows_.assign(static_cast<std::size_t>(n) * words_, 0);
}

void Graph::set_edge(int u, int v) {
    rows_[static_cast<std::size_t>(u) * words_ + static_cast<std::size_t>(v) / 64] |= 1ull << (v % 64);
    rows_[static_cast<std::size_t>(v) * words_ + static_cast<std::size_t>(u) / 64] |= 1ull << (u % 64);
}

void Graph::clear_edge(int u, int v) {
    rows_[static_cast<std::size_t>(u) * words_ + static_cast<std::size_t>(v) / 64] &= ~(1ull << (v % 64));
    rows_[static_cast<std::size_t>(v) * words_ + static_cast<std::size_t>(u) / 64] &= ~(1ull << (u % 64));
}

void Graph::recount() {
    long long total = 0;
    for (int v = 0; v < n_; ++v) total += degree(v);
    m_ = total / 2;
    check_invariants();
}

void Graph::check_invariants() const {
    long long total = 0;
    for (int v = 0; v < n_; ++v) {
        if (has_edge(v, v)) throw std::logic_error("Graph invariant: loop present");
        total += degree(v);
    }
    if (total % 2 != 0 || total / 2 != m_)
        throw std::logic_error("Graph invariant: cached edge count inconsistent");
    for (int v = 0; v < n_; ++v) {
        const std::uint64_t* r = row(v);
        // no bits at or above n
        for (int w = active_words_; w < words_; ++w)
            if (r[w]) throw std::logic_error("Graph invariant: bit beyond vertex range");
        if (n_ % 64 != 0 && active_words_ > 0 &&
            (r[active_words_ - 1] >> (n_ % 64)) != 0)
            throw std::logic_error("Graph invariant: bit beyond vertex range");
        for (int w = 0; w < active_words_; ++w) {
            std::uint64_t bits = r[w];
            while (bits) {
                int u = w * 64 + std::countr_zero(bits);
                bits &= bits - 1;
                if (!has_edge(u, v)) throw std::logic_error("Graph invariant: asymmetric adjacency");
            }
        }
    }
}

Graph Graph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    Graph g(n);
    for (auto [u, v] : edges) {
        require(u >= 0 && u < n && v >= 0 && v < n, "from_edges: endpoint out of range");
        require(u != v, "from_edges: loop edge");
        g.set_edge(u, v);
    }
    g.recount();
    return g;
}

int Graph::degree(int v) const {
    const std::uint64_t* r = row(v);
    int d = 0;
    for (int w = 0; w < active_words_; ++w) d += std::popcount(r[w]);
    return d;
}

int Graph::common_neighbors(int u, int v) const {
    const std::uint64_t* a = row(u);
    const std::uint64_t* b = row(v);
    int c = 0;
    for (int w = 0; w < active_words_; ++w) c += std::popcount(a[w] & b[w]);
    return c;
}

Graph Graph::with_edge(int u, int v) const {
    require(u >= 0 && u < n_ && v >= 0 && v < n_ && u != v, "with_edge: bad endpoints");
    Graph g = *this;
    if (!g.has_edge(u, v)) {
        g.set_edge(u, v);
        ++g.m_;
    }
    return g;
}

Graph Graph::without_edge(int u, int v) const {
    require(u >= 0 && u < n_ && v >= 0 && v < n_ && u != v, "without_edge: bad endpoints");
    Graph g = *this;
    if (g.has_edge(u, v)) {
        g.clear_edge(u, v);
        --g.m_;
    }
    return g;
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(static_cast<std::size_t>(m_));
    for (int u = 0; u < n_; ++u)
        for_neighbors(u, [&](int v) {
            if (u < v) out.emplace_back(u, v);
        });
    return out;
}

bool Graph::operator==(const Graph& o) const {
    if (n_ != o.n_ || m_ != o.m_) return false;
    for (int v = 0; v < n_; ++v) {
        const std::uint64_t* a = row(v);
        const std::uint64_t* b = o.row(v);
        for (int w = 0; w < active_words_; ++w)
            if (a[w] != b[w]) return false;
    }
    return true;
}

Graph complete_bipartite(int a, int b) {
    require(a >= 1 && b >= 1, "complete_bipartite: both sides must be nonempty");
    Graph g(a + b);
    for (int i = 0; i < a; ++i)
        for (int j = a; j < a + b; ++j) g.set_edge(i, j);
    g.recount();
    return g;
}

Graph book(int r) {
    require(r >= 1, "book: page count must be at least 1");
    Graph g(r + 2);
    g.set_edge(0, 1);
    for (int p = 2; p < r + 2; ++p) {
        g.set_edge(0, p);
        g.set_edge(1, p);
    }
    g.recount();
    return g;
}

Graph s_plus(long long m, int s) {
    require(s >= 1, "s_plus: s must be at least 1");
    require(m >= 3, "s_plus: need at least 3 edges");
    require((m - 1) % s == 0, "s_plus: s must divide m-1");
    const long long t = (m - 1) / s;
    require(t >= 2, "s_plus: large side must have at least 2 vertices");
    Graph g = complete_bipartite(s, static_cast<int>(t));
    g.set_edge(s, s + 1);
    g.m_ += 1;
    g.check_invariants();
    return g;
}

Graph triangular_prism() {
    return Graph::from_edges(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}, {0, 3}, {1, 4}, {2, 5}});
}

Graph blow_up(const BlowupSpec& spec) {
    const int bn = spec.base.n();
    require(static_cast<int>(spec.weights.size()) == bn, "blow_up: one weight per base vertex");
    long long total = 0;
    for (int w : spec.weights) {
        require(w >= 1, "blow_up: weights must be positive");
        total += w;
    }
    if (static_cast<std::size_t>(total) > vertex_cap())
        throw std::length_error("blow_up: result exceeds configured vertex cap");

    std::vector<int> offset(bn + 1, 0);
    for (int i = 0; i < bn; ++i) offset[i + 1] = offset[i] + spec.weights[i];

    Graph g(static_cast<int>(total));
    for (auto [i, j] : spec.base.edges())
        for (int u = offset[i]; u < offset[i + 1]; ++u)
            for (int v = offset[j]; v < offset[j + 1]; ++v) g.set_edge(u, v);
    g.recount();
    return g;
}

// --- graph6 ------------------------------------------------------------------

Graph parse_graph6(std::string_view s) {
    require(!s.empty(), "graph6: empty input");
    auto byte = [&](std::size_t i) { return static_cast<int>(static_cast<unsigned char>(s[i])); };
    for (std::size_t i = 0; i < s.size(); ++i)
        require(byte(i) >= 63 && byte(i) <= 126, "graph6: character outside printable range 63..126");

    long long n = 0;
    std::size_t pos = 0;
    if (byte(0) == 126) {
        require(s.size() >= 2, "graph6: truncated header");
        if (byte(1) == 126) fail("graph6: long form (n > 258047) not supported");
        require(s.size() >= 4, "graph6: truncated header");
        n = (static_cast<long long>(byte(1) - 63) << 12) |
            (static_cast<long long>(byte(2) - 63) << 6) | (byte(3) - 63);
        pos = 4;
    } else {
        n = byte(0) - 63;
        pos = 1;
    }
    if (static_cast<std::size_t>(n) > vertex_cap())
        throw std::length_error("graph6: vertex count exceeds configured cap");

    const long long bits = n * (n - 1) / 2;
    const std::size_t need = static_cast<std::size_t>((bits + 5) / 6);
    require(s.size() - pos >= need, "graph6: body shorter than header implies");
    require(s.size() - pos <= need, "graph6: trailing garbage after body");

    Graph g(static_cast<int>(n));
    long long t = 0;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i, ++t) {
            const int c = byte(pos + static_cast<std::size_t>(t / 6)) - 63;
            if ((c >> (5 - t % 6)) & 1) g.set_edge(i, j);
        }
    }
    g.recount();
    return g;
}

std::string write_graph6(const Graph& g) {
    const long long n = g.n();
    std::string out;
    if (n <= 62) {
        out.push_back(static_cast<char>(n + 63));
    } else if (n <= 258047) {
        out.push_back(126);
        out.push_back(static_cast<char>(63 + ((n >> 12) & 63)));
        out.push_back(static_cast<char>(63 + ((n >> 6) & 63)));
        out.push_back(static_cast<char>(63 + (n & 63)));
    } else {
        throw std::length_error("graph6: vertex count beyond medium-form range");
    }
    int acc = 0, nbits = 0;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i) {
            acc = (acc << 1) | (g.has_edge(i, j) ? 1 : 0);
            if (++nbits == 6) {
                out.push_back(static_cast<char>(acc + 63));
                acc = 0;
                nbits = 0;
            }
        }
    }
    if (nbits > 0) out.push_back(static_cast<char>((acc << (6 - nbits)) + 63));
    return out;
}

// --- recognizers --------------------------------------------------------------

bool is_connected(const Graph& g) {
    require(g.n() >= 1, "is_connected: empty graph");
    std::vector<char> seen(static_cast<std::size_t>(g.n()), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        g.for_neighbors(v, [&](int u) {
            if (!seen[u]) {
                seen[u] = 1;
                ++reached;
                stack.push_back(u);
            }
        });
    }
    return reached == g.n();
}

BipartiteCheck is_bipartite(const Graph& g) {
    BipartiteCheck res;
    const int n = g.n();
    res.side.assign(static_cast<std::size_t>(n), -1);
    std::vector<int> parent(static_cast<std::size_t>(n), -1);
    for (int root = 0; root < n; ++root) {
        if (res.side[root] != -1) continue;
        res.side[root] = 0;
        std::deque<int> queue{root};
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            int conflict = -1;
            g.for_neighbors(v, [&](int u) {
                if (res.side[u] == -1) {
                    res.side[u] = static_cast<std::int8_t>(1 - res.side[v]);
                    parent[u] = v;
                    queue.push_back(u);
                } else if (res.side[u] == res.side[v] && conflict < 0) {
                    conflict = u;
                }
            });
            if (conflict >= 0) {
                // walk root..v, edge v-conflict, then conflict..root reversed;
                // BFS layers make both path lengths even or both odd, so the
                // closed walk has odd total length
                std::vector<int> up;
                for (int x = v; x != -1; x = parent[x]) up.push_back(x);
                std::vector<int> down;
                for (int x = conflict; x != -1; x = parent[x]) down.push_back(x);
                res.odd_walk.assign(up.rbegin(), up.rend());
                res.odd_walk.insert(res.odd_walk.end(), down.begin(), down.end());
                res.bipartite = false;
                return res;
            }
        }
    }
    res.bipartite = true;
    return res;
}

bool is_complete_bipartite(const Graph& g) {
    if (g.n() < 2 || g.m() < 1) return false;
    BipartiteCheck bc = is_bipartite(g);
    if (!bc.bipartite) return false;
    long long a = 0;
    for (auto s : bc.side)
        if (s == 0) ++a;
    const long long b = g.n() - a;
    // bipartite means all edges cross the 2-coloring; counting suffices, and
    // it also rules out disconnected graphs (their cross pairs cannot all be
    // edges)
    return a >= 1 && b >= 1 && g.m() == a * b;
}

std::optional<int> is_s_plus(const Graph& g) {
    for (auto [u, v] : g.edges()) {
        Graph h = g.without_edge(u, v);
        if (!is_complete_bipartite(h)) continue;
        BipartiteCheck bc = is_bipartite(h);
        if (bc.side[u] != bc.side[v]) continue;  // endpoints must share a part
        int other = 0;
        for (int w = 0; w < h.n(); ++w)
            if (bc.side[w] != bc.side[u]) ++other;
        // the endpoints' part has >= 2 vertices by construction (u != v);
        // s is the size of the opposite part
        return other;
    }
    return std::nullopt;
}

bool has_c4(const Graph& g) {
    for (int u = 0; u < g.n(); ++u)
        for (int v = u + 1; v < g.n(); ++v)
            if (g.common_neighbors(u, v) >= 2) return true;
    return false;
}

bool is_star(const Graph& g) {
    const int n = g.n();
    if (n < 2 || g.m() != n - 1) return false;
    int centers = 0, leaves = 0;
    for (int v = 0; v < n; ++v) {
        int d = g.degree(v);
        if (d == n - 1)
            ++centers;
        else if (d == 1)
            ++leaves;
    }
    // K_2 is K_{1,1}: both vertices qualify as center
    return centers >= 1 && centers + leaves == n;
}

}  // namespace bookspectra
