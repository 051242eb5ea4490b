#include "bookspectra/booksize.hpp"

#include <stdexcept>

namespace bookspectra {

BookStats booksize(const Graph& g) {
    BookStats st;
    const int n = g.n();
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            const long long c = g.common_neighbors(u, v);
            if (c > st.k2t) st.k2t = c;
            if (!g.has_edge(u, v)) continue;
            if (!st.witness_edge || c > st.bk) {
                st.witness_edge = {u, v};
                st.bk = c;
            }
        }
    }
    if (st.witness_edge) {
        auto [u, v] = *st.witness_edge;
        const std::uint64_t* a = g.row(u);
        const std::uint64_t* b = g.row(v);
        for (int w = 0; w < g.row_words(); ++w) {
            std::uint64_t bits = a[w] & b[w];
            while (bits) {
                st.witness_pages.push_back(w * 64 + __builtin_ctzll(bits));
                bits &= bits - 1;
            }
        }
    }
    return st;
}

bool is_book_free(const Graph& g, long long r) {
    if (r < 0) throw std::invalid_argument("is_book_free: negative page bound");
    return booksize(g).bk <= r;
}

long long blowup_booksize(const BlowupSpec& spec) {
    long long best = 0;
    for (auto [i, j] : spec.base.edges()) {
        long long pages = 0;
        const std::uint64_t* a = spec.base.row(i);
        const std::uint64_t* b = spec.base.row(j);
        for (int w = 0; w < spec.base.row_words(); ++w) {
            std::uint64_t bits = a[w] & b[w];
            while (bits) {
                pages += spec.weights[static_cast<std::size_t>(w * 64 + __builtin_ctzll(bits))];
                bits &= bits - 1;
            }
        }
        if (pages > best) best = pages;
    }
    return best;
}

long long blowup_edges(const BlowupSpec& spec) {
    long long total = 0;
    for (auto [i, j] : spec.base.edges())
        total += static_cast<long long>(spec.weights[static_cast<std::size_t>(i)]) *
                 spec.weights[static_cast<std::size_t>(j)];
    return total;
}

}  // namespace bookspectra
