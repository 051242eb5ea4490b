#include "doctest.h"

#include <vector>

#include "bookspectra/booksize.hpp"
#include "bookspectra/graph.hpp"
#include "bookspectra/rng.hpp"
#include "oracle.hpp"

using namespace bookspectra;

TEST_CASE("booksize on closed-form families") {
    // prism blow-ups: bk = k
    for (int k = 1; k <= 5; ++k) {
        auto st = booksize(blow_up({triangular_prism(), std::vector<int>(6, k)}));
        CHECK(st.bk == k);
    }
    // complete graph: bk = n - 2
    for (int n = 2; n <= 8; ++n) {
        std::vector<std::pair<int, int>> e;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
        CHECK(booksize(Graph::from_edges(n, e)).bk == n - 2);
    }
    // complete bipartite: triangle-free, but k2t sees the bigger side
    auto st = booksize(complete_bipartite(2, 5));
    CHECK(st.bk == 0);
    CHECK(st.k2t == 5);
    REQUIRE(st.witness_edge.has_value());
    CHECK(st.witness_pages.empty());
    // books and s_plus: bk = page count = s
    CHECK(booksize(book(7)).bk == 7);
    CHECK(booksize(s_plus(101, 2)).bk == 2);
    CHECK(booksize(s_plus(101, 4)).bk == 4);
}

TEST_CASE("witness is the first maximizing edge and lists its pages") {
    Graph b3 = book(3);
    auto st = booksize(b3);
    REQUIRE(st.witness_edge.has_value());
    CHECK(*st.witness_edge == std::pair<int, int>{0, 1});  // the spine
    CHECK(st.witness_pages == std::vector<int>{2, 3, 4});
    CHECK(static_cast<long long>(st.witness_pages.size()) == st.bk);

    // edgeless: no witness
    CHECK_FALSE(booksize(Graph(4)).witness_edge.has_value());
    // triangle-free with edges: witness exists, zero pages
    auto tf = booksize(complete_bipartite(2, 2));
    REQUIRE(tf.witness_edge.has_value());
    CHECK(tf.bk == 0);
    CHECK(tf.witness_pages.empty());
}

TEST_CASE("booksize and k2t match brute force on random graphs") {
    Rng rng(31);
    for (int rep = 0; rep < 300; ++rep) {
        Graph g = oracle::random_connected(rng, 2 + static_cast<int>(rng.below(14)));
        auto st = booksize(g);
        CHECK(st.bk == oracle::brute_booksize(g));
        CHECK(st.k2t == oracle::brute_k2t(g));
        CHECK(st.k2t >= st.bk);
        CHECK(st.bk <= g.n() - 2);
        CHECK((st.bk == 0) == !oracle::has_triangle(g));
        if (st.witness_edge.has_value()) {
            auto [u, v] = *st.witness_edge;
            CHECK(g.has_edge(u, v));
            for (int w : st.witness_pages) {
                CHECK(g.has_edge(u, w));
                CHECK(g.has_edge(v, w));
            }
        }
    }
}

TEST_CASE("adding an edge never decreases booksize") {
    Rng rng(37);
    int done = 0;
    while (done < 200) {
        Graph g = oracle::random_connected(rng, 3 + static_cast<int>(rng.below(10)), 0.4);
        int u = static_cast<int>(rng.below(static_cast<std::uint64_t>(g.n())));
        int v = static_cast<int>(rng.below(static_cast<std::uint64_t>(g.n())));
        if (u == v || g.has_edge(u, v)) continue;
        CHECK(booksize(g.with_edge(u, v)).bk >= booksize(g).bk);
        ++done;
    }
}

TEST_CASE("is_book_free") {
    Graph sp = s_plus(101, 2);
    CHECK(is_book_free(sp, 2));
    CHECK_FALSE(is_book_free(sp, 1));
    CHECK(is_book_free(book(1), 1));
    CHECK_FALSE(is_book_free(book(5), 4));
    CHECK(is_book_free(complete_bipartite(3, 3), 0));
}

TEST_CASE("blowup formulas match the materialized graph") {
    Rng rng(41);
    for (int rep = 0; rep < 100; ++rep) {
        int n = 2 + static_cast<int>(rng.below(5));
        Graph h = oracle::random_connected(rng, n);
        std::vector<int> w(n);
        for (int i = 0; i < n; ++i) w[i] = 1 + static_cast<int>(rng.below(5));
        BlowupSpec spec{h, w};
        Graph g = blow_up(spec);
        CHECK(blowup_edges(spec) == g.m());
        CHECK(blowup_booksize(spec) == booksize(g).bk);
    }
}
