#include "bookspectra/search.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "bookspectra/booksize.hpp"
#include "bookspectra/census.hpp"
#include "bookspectra/jsonw.hpp"
#include "bookspectra/parallel.hpp"
#include "bookspectra/rng.hpp"
#include "bookspectra/spectral.hpp"

namespace bookspectra {

std::string_view to_string(Condition c) {
    return c == Condition::strict_nosal ? "strict-nosal" : "weak";
}

namespace {

// stand-in margin when rho_lower <= 1 leaves the weak condition undefined;
// the condition is unreachable there, so any finite deficit works
constexpr double kUndefinedMargin = -1e300;

double weak_h(double t) { return t * t - 2.0 / (t - 1.0); }

struct Eval {
    double ratio = 0.0;
    double margin = kUndefinedMargin;
    bool feasible = false;
    double score = 0.0;
};

Eval eval_from_cert(double ratio, const SpectralCertificate& cert, long long m, Condition cond) {
    Eval e;
    e.ratio = ratio;
    if (cond == Condition::strict_nosal) {
        e.margin = cert.rho_lower - std::sqrt(static_cast<double>(m));
        e.feasible = e.margin > 0.0;
    } else if (cert.rho_lower > 1.0) {
        e.margin = weak_h(cert.rho_lower) - static_cast<double>(m - 1);
        e.feasible = e.margin >= 0.0;
    }
    const double deficit = e.feasible ? 0.0 : std::min(1e6, -e.margin);
    e.score = e.ratio - 10.0 * deficit;
    return e;
}

Eval evaluate(const Graph& g, Condition cond, double tol) {
    if (g.m() < 1) return {};
    const BookStats bs = booksize(g);
    const double ratio = static_cast<double>(bs.bk) / std::sqrt(static_cast<double>(g.m()));
    return eval_from_cert(ratio, spectral_radius(g, tol), g.m(), cond);
}

Eval evaluate_blowup(const BlowupSpec& spec, Condition cond, double tol) {
    const long long mm = blowup_edges(spec);
    if (mm < 1) return {};
    const double ratio =
        static_cast<double>(blowup_booksize(spec)) / std::sqrt(static_cast<double>(mm));
    return eval_from_cert(ratio, quotient_rho(spec, tol), mm, cond);
}

// --- annealing ---------------------------------------------------------------

// structures worth never underperforming: the prism blow-up when 6 | n, the
// balanced complete 4-partite graph, and S+ for a few natural split sizes
std::vector<Graph> injected_starts(int n) {
    std::vector<Graph> out;
    if (n >= 6 && n % 6 == 0)
        out.push_back(blow_up({triangular_prism(), std::vector<int>(6, n / 6)}));
    if (n >= 4) {
        std::vector<int> parts(4, n / 4);
        for (int i = 0; i < n % 4; ++i) ++parts[i];
        const Graph k4 = Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
        out.push_back(blow_up({k4, parts}));
    }
    std::set<int> splits;
    for (int s : {n - 2, n / 2, 2, 1})
        if (s >= 1 && n - s >= 2) splits.insert(s);
    for (int s : splits) out.push_back(s_plus(static_cast<long long>(s) * (n - s) + 1, s));
    return out;
}

Graph random_connected(int n, Rng& rng) {
    std::vector<std::pair<int, int>> edges;
    for (int attempt = 0; attempt < 1000; ++attempt) {
        edges.clear();
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng.below(2)) edges.emplace_back(u, v);
        Graph g = Graph::from_edges(n, edges);
        if (is_connected(g)) return g;
    }
    // overwhelmingly unlikely for n >= 3; splice a path under the last draw
    for (int v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
    return Graph::from_edges(n, edges);
}

std::pair<int, int> nth_edge(const Graph& g, long long k) {
    for (int u = 0; u < g.n(); ++u)
        for (int v = u + 1; v < g.n(); ++v)
            if (g.has_edge(u, v) && k-- == 0) return {u, v};
    throw std::logic_error("nth_edge: index out of range");
}

std::pair<int, int> nth_nonedge(const Graph& g, long long k) {
    for (int u = 0; u < g.n(); ++u)
        for (int v = u + 1; v < g.n(); ++v)
            if (!g.has_edge(u, v) && k-- == 0) return {u, v};
    throw std::logic_error("nth_nonedge: index out of range");
}

struct RestartOutcome {
    bool have_feasible = false;
    double best_ratio = 0.0;
    std::string best_g6;
    double fallback_score = -std::numeric_limits<double>::infinity();
    std::string fallback_g6;
    long long evals = 0;
    std::vector<std::pair<long long, double>> trajectory;
};

RestartOutcome run_restart(int n, Condition cond, std::uint64_t seed,
                           const AnnealSchedule& sched, const Graph* injected,
                           bool record_trajectory, double tol) {
    Rng rng(seed);
    RestartOutcome out;

    Graph cur = injected ? *injected : random_connected(n, rng);
    Eval cur_eval = evaluate(cur, cond, tol);
    out.evals = 1;

    auto consider = [&](const Graph& g, const Eval& e) {
        if (e.score > out.fallback_score ||
            (e.score == out.fallback_score && write_graph6(g) < out.fallback_g6)) {
            out.fallback_score = e.score;
            out.fallback_g6 = write_graph6(g);
        }
        if (!e.feasible) return;
        if (!out.have_feasible || e.ratio > out.best_ratio) {
            out.have_feasible = true;
            out.best_ratio = e.ratio;
            out.best_g6 = write_graph6(g);
        } else if (e.ratio == out.best_ratio) {
            std::string g6 = write_graph6(g);
            if (g6 < out.best_g6) out.best_g6 = std::move(g6);
        }
    };
    consider(cur, cur_eval);

    const long long pairs = static_cast<long long>(n) * (n - 1) / 2;
    const long long steps = sched.steps < 0 ? 200LL * n * n : sched.steps;
    const long long stride = std::max<long long>(1, steps / 256);
    double temp = sched.t0;

    for (long long step = 0; step < steps; ++step, temp *= sched.cooling) {
        if (record_trajectory && step % stride == 0)
            out.trajectory.emplace_back(step, out.have_feasible ? out.best_ratio : 0.0);

        const int kind = static_cast<int>(rng.below(3));
        Graph cand;
        bool proposed = false;
        if (kind == 0) {
            const long long free_pairs = pairs - cur.m();
            if (free_pairs >= 1) {
                auto [u, v] = nth_nonedge(cur, static_cast<long long>(rng.below(free_pairs)));
                cand = cur.with_edge(u, v);
                proposed = true;
            }
        } else if (kind == 1) {
            if (cur.m() >= 1) {
                auto [u, v] = nth_edge(cur, static_cast<long long>(rng.below(cur.m())));
                cand = cur.without_edge(u, v);
                proposed = true;
            }
        } else {
            const long long free_pairs = pairs - cur.m();
            if (cur.m() >= 1 && free_pairs >= 1) {
                auto [a, b] = nth_edge(cur, static_cast<long long>(rng.below(cur.m())));
                auto [c, d] = nth_nonedge(cur, static_cast<long long>(rng.below(free_pairs)));
                cand = cur.without_edge(a, b).with_edge(c, d);
                proposed = true;
            }
        }
        if (!proposed || !is_connected(cand)) continue;

        const Eval cand_eval = evaluate(cand, cond, tol);
        ++out.evals;
        consider(cand, cand_eval);

        const double delta = cand_eval.score - cur_eval.score;
        if (delta >= 0.0 || rng.unit() < std::exp(delta / std::max(temp, 1e-12))) {
            cur = std::move(cand);
            cur_eval = cand_eval;
        }
    }
    if (record_trajectory)
        out.trajectory.emplace_back(steps, out.have_feasible ? out.best_ratio : 0.0);
    return out;
}

SearchResult finalize(const std::string& g6, Condition cond, double tol, std::uint64_t seed,
                      long long evals, std::vector<std::pair<long long, double>> trajectory) {
    const Graph g = parse_graph6(g6);
    const Eval fresh = evaluate(g, cond, tol);  // fresh certificate, never reuse search state
    SearchResult r;
    r.best_graph6 = g6;
    r.ratio = fresh.ratio;
    r.feasible = fresh.feasible;
    r.condition = cond;
    r.condition_margin = fresh.margin;
    r.seed = seed;
    r.moves_evaluated = evals;
    r.trajectory = std::move(trajectory);
    return r;
}

}  // namespace

SearchResult anneal_search(int n, Condition condition, std::uint64_t seed,
                           const AnnealSchedule& schedule, int threads, bool record_trajectory,
                           double tol) {
    if (n < 3 || static_cast<std::size_t>(n) > vertex_cap())
        throw std::invalid_argument("anneal_search: need 3 <= n <= vertex cap");
    if (!(schedule.t0 > 0) || !(schedule.cooling > 0) || schedule.cooling > 1.0)
        throw std::invalid_argument("anneal_search: bad schedule");
    if (schedule.restarts < 1) throw std::invalid_argument("anneal_search: restarts must be >= 1");
    if (schedule.steps < -1) throw std::invalid_argument("anneal_search: steps must be >= -1");
    if (!(tol > 0)) throw std::invalid_argument("anneal_search: tol must be positive");

    const std::vector<Graph> injections = injected_starts(n);
    std::vector<RestartOutcome> outcomes;
    outcomes.reserve(static_cast<std::size_t>(schedule.restarts));

    std::function<RestartOutcome(std::size_t)> work = [&](std::size_t i) {
        const Graph* injected = i < injections.size() ? &injections[i] : nullptr;
        return run_restart(n, condition, seed + i, schedule, injected, record_trajectory, tol);
    };
    std::function<void(RestartOutcome&&)> emit = [&](RestartOutcome&& o) {
        outcomes.push_back(std::move(o));
    };
    ordered_chunks<RestartOutcome>(static_cast<std::size_t>(schedule.restarts), threads, work,
                                   emit);

    long long evals = 0;
    const RestartOutcome* winner = nullptr;
    bool any_feasible = false;
    for (const RestartOutcome& o : outcomes) {
        evals += o.evals;
        if (o.have_feasible) any_feasible = true;
    }
    for (const RestartOutcome& o : outcomes) {
        if (any_feasible) {
            if (!o.have_feasible) continue;
            if (!winner || o.best_ratio > winner->best_ratio ||
                (o.best_ratio == winner->best_ratio && o.best_g6 < winner->best_g6))
                winner = &o;
        } else {
            if (!winner || o.fallback_score > winner->fallback_score ||
                (o.fallback_score == winner->fallback_score && o.fallback_g6 < winner->fallback_g6))
                winner = &o;
        }
    }

    const std::string& g6 = any_feasible ? winner->best_g6 : winner->fallback_g6;
    return finalize(g6, condition, tol, seed, evals, winner->trajectory);
}

// --- blow-up search ----------------------------------------------------------

namespace {

// Canonical edge mask: vertices are bucketed by the isomorphism-invariant key
// (degree, sorted neighbor degrees); every isomorphism respects the buckets,
// so the minimum relabeled mask over bucket-preserving permutations is a
// complete isomorphism invariant at this size.
std::uint64_t canonical_mask(const Graph& g) {
    const int n = g.n();
    std::vector<std::pair<std::vector<int>, int>> keyed(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        std::vector<int> key{g.degree(v)};
        g.for_neighbors(v, [&](int u) { key.push_back(g.degree(u)); });
        std::sort(key.begin() + 1, key.end());
        keyed[static_cast<std::size_t>(v)] = {std::move(key), v};
    }
    std::sort(keyed.begin(), keyed.end());

    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = keyed[static_cast<std::size_t>(i)].second;
    std::vector<std::pair<int, int>> buckets;  // [lo, hi) runs of equal keys
    for (int lo = 0; lo < n;) {
        int hi = lo + 1;
        while (hi < n && keyed[static_cast<std::size_t>(hi)].first == keyed[static_cast<std::size_t>(lo)].first) ++hi;
        buckets.emplace_back(lo, hi);
        lo = hi;
    }

    auto mask_of = [&](const std::vector<int>& lab) {
        std::uint64_t mask = 0;
        int bit = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j, ++bit)
                if (g.has_edge(lab[static_cast<std::size_t>(i)], lab[static_cast<std::size_t>(j)]))
                    mask |= 1ull << bit;
        return mask;
    };

    // within a bucket the initial labeling is ascending by vertex id, which is
    // exactly what next_permutation wraps back to, so the odometer needs no
    // explicit reset
    std::uint64_t best = mask_of(order);
    std::vector<int> lab = order;
    for (;;) {
        std::size_t b = 0;
        for (; b < buckets.size(); ++b)
            if (std::next_permutation(lab.begin() + buckets[b].first, lab.begin() + buckets[b].second))
                break;
        if (b == buckets.size()) break;
        best = std::min(best, mask_of(lab));
    }
    return best;
}

struct BaseCandidate {
    int n = 0;
    std::uint64_t mask = 0;
};

struct BlowupOutcome {
    bool have = false;
    Eval eval;
    std::vector<int> weights;
    BaseCandidate base;
    long long evals = 0;
    long long total_weight = 0;
};

// true when b strictly improves on a
bool blowup_better(const BlowupOutcome& a, const BlowupOutcome& b) {
    if (!a.have) return b.have;
    if (!b.have) return false;
    if (a.eval.feasible != b.eval.feasible) return b.eval.feasible;
    const double ka = a.eval.feasible ? a.eval.ratio : a.eval.score;
    const double kb = b.eval.feasible ? b.eval.ratio : b.eval.score;
    if (kb != ka) return kb > ka;
    if (b.total_weight != a.total_weight) return b.total_weight < a.total_weight;
    return b.weights < a.weights;
}

BlowupOutcome ascend(const BaseCandidate& base, const std::vector<int>& start, Condition cond,
                     double tol) {
    const Graph h = graph_from_mask(base.n, base.mask);
    const long long cap = static_cast<long long>(vertex_cap());

    BlowupOutcome cur;
    cur.base = base;
    cur.weights = start;
    cur.total_weight = 0;
    for (int w : start) cur.total_weight += w;
    cur.eval = evaluate_blowup({h, cur.weights}, cond, tol);
    cur.have = true;
    long long evals = 1;

    // every accepted step strictly improves (feasible, ratio, -weight, -lex),
    // so the ascent terminates without an explicit round guard
    for (bool improved = true; improved;) {
        improved = false;
        BlowupOutcome best_step = cur;
        for (int i = 0; i < base.n; ++i) {
            for (int delta : {+1, -1}) {
                const int wi = cur.weights[static_cast<std::size_t>(i)] + delta;
                if (wi < 1 || wi > 64) continue;
                if (cur.total_weight + delta > cap) continue;
                BlowupOutcome cand = cur;
                cand.weights[static_cast<std::size_t>(i)] = wi;
                cand.total_weight += delta;
                cand.eval = evaluate_blowup({h, cand.weights}, cond, tol);
                ++evals;
                if (blowup_better(best_step, cand)) {
                    best_step = std::move(cand);
                    improved = true;
                }
            }
        }
        if (improved) cur = std::move(best_step);
    }
    cur.evals = evals;
    return cur;
}

}  // namespace

SearchResult blowup_search(int base_n_max, Condition condition, double tol, int threads) {
    if (base_n_max < 3 || base_n_max > 8)
        throw std::invalid_argument("blowup_search: need 3 <= base_n_max <= 8");
    if (!(tol > 0)) throw std::invalid_argument("blowup_search: tol must be positive");

    std::vector<BaseCandidate> bases;
    for (int n = 3; n <= base_n_max; ++n) {
        std::set<std::uint64_t> seen;
        enumerate_labeled(n, /*connected_only=*/true, /*acknowledge_large=*/true,
                          [&](const Graph& g, std::uint64_t) {
                              if (booksize(g).bk < 1) return;  // need a triangle to blow up
                              const std::uint64_t canon = canonical_mask(g);
                              if (seen.insert(canon).second) bases.push_back({n, canon});
                          });
    }

    std::function<BlowupOutcome(std::size_t)> work = [&](std::size_t i) {
        const BaseCandidate& base = bases[i];
        BlowupOutcome a = ascend(base, std::vector<int>(static_cast<std::size_t>(base.n), 1),
                                 condition, tol);
        BlowupOutcome b = ascend(base, std::vector<int>(static_cast<std::size_t>(base.n), 2),
                                 condition, tol);
        const long long evals = a.evals + b.evals;
        BlowupOutcome best = blowup_better(a, b) ? std::move(b) : std::move(a);
        best.evals = evals;
        return best;
    };

    BlowupOutcome global;
    long long evals = 0;
    std::function<void(BlowupOutcome&&)> emit = [&](BlowupOutcome&& o) {
        evals += o.evals;
        if (blowup_better(global, o)) global = std::move(o);
    };
    ordered_chunks<BlowupOutcome>(bases.size(), threads, work, emit);

    const Graph h = graph_from_mask(global.base.n, global.base.mask);
    const Graph full = blow_up({h, global.weights});
    return finalize(write_graph6(full), condition, tol, /*seed=*/0, evals, {});
}

std::string search_result_to_json(const SearchResult& r, std::string_view config_json) {
    std::ostringstream os;
    os << '{';
    if (!config_json.empty()) os << "\"config\":" << config_json << ',';
    os << "\"condition\":" << jsonw::str(to_string(r.condition))
       << ",\"best_graph6\":" << jsonw::str(r.best_graph6) << ",\"ratio\":" << jsonw::real(r.ratio)
       << ",\"feasible\":" << (r.feasible ? "true" : "false")
       << ",\"condition_margin\":" << jsonw::real(r.condition_margin) << ",\"seed\":" << r.seed
       << ",\"moves_evaluated\":" << r.moves_evaluated << ",\"trajectory\":";
    if (r.trajectory.empty()) {
        os << "null";
    } else {
        os << '[';
        for (std::size_t i = 0; i < r.trajectory.size(); ++i)
            os << (i ? "," : "") << '[' << r.trajectory[i].first << ','
               << jsonw::real(r.trajectory[i].second) << ']';
        os << ']';
    }
    os << '}';
    return os.str();
}

}  // namespace bookspectra
