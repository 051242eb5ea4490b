#include "bookspectra/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bookspectra {

const char* to_string(ThreeValued v) {
    switch (v) {
        case ThreeValued::certified_yes: return "certified-yes";
        case ThreeValued::certified_no: return "certified-no";
        case ThreeValued::borderline: return "borderline";
    }
    return "?";
}

namespace {

double down8(double q) {
    for (int i = 0; i < 8; ++i) q = std::nextafter(q, -std::numeric_limits<double>::infinity());
    return q;
}

double up8(double q) {
    for (int i = 0; i < 8; ++i) q = std::nextafter(q, std::numeric_limits<double>::infinity());
    return q;
}

long long iteration_cap(int n) { return 100LL * n + 10000; }

// One certification loop shared by the adjacency and the weighted-base path.
// matvec must write s = M x. The iterate is updated as x <- (s + x) / max,
// i.e. power iteration on M + I; quotients s[v]/x[v] still bracket rho(M).
template <class MatVec>
SpectralCertificate certify(int n, MatVec&& matvec, double tol) {
    SpectralCertificate cert;
    std::vector<double> x(static_cast<std::size_t>(n), 1.0);
    std::vector<double> s(static_cast<std::size_t>(n), 0.0);
    const long long cap = iteration_cap(n);
    for (long long it = 1; it <= cap; ++it) {
        matvec(x, s);
        double qmin = std::numeric_limits<double>::infinity();
        double qmax = -std::numeric_limits<double>::infinity();
        for (int v = 0; v < n; ++v) {
            const double q = s[v] / x[v];
            qmin = std::min(qmin, q);
            qmax = std::max(qmax, q);
        }
        cert.iterations = it;
        cert.rho_lower = std::max(0.0, down8(qmin));
        cert.rho_upper = up8(qmax);
        if (cert.rho_upper - cert.rho_lower <= tol * cert.rho_upper) {
            cert.converged = true;
            break;
        }
        double mx = 0.0;
        for (int v = 0; v < n; ++v) {
            s[v] += x[v];
            mx = std::max(mx, s[v]);
        }
        for (int v = 0; v < n; ++v) x[v] = s[v] / mx;
    }
    // max coordinate of x is exactly 1 after the first update; the all-ones
    // start satisfies it too
    cert.perron = std::move(x);
    cert.estimate = std::clamp(cert.rho_lower + (cert.rho_upper - cert.rho_lower) / 2,
                               cert.rho_lower, cert.rho_upper);
    return cert;
}

SpectralCertificate certify_connected(const Graph& g, double tol) {
    return certify(
        g.n(),
        [&g](const std::vector<double>& x, std::vector<double>& s) {
            for (int v = 0; v < g.n(); ++v) {
                double acc = 0.0;
                g.for_neighbors(v, [&](int u) { acc += x[u]; });
                s[v] = acc;
            }
        },
        tol);
}

std::vector<std::vector<int>> components(const Graph& g) {
    std::vector<int> comp(static_cast<std::size_t>(g.n()), -1);
    std::vector<std::vector<int>> out;
    for (int root = 0; root < g.n(); ++root) {
        if (comp[root] != -1) continue;
        const int id = static_cast<int>(out.size());
        out.emplace_back();
        std::vector<int> stack{root};
        comp[root] = id;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            out[id].push_back(v);
            g.for_neighbors(v, [&](int u) {
                if (comp[u] == -1) {
                    comp[u] = id;
                    stack.push_back(u);
                }
            });
        }
        std::sort(out[id].begin(), out[id].end());
    }
    return out;
}

}  // namespace

SpectralCertificate spectral_radius(const Graph& g, double tol) {
    if (g.n() == 0) throw std::invalid_argument("spectral_radius: empty graph");
    if (!(tol > 0.0)) throw std::invalid_argument("spectral_radius: tol must be positive");
    if (g.m() == 0) {
        SpectralCertificate cert;
        cert.perron.assign(static_cast<std::size_t>(g.n()), 1.0);
        cert.converged = true;
        return cert;  // rho = 0 exactly
    }

    std::vector<std::vector<int>> comps = components(g);
    if (comps.size() == 1) return certify_connected(g, tol);

    SpectralCertificate best;
    std::vector<int> best_vertices;
    bool have = false;
    for (const auto& verts : comps) {
        const int k = static_cast<int>(verts.size());
        std::vector<int> local(static_cast<std::size_t>(g.n()), -1);
        for (int i = 0; i < k; ++i) local[verts[i]] = i;
        std::vector<std::pair<int, int>> edges;
        for (int v : verts)
            g.for_neighbors(v, [&](int u) {
                if (v < u) edges.emplace_back(local[v], local[u]);
            });
        SpectralCertificate cert;
        if (edges.empty()) {
            cert.perron.assign(static_cast<std::size_t>(k), 1.0);
            cert.converged = true;
        } else {
            cert = certify_connected(Graph::from_edges(k, edges), tol);
        }
        if (!have || cert.rho_upper > best.rho_upper) {
            best = std::move(cert);
            best_vertices = verts;
            have = true;
        }
    }
    std::vector<double> full(static_cast<std::size_t>(g.n()), 0.0);
    for (std::size_t i = 0; i < best_vertices.size(); ++i) full[best_vertices[i]] = best.perron[i];
    best.perron = std::move(full);
    return best;
}

SpectralCertificate quotient_rho(const BlowupSpec& spec, double tol) {
    const int n = spec.base.n();
    if (n == 0) throw std::invalid_argument("quotient_rho: empty base");
    if (!(tol > 0.0)) throw std::invalid_argument("quotient_rho: tol must be positive");
    if (static_cast<int>(spec.weights.size()) != n)
        throw std::invalid_argument("quotient_rho: one weight per base vertex");
    for (int w : spec.weights)
        if (w < 1) throw std::invalid_argument("quotient_rho: weights must be positive");
    if (!is_connected(spec.base)) throw std::invalid_argument("quotient_rho: base must be connected");
    if (spec.base.m() == 0) {
        SpectralCertificate cert;  // single vertex base
        cert.perron.assign(1, 1.0);
        cert.converged = true;
        return cert;
    }
    return certify(
        n,
        [&spec, n](const std::vector<double>& x, std::vector<double>& s) {
            for (int v = 0; v < n; ++v) {
                double acc = 0.0;
                spec.base.for_neighbors(v, [&](int u) { acc += spec.weights[u] * x[u]; });
                s[v] = acc;
            }
        },
        tol);
}

double solve_splus_rho(long long m, long long s) {
    if (m < 3) throw std::invalid_argument("solve_splus_rho: need m >= 3");
    if (s < 1) throw std::invalid_argument("solve_splus_rho: need s >= 1");
    const double target = static_cast<double>(m - 1);
    auto g = [s](double rho) { return rho * rho - 2.0 * static_cast<double>(s) / (rho - 1.0); };
    double lo = std::sqrt(static_cast<double>(m - 1));
    double hi = lo + 2.0;
    if (g(lo) > target || g(hi) < target)
        throw std::domain_error("solve_splus_rho: no root in [sqrt(m-1), sqrt(m-1)+2]");
    // g is strictly increasing on rho > 1, so plain bisection suffices
    while (hi - lo > 1e-12) {
        const double mid = lo + (hi - lo) / 2;
        if (mid <= lo || mid >= hi) break;
        if (g(mid) < target)
            lo = mid;
        else
            hi = mid;
    }
    return lo + (hi - lo) / 2;
}

ThreeValued nosal_classify(const Graph& g, const SpectralCertificate& cert) {
    if (g.m() < 1) throw std::invalid_argument("nosal_classify: need at least one edge");
    const double root = std::sqrt(static_cast<double>(g.m()));
    if (cert.rho_lower > root) return ThreeValued::certified_yes;
    if (cert.rho_upper < root) return ThreeValued::certified_no;
    return ThreeValued::borderline;
}

ThreeValued weak_condition_classify(const Graph& g, const SpectralCertificate& cert) {
    if (!(cert.rho_lower > 1.0))
        throw std::domain_error("weak_condition_classify: enclosure touches rho = 1");
    auto h = [](double rho) { return rho * rho - 2.0 / (rho - 1.0); };
    const double target = static_cast<double>(g.m() - 1);
    if (h(cert.rho_lower) >= target) return ThreeValued::certified_yes;
    if (h(cert.rho_upper) < target) return ThreeValued::certified_no;
    return ThreeValued::borderline;
}

}  // namespace bookspectra
