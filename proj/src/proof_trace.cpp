#include "bookspectra/proof_trace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "bookspectra/jsonw.hpp"

namespace bookspectra {

namespace {

constexpr double kFragileMargin = 1e-9;

// the two identity residuals share the same three partial sums
struct IdentityParts {
    double pair_sum = 0.0;    // sum over E(U) of (x_u + x_v)
    double wu_sum = 0.0;      // sum over W of d_U(w) x_w
    double f_sum = 0.0;       // sum over W of f(w)
};

}  // namespace

ProofTrace build_trace(const Graph& g, const SpectralCertificate& cert, long long r, double c) {
    const int n = g.n();
    if (n < 1 || g.m() < 1) throw std::invalid_argument("build_trace: need at least one edge");
    if (!is_connected(g)) throw std::invalid_argument("build_trace: graph must be connected");
    if (static_cast<int>(cert.perron.size()) != n)
        throw std::invalid_argument("build_trace: certificate does not match graph order");
    if (!cert.converged) throw std::invalid_argument("build_trace: certificate not converged");
    if (!(cert.estimate > 0.0) || !(cert.width() <= 1e-8 * cert.estimate))
        throw std::invalid_argument("build_trace: certificate enclosure too wide");
    if (r < 1) throw std::invalid_argument("build_trace: r must be at least 1");
    if (!(c > 0.0)) throw std::invalid_argument("build_trace: c must be positive");

    ProofTrace t;
    t.n = n;
    t.m = g.m();
    t.r = r;
    t.c = c;
    t.rho = cert.estimate;
    t.nonstandard_c = !(c == 1.0 || c == 2.0);

    int us = 0;
    for (int v = 1; v < n; ++v)
        if (cert.perron[v] > cert.perron[us]) us = v;
    t.u_star = us;

    t.lambda.resize(n);
    const double xs = cert.perron[us];
    for (int v = 0; v < n; ++v) t.lambda[v] = cert.perron[v] / xs;

    std::vector<char> in_u(n, 0);
    g.for_neighbors(us, [&](int v) {
        in_u[v] = 1;
        t.U.push_back(v);
    });
    for (int v = 0; v < n; ++v)
        if (v != us && !in_u[v]) t.W.push_back(v);

    auto note_margin = [&](double gap) {
        if (std::fabs(gap) < kFragileMargin) ++t.fragile_count;
    };

    const double wstar_thr = 1.0 - 4.5 * static_cast<double>(r) / t.rho;
    t.wstar_saturated = wstar_thr <= 0.0;
    std::vector<char> in_wstar(n, 0);
    for (int w : t.W) {
        note_margin(t.lambda[w] - wstar_thr);
        if (t.lambda[w] >= wstar_thr) {
            in_wstar[w] = 1;
            t.W_star.push_back(w);
        }
    }

    // edges inside U, lexicographic; split into bad and plain as we go
    std::vector<std::pair<int, int>> eu_edges;
    for (size_t i = 0; i < t.U.size(); ++i)
        for (size_t j = i + 1; j < t.U.size(); ++j)
            if (g.has_edge(t.U[i], t.U[j])) eu_edges.emplace_back(t.U[i], t.U[j]);
    t.e_U = static_cast<long long>(eu_edges.size());

    std::vector<char> assigned_bad(n, 0);
    for (auto [u, v] : eu_edges) {
        const double s = t.lambda[u] + t.lambda[v];
        note_margin(s - 1.0);
        if (s >= 1.0) {
            t.bad_edges.emplace_back(u, v);
            const int a = (t.lambda[v] > t.lambda[u]) ? v : u;
            t.estar.push_back({u, v, a});
            assigned_bad[a] = 1;
        }
    }

    std::vector<char> in_u1(n, 0), in_u2(n, 0);
    const double u1_thr = c * t.rho / 4.5;
    for (int v = 0; v < n; ++v) {
        if (!assigned_bad[v]) continue;
        long long d_outside = 0;
        g.for_neighbors(v, [&](int w) {
            if (w != us && !in_u[w] && !in_wstar[w]) ++d_outside;
        });
        note_margin(static_cast<double>(d_outside) - u1_thr);
        if (static_cast<double>(d_outside) > u1_thr) {
            in_u1[v] = 1;
            t.U1.push_back(v);
        } else {
            in_u2[v] = 1;
            t.U2.push_back(v);
        }
    }
    t.fragile = t.fragile_count > 0;

    std::vector<char> in_vstar(n, 0);
    for (const auto& e : t.estar) {
        if (in_u1[e[2]]) {
            t.E1.emplace_back(e[0], e[1]);
        } else {
            t.E2.emplace_back(e[0], e[1]);
            const int other = (e[2] == e[0]) ? e[1] : e[0];
            in_vstar[other] = 1;
        }
    }
    for (auto [u, v] : eu_edges)
        if (t.lambda[u] + t.lambda[v] < 1.0) t.E3.emplace_back(u, v);
    for (int v = 0; v < n; ++v)
        if (in_vstar[v]) t.V_star.push_back(v);

    for (int v : t.V_star) {
        double b = 0.0;
        g.for_neighbors(v, [&](int u) {
            if (in_u2[u]) b = std::max(b, t.lambda[u]);
        });
        t.beta.emplace_back(v, b);
    }

    IdentityParts parts;
    for (auto [u, v] : eu_edges) parts.pair_sum += t.lambda[u] + t.lambda[v];
    for (int w : t.W) {
        long long du = 0;
        g.for_neighbors(w, [&](int v) {
            if (in_u[v]) ++du;
        });
        const long long dw = g.degree(w) - du;  // W-vertices have no edge to u_star
        const double fw = static_cast<double>(du) * (1.0 - t.lambda[w]) + 0.5 * static_cast<double>(dw);
        t.f.emplace_back(w, fw);
        parts.wu_sum += static_cast<double>(du) * t.lambda[w];
        parts.f_sum += fw;
    }

    const double rho2 = t.rho * t.rho;
    t.residual_eq1 = std::fabs(rho2 - static_cast<double>(g.degree(us)) - parts.pair_sum - parts.wu_sum);
    t.residual_eq2 =
        std::fabs(rho2 - static_cast<double>(t.m - t.e_U) - parts.pair_sum + parts.f_sum);

    for (int u : t.U2) {
        long long d = 0;
        g.for_neighbors(u, [&](int w) {
            if (in_wstar[w]) ++d;
        });
        t.d_wstar_u2.emplace_back(u, d);
    }
    for (int v : t.V_star) {
        long long adj = 0;
        g.for_neighbors(v, [&](int w) {
            if (in_wstar[w]) ++adj;
        });
        t.nonadj_wstar_v.emplace_back(v, static_cast<long long>(t.W_star.size()) - adj);
    }
    for (int w : t.W_star) {
        double s = 0.0;
        for (int v : t.U)
            if (!g.has_edge(w, v)) s += t.lambda[v];
        t.nonadj_u_weight_w.emplace_back(w, s);
    }
    if (t.e_U == 1) t.eu_pair_sum = t.lambda[eu_edges[0].first] + t.lambda[eu_edges[0].second];
    if (auto s = is_s_plus(g)) t.s_plus_s = static_cast<long long>(*s);

    return t;
}

bool verify_identities(const ProofTrace& t) {
    const double tol = 1e-6 * static_cast<double>(t.m);
    return t.residual_eq1 <= tol && t.residual_eq2 <= tol;
}

ClaimSet verify_claims(const ProofTrace& t) {
    constexpr double kTol = 1e-6;
    ClaimSet cs;

    {
        auto& rep = cs.growth_bound;
        rep.applicable = true;
        double lhs = 0.0;
        size_t k = 0;  // merge-walk: f covers all of W ascending, W_star is a sublist
        for (auto [w, fw] : t.f) {
            while (k < t.W_star.size() && t.W_star[k] < w) ++k;
            if (k < t.W_star.size() && t.W_star[k] == w) continue;
            lhs += fw;
        }
        const double rhs = t.c * static_cast<double>(t.r) * static_cast<double>(t.U1.size());
        rep.margin = lhs - rhs;
        rep.holds = rep.margin >= -kTol;
    }

    {
        auto& rep = cs.heavy_degree;
        rep.applicable = !t.U2.empty();
        if (rep.applicable) {
            double worst = std::numeric_limits<double>::infinity();
            for (auto [u, d] : t.d_wstar_u2) {
                const double lu = t.lambda[u];
                const double rhs = (lu - t.c / 4.5) * t.rho - (static_cast<double>(t.r) + lu);
                worst = std::min(worst, static_cast<double>(d) - rhs);
            }
            rep.margin = worst;
            rep.holds = rep.margin >= -kTol;
        }
    }

    {
        auto& rep = cs.missing_neighbors;
        rep.applicable = !t.V_star.empty();
        if (rep.applicable) {
            double worst = std::numeric_limits<double>::infinity();
            for (size_t i = 0; i < t.V_star.size(); ++i) {
                const double bv = t.beta[i].second;
                const double rhs =
                    (bv - t.c / 4.5) * t.rho - 2.0 * static_cast<double>(t.r) + (1.0 - bv);
                worst = std::min(worst, static_cast<double>(t.nonadj_wstar_v[i].second) - rhs);
            }
            rep.margin = worst;
            rep.holds = rep.margin >= -kTol;
        }
    }

    {
        auto& rep = cs.quarter_bound;
        rep.applicable = !t.V_star.empty() && t.m >= 81LL * t.r * t.r;
        if (rep.applicable && !t.W_star.empty()) {
            double worst = std::numeric_limits<double>::infinity();
            size_t k = 0;
            for (auto [w, fw] : t.f) {
                if (k < t.nonadj_u_weight_w.size() && t.nonadj_u_weight_w[k].first == w) {
                    worst = std::min(worst, fw - 0.25 * t.nonadj_u_weight_w[k].second);
                    ++k;
                }
            }
            rep.margin = worst;
            rep.holds = rep.margin >= -kTol;
        }
    }

    {
        auto& rep = cs.splus_equation;
        rep.applicable = t.s_plus_s.has_value();
        if (rep.applicable) {
            const double s = static_cast<double>(*t.s_plus_s);
            const double target = 2.0 * s / (t.rho - 1.0);
            double worst = std::fabs(t.rho * t.rho - static_cast<double>(t.m - 1) - target);
            if (t.eu_pair_sum) worst = std::max(worst, std::fabs(*t.eu_pair_sum - target));
            rep.margin = worst;
            rep.holds = rep.margin <= kTol;
        }
    }

    return cs;
}

namespace {

void append_int_array(std::ostream& os, const std::vector<int>& v) {
    os << '[';
    for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ']';
}

void append_edge_array(std::ostream& os, const std::vector<std::pair<int, int>>& v) {
    os << '[';
    for (size_t i = 0; i < v.size(); ++i)
        os << (i ? "," : "") << '[' << v[i].first << ',' << v[i].second << ']';
    os << ']';
}

void append_claim(std::ostream& os, const char* name, const ClaimReport& r, bool last = false) {
    os << jsonw::str(name) << ":{\"applicable\":" << (r.applicable ? "true" : "false")
       << ",\"holds\":" << (r.holds ? "true" : "false") << ",\"margin\":" << jsonw::real(r.margin)
       << '}' << (last ? "" : ",");
}

}  // namespace

std::string trace_to_json(const ProofTrace& t, const ClaimSet* claims, std::string_view config_json) {
    std::ostringstream os;
    os << '{';
    if (!config_json.empty()) os << "\"config\":" << config_json << ',';
    os << "\"n\":" << t.n << ",\"m\":" << t.m << ",\"r\":" << t.r << ",\"c\":" << jsonw::real(t.c)
       << ",\"rho\":" << jsonw::real(t.rho) << ",\"u_star\":" << t.u_star;

    os << ",\"lambda\":[";
    for (int v = 0; v < t.n; ++v) os << (v ? "," : "") << jsonw::real(t.lambda[v]);
    os << ']';

    os << ",\"U\":";
    append_int_array(os, t.U);
    os << ",\"W\":";
    append_int_array(os, t.W);
    os << ",\"W_star\":";
    append_int_array(os, t.W_star);

    os << ",\"bad_edges\":";
    append_edge_array(os, t.bad_edges);
    os << ",\"estar\":[";
    for (size_t i = 0; i < t.estar.size(); ++i)
        os << (i ? "," : "") << '[' << t.estar[i][0] << ',' << t.estar[i][1] << ','
           << t.estar[i][2] << ']';
    os << ']';

    os << ",\"U1\":";
    append_int_array(os, t.U1);
    os << ",\"U2\":";
    append_int_array(os, t.U2);
    os << ",\"V_star\":";
    append_int_array(os, t.V_star);

    os << ",\"beta\":[";
    for (size_t i = 0; i < t.beta.size(); ++i)
        os << (i ? "," : "") << '[' << t.beta[i].first << ',' << jsonw::real(t.beta[i].second)
           << ']';
    os << ']';

    os << ",\"E1\":";
    append_edge_array(os, t.E1);
    os << ",\"E2\":";
    append_edge_array(os, t.E2);
    os << ",\"E3\":";
    append_edge_array(os, t.E3);

    os << ",\"f\":[";
    for (size_t i = 0; i < t.f.size(); ++i)
        os << (i ? "," : "") << '[' << t.f[i].first << ',' << jsonw::real(t.f[i].second) << ']';
    os << ']';

    os << ",\"e_U\":" << t.e_U << ",\"residual_eq1\":" << jsonw::real(t.residual_eq1)
       << ",\"residual_eq2\":" << jsonw::real(t.residual_eq2)
       << ",\"identities_pass\":" << (verify_identities(t) ? "true" : "false")
       << ",\"nonstandard_c\":" << (t.nonstandard_c ? "true" : "false")
       << ",\"wstar_saturated\":" << (t.wstar_saturated ? "true" : "false")
       << ",\"fragile_count\":" << t.fragile_count
       << ",\"fragile\":" << (t.fragile ? "true" : "false");

    os << ",\"eu_pair_sum\":" << (t.eu_pair_sum ? jsonw::real(*t.eu_pair_sum) : "null");
    os << ",\"s_plus_s\":";
    if (t.s_plus_s)
        os << *t.s_plus_s;
    else
        os << "null";

    if (claims) {
        os << ",\"claims\":{";
        append_claim(os, "growth_bound", claims->growth_bound);
        append_claim(os, "heavy_degree", claims->heavy_degree);
        append_claim(os, "missing_neighbors", claims->missing_neighbors);
        append_claim(os, "quarter_bound", claims->quarter_bound);
        append_claim(os, "splus_equation", claims->splus_equation, true);
        os << '}';
    } else {
        os << ",\"claims\":null";
    }
    os << '}';
    return os.str();
}

}  // namespace bookspectra
