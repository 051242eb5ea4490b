#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bookspectra/graph.hpp"
#include "bookspectra/spectral.hpp"

namespace bookspectra {

// Materialized decomposition around the vertex of maximum Perron weight.
// Everything downstream (identity residuals, per-claim audits, JSON dumps)
// reads from this structure alone, so all quantities the audits need are
// computed once here and kept.
//
// Notation, with x the Perron estimate normalized so x[u_star] = 1:
//   U  = N(u_star), W = V \ (U u {u_star})
//   W_star = { w in W : x_w >= 1 - 4.5 r / rho }   (may be all of W when the
//            threshold is nonpositive; wstar_saturated records that)
//   bad edge: uv inside U with x_u + x_v >= 1; each bad edge is assigned to
//            its larger-weight endpoint (ties to the smaller index), giving
//            the per-vertex lists E*_u
//   U1 = assigned vertices with more than c rho / 4.5 neighbors in W \ W_star,
//   U2 = the remaining assigned vertices
//   V_star = opposite endpoints of edges assigned to U2 vertices
//   beta_v = max Perron weight among U2-neighbors of v, for v in V_star
//   E1 / E2 / E3 = edges assigned to U1 / assigned to U2 / not bad
//   f(w) = d_U(w) (1 - x_w) + d_W(w) / 2
//
// Set membership tests use raw comparisons, no tolerance; memberships decided
// by less than 1e-9 are counted in fragile_count and flagged.
struct ProofTrace {
    int n = 0;
    long long m = 0;
    long long r = 1;
    double c = 1.0;
    double rho = 0.0;
    int u_star = 0;

    std::vector<double> lambda;  // normalized Perron weights, lambda[u_star] = 1

    std::vector<int> U, W, W_star, U1, U2, V_star;
    std::vector<std::pair<int, int>> bad_edges;            // lexicographic
    std::vector<std::array<int, 3>> estar;                 // {u, v, assigned}
    std::vector<std::pair<int, double>> beta;              // (v, beta_v), v ascending
    std::vector<std::pair<int, int>> E1, E2, E3;
    std::vector<std::pair<int, double>> f;                 // (w, f(w)), w ascending

    double residual_eq1 = 0.0;  // |rho^2 - d(u*) - sum_{uv in E(U)}(x_u+x_v) - sum_W d_U(w) x_w|
    double residual_eq2 = 0.0;  // same balance rewritten through f and m - e(U)

    long long e_U = 0;
    bool nonstandard_c = false;
    bool wstar_saturated = false;
    int fragile_count = 0;
    bool fragile = false;

    // support data for the claim audits
    std::vector<std::pair<int, long long>> d_wstar_u2;        // u in U2 -> |N(u) n W_star|
    std::vector<std::pair<int, long long>> nonadj_wstar_v;    // v in V_star -> |W_star \ N(v)|
    std::vector<std::pair<int, double>> nonadj_u_weight_w;    // w in W_star -> sum of x over U \ N(w)
    std::optional<double> eu_pair_sum;                        // x_u + x_v of the single E(U) edge
    std::optional<long long> s_plus_s;                        // recognizer result
};

// Requires: g connected with m >= 1, cert converged with relative width at
// most 1e-8, r >= 1, c > 0. c outside {1, 2} is allowed but flagged
// nonstandard.
ProofTrace build_trace(const Graph& g, const SpectralCertificate& cert, long long r, double c);

// Both eigen-identity residuals at most 1e-6 * m * x[u_star].
bool verify_identities(const ProofTrace& t);

struct ClaimReport {
    bool applicable = false;
    bool holds = true;
    double margin = 0.0;  // (LHS - RHS) / x[u_star]; for the equation claim,
                          // the largest residual magnitude instead
};

// inequality claims hold when margin >= -1e-6; the equation claim holds when
// its residual is at most 1e-6
struct ClaimSet {
    ClaimReport growth_bound;       // sum of f over W \ W_star >= c r |U1|
    ClaimReport heavy_degree;       // U2 vertices have many W_star neighbors
    ClaimReport missing_neighbors;  // V_star vertices miss many W_star vertices
    ClaimReport quarter_bound;      // f(w) >= (1/4) sum of x over U \ N(w), needs m >= (9r)^2
    ClaimReport splus_equation;     // rho^2 = m - 1 + 2s/(rho-1) and the E(U) pair sum
};

ClaimSet verify_claims(const ProofTrace& t);

// JSON document with sets as sorted index arrays and reals at 17 significant
// digits. claims may be null; config_json, when nonempty, is embedded verbatim
// under "config".
std::string trace_to_json(const ProofTrace& t, const ClaimSet* claims, std::string_view config_json);

}  // namespace bookspectra
