#pragma once

#include <string>
#include <vector>

#include "bookspectra/graph.hpp"

namespace bookspectra {

// Outcome of comparing a certified enclosure against a threshold. borderline
// means the threshold lies inside [rho_lower, rho_upper], so neither side can
// be certified at the working precision.
enum class ThreeValued { certified_yes, certified_no, borderline };
const char* to_string(ThreeValued v);

// Two-sided enclosure of the spectral radius. For a positive vector x on a
// connected graph, every value (sum of x over neighbors of v) / x(v) brackets
// rho from below at its minimum and above at its maximum; each extreme is
// additionally widened by 8 ulps to absorb the float division. The enclosure
// is therefore valid even when the iteration has not converged.
struct SpectralCertificate {
    double rho_lower = 0.0;
    double rho_upper = 0.0;
    double estimate = 0.0;             // midpoint, clamped into the enclosure
    std::vector<double> perron;        // length n, max coordinate exactly 1
    long long iterations = 0;
    bool converged = false;

    double width() const { return rho_upper - rho_lower; }
};

// Power iteration from the all-ones vector (deterministic), run on A + I so
// that bipartite spectra converge too. Stops when
// rho_upper - rho_lower <= tol * rho_upper or after 100n + 10000 iterations.
// m = 0 yields the exact zero certificate. A disconnected graph is certified
// per component and the certificate of the component with the largest
// rho_upper is returned, its perron vector embedded at that component's
// indices (zero elsewhere).
SpectralCertificate spectral_radius(const Graph& g, double tol = 1e-10);

// Certified enclosure of the blow-up's spectral radius obtained from the
// weighted base system M[i][j] = weights[j] * [ij edge], which has the same
// spectral radius as the full blow-up. Requires a connected base.
SpectralCertificate quotient_rho(const BlowupSpec& spec, double tol = 1e-10);

// Unique root > 1 of rho^2 = m - 1 + 2s/(rho - 1), found by bisecting the
// strictly increasing g(rho) = rho^2 - 2s/(rho - 1) over
// [sqrt(m-1), sqrt(m-1) + 2] down to an interval of width 1e-12.
// Requires m >= 3, s >= 1; throws if the bracket does not contain the root.
double solve_splus_rho(long long m, long long s);

// rho > sqrt(m)? Requires m >= 1 and a connected graph.
ThreeValued nosal_classify(const Graph& g, const SpectralCertificate& cert);

// rho^2 >= m - 1 + 2/(rho - 1)? Decided through the strictly increasing
// h(rho) = rho^2 - 2/(rho - 1) on rho > 1. Requires a connected graph and an
// enclosure entirely above 1 (throws std::domain_error otherwise).
ThreeValued weak_condition_classify(const Graph& g, const SpectralCertificate& cert);

}  // namespace bookspectra
