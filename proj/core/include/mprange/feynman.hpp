#ifndef MPRANGE_FEYNMAN_HPP
#define MPRANGE_FEYNMAN_HPP

// Planar graph integrals with Bessel-K0 kernels: I(F) integrates the product
// of (2/pi K0(|y_k - y_l|))^{F_{k,l}} over r points with y_1 pinned at the
// origin, scriptI(F) the sum over directed pairs of the edge derivative of the
// same monomial.  r = 2 collapses to one radial integral done by quadrature;
// r >= 3 uses importance-sampled Monte Carlo with a spanning-tree proposal.
// Per-r sums weighted by M(F) cof(A-F) feed the characteristic functions and
// are cached as JSON.

#include <cstdint>
#include <optional>
#include <string>

#include "mprange/graph_enum.hpp"

namespace mpr {

struct GraphIntegral {
    double value = 0.0;
    double stderr_ = 0.0;  // 0 for deterministic quadrature
    std::string method;    // radial-quadrature | monte-carlo
    long long samples = 0;
};

struct GraphSumRecord {
    int r = 0;
    int count = 0;  // matrices summed over
    double sum_I = 0.0;
    double sum_I_stderr = 0.0;
    double sum_scriptI = 0.0;
    double sum_scriptI_stderr = 0.0;
    std::uint64_t seed = 0;
    long long budget = 0;
};

// int_0^infty t K0(t)^p dt by composite Gauss-Legendre with the substitution
// t = e^u on (0,1] to absorb the log singularity.  Absolute error < 1e-12.
double radial_tK0_integral(int p);

// I(F) = int prod_m d^2 y_m delta(y_1) prod_{k != l} (2/pi K0(|y_k-y_l|))^{F_{k,l}}.
// Requires F strongly connected.  budget = Monte Carlo samples (r >= 3 only).
GraphIntegral integral_I(const BalancedMatrix& F, long long budget,
                         std::uint64_t seed = 0);

// scriptI(F): sum over directed pairs (i,j) of d/dH_{i,j} of the monomial,
// evaluated at H = 2/pi K0; integrated jointly as a single integrand.
GraphIntegral integral_scriptI(const BalancedMatrix& F, long long budget,
                               std::uint64_t seed = 0);

// Sums of I and scriptI weighted by M(F) cof(A-F) over all of
// enumerate_balanced(r, (2,...,2)), sharing samples between the two integrands.
GraphSumRecord graph_sum(int r, long long budget, std::uint64_t seed = 0);

// Cache plumbing: one file per (r, budget, seed); loading picks the largest
// budget available for r, ties broken by smallest seed.
std::string graph_sum_filename(int r, long long budget, std::uint64_t seed);
void save_graph_sum(const GraphSumRecord& rec, const std::string& cache_dir);
std::optional<GraphSumRecord> load_graph_sum(int r, const std::string& cache_dir);

}  // namespace mpr

#endif
