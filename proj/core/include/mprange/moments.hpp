#ifndef MPRANGE_MOMENTS_HPP
#define MPRANGE_MOMENTS_HPP

// Asymptotic moment expansions of the multiple point range and the two
// characteristic functions.  Everything is assembled from three ingredients:
// the reciprocal-gamma coefficients gamma^(m)_i that translate logarithmic
// singularities of generating functions into n^{m-1}/ln^j n terms, the vertex
// functions fbar_{m,k}, and the graph sums of Bessel-kernel integrals.

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mprange/feynman.hpp"
#include "mprange/rational_fn.hpp"

namespace mpr {

enum class WalkClass { closed, unrestricted };

// n^r * sum_j logcoeffs[j] / ln(n)^j, the truncated expansion of a moment.
struct MomentExpansion {
    int r = 0;
    WalkClass cls = WalkClass::closed;
    std::vector<double> logcoeffs;  // index j = power of 1/ln n

    double eval(double n) const;
    std::string csv() const;  // lines "logpower,coefficient"
};

// Taylor coefficients in t of a characteristic function, with per-order
// standard errors propagated from Monte Carlo graph sums.
struct CharSeries {
    std::vector<std::complex<double>> coeffs;
    std::vector<double> stderrs;
    int r_max = 0;

    nlohmann::json to_json() const;
};

struct CharResult {
    std::complex<double> value;
    CharSeries series;
};

// Asymptotic Taylor coefficient of g(1/ln(1-w)) / (1-w)^m at order n:
// n^{m-1} sum_{i<=M} gamma^(m)_i y^{i+1} (d/dy)^i (y^{i-1} g(y)), y = -1/ln n.
double coeff_asym(const Poly& g, int m, double n, int M);

// First moment of N_{2k}; closed walks carry the extra factor 2 and pole
// order 1, non-restricted walks pole order 2.
double first_moment(WalkClass cls, double n, int k, int M);

// Second centralized moment, leading term and first 1/ln n correction, from
// the closed-form constants H3 and H4 (r = 2 kernel integrals).
double second_moment_central(WalkClass cls, double n, int k1, int k2);

// Raw joint moment E(prod_i N_{2k_i}) as an expansion to order M in 1/ln n.
// Graphs beyond r = 2 need Monte Carlo kernel integrals (budget, seed).
MomentExpansion moment_full(WalkClass cls, const std::vector<int>& k, int M,
                            long long budget = 200000, std::uint64_t seed = 1);

// Leading constant of the centralized moment of order p, in units of
// (2 pi^2 n / ln^3 n)^p (closed) or (pi^2 n / ln^3 n)^p (non-restricted).
// Needs graph sums for every r in [2, p]; throws if one is missing.
double central_moment_leading(WalkClass cls, int p, const std::vector<int>& k,
                              const std::vector<GraphSumRecord>& sums);

// Inclusion-exclusion centralization: raw(mask) = E(prod_{i in mask} X_i),
// raw(0) = 1; returns E(prod_i (X_i - E X_i)) over p variables.
double centralize(int p, const std::function<double(unsigned)>& raw);

// H4 = I(F2) and H3 = scriptI(F2)/4, by radial quadrature.
double const_H3();
double const_H4();

// Characteristic function of the scaled closed-walk range combination with
// weights Lambda, and of the renormalized Brownian intersection local time.
CharResult char_closed(const std::vector<double>& lambda, double t, int r_max,
                       const std::vector<GraphSumRecord>& sums, int series_order = 8);
CharResult char_brownian(double t, int r_max, const std::vector<GraphSumRecord>& sums,
                         int series_order = 8);

}  // namespace mpr

#endif
