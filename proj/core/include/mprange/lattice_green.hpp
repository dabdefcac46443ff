#ifndef MPRANGE_LATTICE_GREEN_HPP
#define MPRANGE_LATTICE_GREEN_HPP

// Lattice Green's function h(x,d,z) of the simple random walk (generating
// function of walk counts between 0 and x, with the length-0 delta removed at
// the origin), first-hit matrices U(Y,z), first-hit determinants Delta_r(Y,z),
// and the exact generating-function identities the walk oracle cross-checks.

#include <array>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "mprange/power_series.hpp"

namespace mpr {

using LatticePoint = std::array<int, 3>;  // third coordinate unused for d = 2

// r distinct lattice points in Z^2, first one the origin.
struct PointConfig {
    std::vector<std::array<int, 2>> points;
    explicit PointConfig(std::vector<std::array<int, 2>> pts);
    int r() const { return static_cast<int>(points.size()); }
};

// Coefficient m = number of nearest-neighbour walks of length m from 0 to x,
// exact (DP on a box of radius N, so no boundary leakage).
PowerSeries walk_count_series(const LatticePoint& x, int d, int N);

// h(x,d,z) as an exact series: walk counts minus the length-0 delta at x = 0.
PowerSeries h_series(const LatticePoint& x, int d, int N);

// Truncated-series evaluation with a geometric tail bound; throws when |z| is
// too close to 1/(2d) for the requested accuracy.
std::complex<double> h_eval(const LatticePoint& x, int d, std::complex<double> z,
                            double eps = 1e-12);

// Closed form for x = 0, d = 2: 2/pi K(16 z^2) - 1.
std::complex<double> h0_elliptic(std::complex<double> z);

// U_{i,j} = h(Y_i - Y_j, 2, z) / (1 + h(0,2,z)), including the diagonal.
Eigen::MatrixXcd first_hit_matrix(const PointConfig& Y, std::complex<double> z,
                                  double eps = 1e-12);

// First-hit determinant: det of the matrix with unit diagonal and U_{i,j} off
// the diagonal.  Delta_1 == 1.
std::complex<double> delta_r(const PointConfig& Y, std::complex<double> z,
                             double eps = 1e-12);

// Taylor coefficients of z d/dz (1/k) (h0/(1+h0))^k; coefficient L equals
// sum_w N_{2k}(w) over closed walks of length L.
PowerSeries first_moment_gf(int k, int N);

// Taylor coefficients of h(y)^2/(1+h0)^2 * (h0/(1+h0))^{k-1}; coefficient L
// counts closed walks of length L whose multiplicity at a fixed point is 2k.
PowerSeries multiplicity_fixed_gf(const LatticePoint& y, int k, int N);

}  // namespace mpr

#endif
