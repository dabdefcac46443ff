#ifndef MPRANGE_SPECIAL_FN_HPP
#define MPRANGE_SPECIAL_FN_HPP

// Special functions and the scalar vertex functions: modified Bessel K and I,
// the complete elliptic integral of the first kind, Taylor coefficients of the
// reciprocal Gamma function, and the vertex weights fbar_{m,k}(y,C) attached to
// graph vertices in the asymptotic moment expansions.

#include <complex>
#include <vector>

namespace mpr {

// Mathematical constants (double precision honest to the last bit).
double euler_gamma();
double zeta(int k);               // k >= 2
double c_closed();                // 4 ln2 / pi - 1
double c_unrestricted();          // 3 ln2 / pi - 1

// Modified Bessel K_n(x), n >= 0, x > 0.
double bessel_K(int n, double x);

// Modified Bessel I_n(x) for complex x, |x| <= 50, via the integral
// representation (1/pi) int_0^pi e^{x cos t} cos(n t) dt (entire in x).
std::complex<double> bessel_I(int n, std::complex<double> x);

// Complete elliptic integral of the first kind in the parameter convention,
// K(m) = int_0^{pi/2} dt / sqrt(1 - m sin^2 t), |m| < 1.  K(0) = pi/2.
std::complex<double> elliptic_K(std::complex<double> parameter);

// Gamma(z) for complex z with Re z > 0 (Lanczos).
std::complex<double> complex_gamma(std::complex<double> z);

// Coefficients gamma^{(m)}_i of 1/Gamma(m + tau) = sum_i gamma^{(m)}_i tau^i,
// i = 0..M.  gamma^{(m)}_0 = 1/(m-1)!.
struct RecipGammaCoeffs {
    int m = 1;
    std::vector<double> coeffs;
};
RecipGammaCoeffs recip_gamma_coeffs(int m, int M);

// Vertex function
//   fbar_{m,k}(y,C) = m! (pi y)^{m+1} (1 - C pi y)^{k-1}
//                     / (1 - (C+1) pi y)^{k+m} * Gbar_{m,k}(y,C)
//   Gbar_{m,k}(y,C) = 1 + (1/m) sum_{j=1}^{m-1} (pi y)^j binom(k-1,j)
//                     binom(m,j+1) (1 - C pi y)^{-j}
// It satisfies d/dy fbar_{m,k} = fbar_{m+1,k} / (pi y^2).
double vertex_f(int m, int k, double y, double C);
double vertex_G(int m, int k, double y, double C);

}  // namespace mpr

#endif
