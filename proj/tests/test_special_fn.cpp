#include <doctest.h>

#include <cmath>
#include <complex>

#include "mprange/rational_fn.hpp"
#include "mprange/special_fn.hpp"

using namespace mpr;
using std::complex;

TEST_SUITE("special_fn") {

TEST_CASE("constants") {
    CHECK(euler_gamma() == doctest::Approx(0.57721566490153286).epsilon(1e-15));
    CHECK(zeta(2) == doctest::Approx(M_PI * M_PI / 6.0).epsilon(1e-14));
    CHECK(zeta(3) == doctest::Approx(1.2020569031595942854).epsilon(1e-14));
    CHECK(zeta(4) == doctest::Approx(std::pow(M_PI, 4) / 90.0).epsilon(1e-14));
    CHECK(c_closed() == doctest::Approx(4.0 * std::log(2.0) / M_PI - 1.0).epsilon(1e-15));
    CHECK(c_unrestricted() ==
          doctest::Approx(3.0 * std::log(2.0) / M_PI - 1.0).epsilon(1e-15));
}

TEST_CASE("bessel K against wronskian and known values") {
    // K0(1) and K1(1) reference values (standard tables)
    CHECK(bessel_K(0, 1.0) == doctest::Approx(0.42102443824070834).epsilon(1e-12));
    CHECK(bessel_K(1, 1.0) == doctest::Approx(0.60190723019723458).epsilon(1e-12));
    // Wronskian I_n(x) K_{n+1}(x) + I_{n+1}(x) K_n(x) = 1/x
    for (double x : {0.5, 1.0, 2.0, 5.0}) {
        const double w = bessel_I(0, x).real() * bessel_K(1, x) +
                         bessel_I(1, x).real() * bessel_K(0, x);
        CHECK(w == doctest::Approx(1.0 / x).epsilon(1e-10));
    }
}

TEST_CASE("bessel I on the imaginary axis reduces to J") {
    // I_n(i x) = i^n J_n(x)
    const double x = 2.3;
    complex<double> i(0.0, 1.0);
    CHECK(std::abs(bessel_I(0, i * x) - complex<double>(std::cyl_bessel_j(0, x), 0)) <
          1e-12);
    CHECK(std::abs(bessel_I(1, i * x) - i * std::cyl_bessel_j(1, x)) < 1e-12);
}

TEST_CASE("elliptic K") {
    CHECK(std::abs(elliptic_K(0.0) - complex<double>(M_PI / 2, 0)) < 1e-14);
    // K(1/2) = Gamma(1/4)^2 / (4 sqrt(pi))
    const double g14 = 3.6256099082219083119;
    CHECK(elliptic_K(0.5).real() ==
          doctest::Approx(g14 * g14 / (4.0 * std::sqrt(M_PI))).epsilon(1e-12));
    // agrees with the direct defining integral for a complex parameter
    const complex<double> m(0.3, 0.2);
    complex<double> quad = 0.0;
    const int nq = 20000;
    for (int j = 0; j < nq; ++j) {
        const double t = (j + 0.5) * (M_PI / 2) / nq;
        const double s = std::sin(t);
        quad += (M_PI / 2) / (double)nq / std::sqrt(1.0 - m * s * s);
    }
    CHECK(std::abs(elliptic_K(m) - quad) < 1e-8);
}

TEST_CASE("complex gamma") {
    CHECK(std::abs(complex_gamma(5.0) - complex<double>(24.0, 0.0)) < 1e-10);
    CHECK(std::abs(complex_gamma(0.5) - complex<double>(std::sqrt(M_PI), 0.0)) < 1e-12);
    // reflection-free recurrence check Gamma(z+1) = z Gamma(z)
    const complex<double> z(1.3, -0.7);
    CHECK(std::abs(complex_gamma(z + 1.0) - z * complex_gamma(z)) < 1e-12);
    // |Gamma(1 + i y)|^2 = pi y / sinh(pi y)
    const double y = 0.9;
    const double mod2 = std::norm(complex_gamma(complex<double>(1.0, y)));
    CHECK(mod2 == doctest::Approx(M_PI * y / std::sinh(M_PI * y)).epsilon(1e-12));
}

TEST_CASE("reciprocal gamma coefficients") {
    const double g = euler_gamma();
    auto c1 = recip_gamma_coeffs(1, 4);
    CHECK(c1.coeffs[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(c1.coeffs[1] == doctest::Approx(g).epsilon(1e-12));
    CHECK(c1.coeffs[2] ==
          doctest::Approx(g * g / 2.0 - M_PI * M_PI / 12.0).epsilon(1e-12));
    auto c2 = recip_gamma_coeffs(2, 3);
    CHECK(c2.coeffs[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(c2.coeffs[1] == doctest::Approx(g - 1.0).epsilon(1e-12));
    auto c3 = recip_gamma_coeffs(3, 2);
    CHECK(c3.coeffs[0] == doctest::Approx(0.5).epsilon(1e-14));
    // numerically: 1/Gamma(m + tau) at small tau matches the truncated series
    for (int m : {1, 2, 3, 4}) {
        auto c = recip_gamma_coeffs(m, 10);
        const double tau = 0.05;
        double s = 0.0, tp = 1.0;
        for (double coef : c.coeffs) {
            s += coef * tp;
            tp *= tau;
        }
        const double direct = 1.0 / std::tgamma(m + tau);
        CHECK(s == doctest::Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("vertex function values and derivative identity") {
    const double C = c_closed();
    // fbar_{1,k}(y,C) = (pi y)^2 (1 - C pi y)^{k-1} / (1 - (C+1) pi y)^{k+1}
    for (int k : {1, 2, 3}) {
        const double y = 0.07;
        const double direct = std::pow(M_PI * y, 2) * std::pow(1.0 - C * M_PI * y, k - 1) /
                              std::pow(1.0 - (C + 1.0) * M_PI * y, k + 1);
        CHECK(vertex_f(1, k, y, C) == doctest::Approx(direct).epsilon(1e-13));
    }
    CHECK(vertex_G(1, 2, 0.1, C) == doctest::Approx(1.0).epsilon(1e-14));
    // d/dy fbar_{m,k} = fbar_{m+1,k} / (pi y^2), via central differences
    for (int m : {1, 2, 3}) {
        for (int k : {1, 3}) {
            const double y = 0.06, hstep = 1e-5;
            const double fd =
                (vertex_f(m, k, y + hstep, C) - vertex_f(m, k, y - hstep, C)) /
                (2.0 * hstep);
            const double rhs = vertex_f(m + 1, k, y, C) / (M_PI * y * y);
            CHECK(fd == doctest::Approx(rhs).epsilon(1e-7));
        }
    }
}

TEST_CASE("rational vertex function agrees with the direct evaluation") {
    const double C = c_unrestricted();
    for (int m : {1, 2, 3}) {
        for (int k : {1, 2, 4}) {
            RatFn f = vertex_f_rat(m, k, C);
            for (double y : {0.02, 0.08, -0.05}) {
                CHECK((double)f.eval(y) ==
                      doctest::Approx(vertex_f(m, k, y, C)).epsilon(1e-12));
            }
            // symbolic derivative satisfies the same ladder identity exactly
            RatFn df = rat_deriv(f);
            RatFn ladder = rat_mul_ypow(vertex_f_rat(m + 1, k, C), -2);
            const double y = 0.04;
            CHECK((double)df.eval(y) ==
                  doctest::Approx((double)ladder.eval(y) / M_PI).epsilon(1e-12));
        }
    }
}

TEST_CASE("rational function taylor expansion") {
    // 1/(1 - 2y) around 0
    RatFn f = RatFn::from_poly({1.0L});
    f.push_factor(Poly{1.0L, -2.0L}, 1);
    auto t = rat_taylor(f, 6);
    for (int i = 0; i <= 6; ++i)
        CHECK((double)t[i] == doctest::Approx(std::pow(2.0, i)).epsilon(1e-15));
    // pole at 0 detected
    RatFn g = RatFn::from_poly({1.0L});
    g.push_factor(Poly{0.0L, 1.0L}, 1);
    CHECK_THROWS_AS(rat_taylor(g, 3), std::domain_error);
}

}  // TEST_SUITE
