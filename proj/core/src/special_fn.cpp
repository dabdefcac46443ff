#include "mprange/special_fn.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace mpr {

namespace {

constexpr long double kEulerGammaL = 0.57721566490153286060651209008240243L;

// zeta(k) by Euler-Maclaurin in long double; plenty for k >= 2.
long double zeta_l(int k) {
    constexpr int N = 40;
    // B_{2j} for j = 1..6
    constexpr long double B[] = {1.0L / 6, -1.0L / 30, 1.0L / 42,
                                 -1.0L / 30, 5.0L / 66, -691.0L / 2730};
    long double s = 0.0L;
    for (int n = 1; n < N; ++n) s += powl((long double)n, (long double)-k);
    const long double Nl = N;
    s += 0.5L * powl(Nl, (long double)-k);
    s += powl(Nl, (long double)(1 - k)) / (k - 1);
    long double rising = k;  // k (k+1) ... (k + 2j - 2), updated per term
    long double fact = 1.0L; // (2j)!
    for (int j = 1; j <= 6; ++j) {
        fact *= (2 * j - 1) * (2 * j);
        s += B[j - 1] / fact * rising * powl(Nl, (long double)(-k - 2 * j + 1));
        rising *= (long double)(k + 2 * j - 1) * (k + 2 * j);
    }
    return s;
}

const std::vector<long double>& zeta_table() {
    static std::vector<long double> t;
    static std::once_flag flag;
    std::call_once(flag, [] {
        t.assign(65, 0.0L);
        for (int k = 2; k <= 64; ++k) t[k] = zeta_l(k);
    });
    return t;
}

double binom_d(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double v = 1.0;
    for (int i = 0; i < k; ++i) v = v * (n - i) / (i + 1);
    return v;
}

}  // namespace

double euler_gamma() { return static_cast<double>(kEulerGammaL); }

double zeta(int k) {
    if (k < 2 || k > 64) throw std::invalid_argument("zeta: need 2 <= k <= 64");
    return static_cast<double>(zeta_table()[k]);
}

double c_closed() { return 4.0 * std::log(2.0) / M_PI - 1.0; }
double c_unrestricted() { return 3.0 * std::log(2.0) / M_PI - 1.0; }

double bessel_K(int n, double x) {
    if (n < 0) n = -n;
    if (!(x > 0.0)) throw std::invalid_argument("bessel_K: x must be positive");
    return std::cyl_bessel_k(static_cast<double>(n), x);
}

std::complex<double> bessel_I(int n, std::complex<double> x) {
    if (std::abs(x) > 50.0 + 1e-9)
        throw std::invalid_argument("bessel_I: |x| <= 50 supported");
    if (n < 0) n = -n;  // integer order: I_{-n} = I_n
    // Trapezoid on the periodic extension of e^{x cos t} cos(n t); doubles the
    // node count until two refinements agree.
    auto value = [&](int N) {
        std::complex<double> s = 0.5 * (std::exp(x) + std::exp(-x) * ((n % 2) ? -1.0 : 1.0));
        for (int j = 1; j < N; ++j) {
            const double t = M_PI * j / N;
            s += std::exp(x * std::cos(t)) * std::cos(n * t);
        }
        return s / static_cast<double>(N);
    };
    std::complex<double> prev = value(64);
    for (int N = 128; N <= 1 << 16; N *= 2) {
        std::complex<double> cur = value(N);
        if (std::abs(cur - prev) <= 1e-14 * (std::abs(cur) + 1e-300)) return cur;
        prev = cur;
    }
    return prev;
}

std::complex<double> elliptic_K(std::complex<double> parameter) {
    if (std::abs(parameter) >= 1.0)
        throw std::invalid_argument("elliptic_K: |parameter| < 1 required");
    std::complex<double> a = 1.0;
    std::complex<double> b = std::sqrt(1.0 - parameter);  // principal: Re > 0
    for (int it = 0; it < 64; ++it) {
        const std::complex<double> am = 0.5 * (a + b);
        std::complex<double> gm = std::sqrt(a * b);
        if (std::abs(am - gm) > std::abs(am + gm)) gm = -gm;  // branch nearest the mean
        a = am;
        b = gm;
        if (std::abs(a - b) <= 1e-16 * std::abs(a)) break;
    }
    return M_PI / (2.0 * a);
}

std::complex<double> complex_gamma(std::complex<double> z) {
    if (z.real() <= 0.0)
        throw std::invalid_argument("complex_gamma: Re z > 0 required");
    // Lanczos, g = 7, n = 9
    static const double c[] = {
        0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
        771.32342877765313,      -176.61502916214059,   12.507343278686905,
        -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
    z -= 1.0;
    std::complex<double> x = c[0];
    for (int i = 1; i < 9; ++i) x += c[i] / (z + static_cast<double>(i));
    const std::complex<double> t = z + 7.5;
    return std::sqrt(2.0 * M_PI) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

RecipGammaCoeffs recip_gamma_coeffs(int m, int M) {
    if (m < 1) throw std::invalid_argument("recip_gamma_coeffs: m >= 1");
    if (M < 0 || M > 40) throw std::invalid_argument("recip_gamma_coeffs: 0 <= M <= 40");
    const auto& zt = zeta_table();
    // a(tau) = log(1/Gamma(1+tau)) = gamma tau + sum_{k>=2} (-1)^{k+1} zeta(k)/k tau^k
    std::vector<long double> a(M + 1, 0.0L);
    if (M >= 1) a[1] = kEulerGammaL;
    for (int k = 2; k <= M; ++k)
        a[k] = ((k % 2) ? 1.0L : -1.0L) * zt[k] / k;
    // b = exp(a) by the differential recurrence b' = a' b
    std::vector<long double> b(M + 1, 0.0L);
    b[0] = 1.0L;
    for (int n = 1; n <= M; ++n) {
        long double s = 0.0L;
        for (int j = 1; j <= n; ++j) s += j * a[j] * b[n - j];
        b[n] = s / n;
    }
    // 1/Gamma(m+tau) = 1/Gamma(1+tau) * prod_{j=1}^{m-1} 1/(j+tau)
    for (int j = 1; j < m; ++j) {
        std::vector<long double> nb(M + 1, 0.0L);
        // 1/(j+tau) = sum_i (-1)^i tau^i / j^{i+1}
        std::vector<long double> inv(M + 1);
        long double p = 1.0L / j;
        for (int i = 0; i <= M; ++i) {
            inv[i] = ((i % 2) ? -p : p);
            p /= j;
        }
        for (int i = 0; i <= M; ++i)
            for (int l = 0; l + i <= M; ++l) nb[i + l] += b[i] * inv[l];
        b = std::move(nb);
    }
    RecipGammaCoeffs out;
    out.m = m;
    out.coeffs.assign(M + 1, 0.0);
    for (int i = 0; i <= M; ++i) out.coeffs[i] = static_cast<double>(b[i]);
    return out;
}

double vertex_G(int m, int k, double y, double C) {
    if (m < 1 || k < 1) throw std::invalid_argument("vertex_G: m,k >= 1");
    double s = 1.0;
    const double py = M_PI * y;
    const double d = 1.0 - C * py;
    for (int j = 1; j <= m - 1; ++j) {
        const double w = binom_d(k - 1, j) * binom_d(m, j + 1);
        if (w == 0.0) continue;
        s += std::pow(py, j) * w / (m * std::pow(d, j));
    }
    return s;
}

double vertex_f(int m, int k, double y, double C) {
    if (m < 1 || k < 1) throw std::invalid_argument("vertex_f: m,k >= 1");
    const double py = M_PI * y;
    const double d1 = 1.0 - C * py;
    const double d2 = 1.0 - (C + 1.0) * py;
    if (d1 == 0.0 || d2 == 0.0)
        throw std::domain_error("vertex_f: evaluation at a pole");
    double mf = 1.0;
    for (int i = 2; i <= m; ++i) mf *= i;
    return mf * std::pow(py, m + 1) * std::pow(d1, k - 1) / std::pow(d2, k + m) *
           vertex_G(m, k, y, C);
}

}  // namespace mpr
