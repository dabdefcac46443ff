#include "mprange/moments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "mprange/special_fn.hpp"

namespace mpr {

namespace {

// sum_{i<=M} gamma^{(m)}_i y^{i+1} (d/dy)^i (y^{i-1} g(y))
RatFn asym_bracket(const RatFn& g, int m_pole, int M) {
    const RecipGammaCoeffs gc = recip_gamma_coeffs(m_pole, M);
    RatFn total = RatFn::constant(0.0L);
    for (int i = 0; i <= M; ++i) {
        RatFn t = rat_mul_ypow(g, i - 1);
        for (int d = 0; d < i; ++d) t = rat_deriv(t);
        t = rat_mul_ypow(t, i + 1);
        total = rat_add(total, rat_scale(t, (long double)gc.coeffs[i]));
    }
    return total;
}

double class_C(WalkClass cls) {
    return cls == WalkClass::closed ? c_closed() : c_unrestricted();
}

// All degree vectors h in {1,2,...}^r with sum_j (h_j - 2) <= excess.
void degree_vectors(int r, int excess, std::vector<int>& cur,
                    std::vector<std::vector<int>>& out) {
    if ((int)cur.size() == r) {
        out.push_back(cur);
        return;
    }
    const int used = std::accumulate(cur.begin(), cur.end(), 0) -
                     2 * (int)cur.size();
    const int remaining = (int)cur.size() + 1;
    // each later vertex contributes at least (1 - 2) = -1 to the excess
    for (int h = 1; used + (h - 2) - (r - remaining) <= excess; ++h) {
        cur.push_back(h);
        degree_vectors(r, excess, cur, out);
        cur.pop_back();
    }
}

// Symmetrized vertex product (1/r!) sum_sigma prod_j fbar_{h_j, k_sigma(j)}.
RatFn sym_vertex_product(const std::vector<int>& h, std::vector<int> k,
                         long double C, int shift_q = -1) {
    const int r = (int)h.size();
    std::sort(k.begin(), k.end());
    RatFn total = RatFn::constant(0.0L);
    long long perms = 0;
    do {
        RatFn prod = RatFn::constant(1.0L);
        for (int j = 0; j < r; ++j) {
            const int m = h[j] + (j == shift_q ? 1 : 0);
            prod = rat_mul(prod, vertex_f_rat(m, k[j], C));
        }
        total = rat_add(total, prod);
        ++perms;
    } while (std::next_permutation(k.begin(), k.end()));
    // distinct permutations of a multiset: scale so the result equals the
    // full (1/r!) sum over S_r (equal terms collapse onto distinct ones)
    long long rfact = 1;
    for (int i = 2; i <= r; ++i) rfact *= i;
    return rat_scale(total, (long double)(rfact / perms) / (long double)rfact);
}

const GraphSumRecord& find_sum(int r, const std::vector<GraphSumRecord>& sums) {
    for (const auto& s : sums)
        if (s.r == r) return s;
    throw std::runtime_error("missing graph sums for r = " + std::to_string(r));
}

// sum_{nu=0}^{p} gamma^{(m)}_{p-nu} (-a)^nu / nu!
double gamma_conv(int m, int p, double a) {
    if (p < 0) return 0.0;
    const RecipGammaCoeffs gc = recip_gamma_coeffs(m, p);
    double s = 0.0, f = 1.0;
    for (int nu = 0; nu <= p; ++nu) {
        if (nu > 0) f *= -a / nu;
        s += gc.coeffs[p - nu] * f;
    }
    return s;
}

// Complex truncated series in t, all kept to the same fixed order.
using CSeries = std::vector<std::complex<double>>;

CSeries cs_mul(const CSeries& a, const CSeries& b) {
    CSeries r(std::min(a.size(), b.size()), 0.0);
    for (size_t i = 0; i < r.size(); ++i)
        for (size_t j = 0; i + j < r.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

void cs_add(CSeries& a, const CSeries& b) {
    for (size_t i = 0; i < a.size() && i < b.size(); ++i) a[i] += b[i];
}

// series of 1/Gamma(m + c*t) in t
CSeries recip_gamma_series(int m, std::complex<double> c, int R) {
    const RecipGammaCoeffs gc = recip_gamma_coeffs(m, R);
    CSeries s(R + 1);
    std::complex<double> cp = 1.0;
    for (int i = 0; i <= R; ++i) {
        s[i] = gc.coeffs[i] * cp;
        cp *= c;
    }
    return s;
}

CSeries exp_series(std::complex<double> c, int R) {
    CSeries s(R + 1);
    std::complex<double> cp = 1.0;
    for (int i = 0; i <= R; ++i) {
        s[i] = cp;
        cp *= c / (double)(i + 1);
    }
    return s;
}

}  // namespace

double MomentExpansion::eval(double n) const {
    const double ln = std::log(n);
    double s = 0.0;
    double lp = 1.0;
    for (size_t j = 0; j < logcoeffs.size(); ++j) {
        s += logcoeffs[j] / lp;
        lp *= ln;
    }
    return std::pow(n, r) * s;
}

std::string MomentExpansion::csv() const {
    std::ostringstream os;
    os << "logpower,coefficient\n";
    for (size_t j = 0; j < logcoeffs.size(); ++j)
        os << j << "," << logcoeffs[j] << "\n";
    return os.str();
}

nlohmann::json CharSeries::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (size_t i = 0; i < coeffs.size(); ++i)
        arr.push_back({{"re", coeffs[i].real()},
                       {"im", coeffs[i].imag()},
                       {"stderr", i < stderrs.size() ? stderrs[i] : 0.0}});
    return nlohmann::json{{"coeffs", arr}, {"r_max", r_max}};
}

double coeff_asym(const Poly& g, int m, double n, int M) {
    if ((int)g.size() - 1 > M || M > 20)
        throw std::invalid_argument("coeff_asym: need deg(g) <= M <= 20");
    const RatFn b = asym_bracket(RatFn::from_poly(g), m, M);
    const long double y = -1.0L / std::log((long double)n);
    return (double)(powl((long double)n, m - 1) * b.eval(y));
}

double first_moment(WalkClass cls, double n, int k, int M) {
    if (n < 3 || M > 10) throw std::invalid_argument("first_moment: n >= 3, M <= 10");
    const RatFn f = vertex_f_rat(1, k, (long double)class_C(cls));
    const int pole = cls == WalkClass::closed ? 1 : 2;
    const RatFn b = asym_bracket(f, pole, M);
    const long double y = -1.0L / std::log((long double)n);
    const double pref = cls == WalkClass::closed ? 2.0 : 1.0;
    return pref * n * (double)b.eval(y);
}

double second_moment_central(WalkClass cls, double n, int k1, int k2) {
    const double g = euler_gamma(), ln = std::log(n);
    const double H3 = const_H3(), H4 = const_H4();
    const double pi = M_PI;
    if (cls == WalkClass::closed) {
        const double A = H4 * pi * pi * pi / 2.0 - 4.0 * zeta(2);
        const double corr =
            A * ((k1 + k2) * pi / 2.0 + 2.0 * g + pi * (1.0 + 2.0 * c_closed())) +
            8.0 * zeta(3);
        const double scale = 2.0 * pi * pi * n / (ln * ln * ln);
        return scale * scale * (A - 3.0 / ln * corr);
    }
    const double B = H3 * pi * pi / 8.0 + 0.5 - pi * pi / 12.0;
    const double corr =
        B * ((k1 + k2) * pi / 2.0 + 2.0 * g + pi * (1.0 + 2.0 * c_unrestricted()) -
             4.0) +
        zeta(3) - zeta(2) + H3 * pi * pi / 8.0 + H4 * pi * pi * pi / 16.0;
    const double scale = pi * pi * n / (ln * ln * ln);
    return scale * scale * (8.0 * B - 24.0 / ln * corr);
}

MomentExpansion moment_full(WalkClass cls, const std::vector<int>& k, int M,
                            long long budget, std::uint64_t seed) {
    const int r = (int)k.size();
    if (r < 1) throw std::invalid_argument("moment_full: need r >= 1");
    const long double C = (long double)class_C(cls);
    MomentExpansion out;
    out.r = r;
    out.cls = cls;

    RatFn total = RatFn::constant(0.0L);
    if (r == 1) {
        const int pole = cls == WalkClass::closed ? 1 : 2;
        total = asym_bracket(vertex_f_rat(1, k[0], C), pole, M);
        total = rat_scale(total, cls == WalkClass::closed ? 2.0L : 1.0L);
    } else {
        std::vector<std::vector<int>> hs;
        std::vector<int> cur;
        degree_vectors(r, M - r, cur, hs);
        const int pole = cls == WalkClass::closed ? r - 1 : r + 1;
        for (const auto& h : hs) {
            for (const BalancedMatrix& F : enumerate_balanced(r, h)) {
                const GraphWeights w = graph_weights(F);
                if (w.cof == 0) continue;
                const double wt = w.mult.get_d() * (double)w.cof;
                const double I = integral_I(F, budget, seed).value;
                RatFn g;
                long double pref;
                if (cls == WalkClass::closed) {
                    g = rat_scale(sym_vertex_product(h, k, C), (long double)I);
                    pref = 2.0L * (long double)M_PI * wt / powl(2.0L, r - 1);
                } else {
                    const double sI = integral_scriptI(F, budget, seed).value;
                    g = rat_scale(sym_vertex_product(h, k, C), (long double)sI);
                    for (int q = 0; q < r; ++q)
                        g = rat_add(g, rat_scale(sym_vertex_product(h, k, C, q),
                                                 (long double)I));
                    pref = wt / powl(4.0L, r - 1);
                }
                total = rat_add(total, rat_scale(asym_bracket(g, pole, M), pref));
            }
        }
    }
    const std::vector<long double> tay = rat_taylor(total, M);
    out.logcoeffs.assign(M + 1, 0.0);
    for (int j = 0; j <= M; ++j)
        out.logcoeffs[j] = (double)((j % 2 ? -1.0L : 1.0L) * tay[j]);
    return out;
}

double central_moment_leading(WalkClass cls, int p, const std::vector<int>& k,
                              const std::vector<GraphSumRecord>& sums) {
    (void)k;  // enters only beyond leading order
    if (p < 1) throw std::invalid_argument("central_moment_leading: p >= 1");
    if (p == 1) return 0.0;
    const double pi = M_PI;
    double pfact = 1.0;
    for (int i = 2; i <= p; ++i) pfact *= i;
    double total;
    if (cls == WalkClass::closed) {
        const double a = euler_gamma();  // gamma^{(1)}_1
        total = std::pow(-2.0, p) * gamma_conv(1, p, a);
        for (int r = 2; r <= p; ++r) {
            const GraphSumRecord& s = find_sum(r, sums);
            double rfact = 1.0;
            for (int i = 2; i <= r; ++i) rfact *= i;
            total += 4.0 * pi * s.sum_I * (r - 1) / rfact * std::pow(-pi / 2.0, r) *
                     std::pow(-2.0, p - r) * gamma_conv(r, p - r, a);
        }
    } else {
        const double a = euler_gamma() - 1.0;  // gamma^{(2)}_1
        total = std::pow(-2.0, p) * gamma_conv(2, p, a);
        for (int r = 2; r <= p; ++r) {
            const GraphSumRecord& s = find_sum(r, sums);
            double rfact = 1.0;
            for (int i = 2; i <= r; ++i) rfact *= i;
            const int q = p - r;
            const double tail = gamma_conv(r + 2, q - 1, a);
            total += 4.0 / rfact * std::pow(-pi / 2.0, r) * std::pow(-2.0, q) *
                     (s.sum_scriptI * (gamma_conv(r + 1, q, a) - tail) +
                      pi * (r - 1) * s.sum_I * tail);
        }
    }
    return pfact * total;
}

double centralize(int p, const std::function<double(unsigned)>& raw) {
    if (p < 1 || p > 20) throw std::invalid_argument("centralize: 1 <= p <= 20");
    const unsigned full = (1u << p) - 1u;
    double total = 0.0;
    for (unsigned B = 0; B <= full; ++B) {
        double term = raw(full & ~B);
        int bits = 0;
        for (int j = 0; j < p; ++j)
            if (B & (1u << j)) {
                term *= raw(1u << j);
                ++bits;
            }
        total += (bits % 2 ? -1.0 : 1.0) * term;
    }
    return total;
}

double const_H4() {
    return 2.0 * M_PI * std::pow(2.0 / M_PI, 4) * radial_tK0_integral(4);
}

double const_H3() {
    return 2.0 * M_PI * std::pow(2.0 / M_PI, 3) * radial_tK0_integral(3);
}

CharResult char_closed(const std::vector<double>& lambda, double t, int r_max,
                       const std::vector<GraphSumRecord>& sums, int series_order) {
    const std::complex<double> iu(0.0, 1.0);
    const double g = euler_gamma(), pi = M_PI;
    double lsum = 0.0;
    for (double l : lambda) lsum += l;
    const std::complex<double> tau = t * lsum;

    // pointwise
    std::complex<double> bracket = 1.0 / complex_gamma(1.0 - iu * tau / (2.0 * pi));
    for (int r = 2; r <= r_max; ++r) {
        const GraphSumRecord& s = find_sum(r, sums);
        double rfact = 1.0;
        for (int i = 2; i <= r; ++i) rfact *= i;
        bracket += 4.0 * pi * std::pow(-iu * tau / 8.0, r) * (double)(r - 1) /
                   (rfact * complex_gamma((double)r - iu * tau / (2.0 * pi))) *
                   s.sum_I;
    }
    const std::complex<double> value = std::exp(g * iu * tau / (2.0 * pi)) * bracket;

    // series in t (tau = lsum * t)
    const int R = series_order;
    const std::complex<double> c = -iu * lsum / (2.0 * pi);  // tau' per unit t
    CSeries pref = exp_series(iu * g * lsum / (2.0 * pi), R);
    CSeries inner = recip_gamma_series(1, c, R);
    std::vector<double> var(R + 1, 0.0);
    for (int r = 2; r <= std::min(r_max, R); ++r) {
        const GraphSumRecord& s = find_sum(r, sums);
        double rfact = 1.0;
        for (int i = 2; i <= r; ++i) rfact *= i;
        CSeries term(R + 1, 0.0);
        const CSeries rg = recip_gamma_series(r, c, R);
        const std::complex<double> base =
            4.0 * pi * std::pow(-iu * lsum / 8.0, r) * (double)(r - 1) / rfact;
        for (int l = 0; l + r <= R; ++l) term[l + r] = base * rg[l];
        CSeries unit = cs_mul(pref, term);
        for (int j = 0; j <= R; ++j) {
            const double e = std::abs(unit[j]) * s.sum_I_stderr;
            var[j] += e * e;
        }
        for (auto& cc : term) cc *= s.sum_I;
        cs_add(inner, term);
    }
    CharResult res;
    res.value = value;
    res.series.coeffs = cs_mul(pref, inner);
    res.series.r_max = r_max;
    res.series.stderrs.resize(R + 1);
    for (int j = 0; j <= R; ++j) res.series.stderrs[j] = std::sqrt(var[j]);
    return res;
}

CharResult char_brownian(double t, int r_max, const std::vector<GraphSumRecord>& sums,
                         int series_order) {
    const std::complex<double> iu(0.0, 1.0);
    const double g = euler_gamma(), pi = M_PI;
    const std::complex<double> it = iu * t;

    std::complex<double> bracket = 1.0 / complex_gamma(2.0 + it / (2.0 * pi));
    for (int r = 2; r <= r_max; ++r) {
        const GraphSumRecord& s = find_sum(r, sums);
        double rfact = 1.0;
        for (int i = 2; i <= r; ++i) rfact *= i;
        bracket += 4.0 * std::pow(it / 8.0, r) /
                   (rfact * complex_gamma((double)(r + 2) + it / (2.0 * pi))) *
                   ((double)(r + 1) * s.sum_scriptI +
                    it / 2.0 * (double)(r - 1) * s.sum_I);
    }
    const std::complex<double> value = std::exp((1.0 - g) * it / (2.0 * pi)) * bracket;

    const int R = series_order;
    const std::complex<double> c = iu / (2.0 * pi);
    CSeries pref = exp_series((1.0 - g) * iu / (2.0 * pi), R);
    CSeries inner = recip_gamma_series(2, c, R);
    std::vector<double> var(R + 1, 0.0);
    for (int r = 2; r <= std::min(r_max, R); ++r) {
        const GraphSumRecord& s = find_sum(r, sums);
        double rfact = 1.0;
        for (int i = 2; i <= r; ++i) rfact *= i;
        const CSeries rg = recip_gamma_series(r + 2, c, R);
        const std::complex<double> base = 4.0 * std::pow(iu / 8.0, r) / rfact;
        CSeries termS(R + 1, 0.0), termI(R + 1, 0.0);
        for (int l = 0; l + r <= R; ++l)
            termS[l + r] = base * (double)(r + 1) * rg[l];
        for (int l = 0; l + r + 1 <= R; ++l)
            termI[l + r + 1] = base * iu / 2.0 * (double)(r - 1) * rg[l];
        CSeries unitS = cs_mul(pref, termS), unitI = cs_mul(pref, termI);
        for (int j = 0; j <= R; ++j) {
            const double eS = std::abs(unitS[j]) * s.sum_scriptI_stderr;
            const double eI = std::abs(unitI[j]) * s.sum_I_stderr;
            var[j] += eS * eS + eI * eI;
        }
        for (int j = 0; j <= R; ++j)
            termS[j] = termS[j] * s.sum_scriptI + termI[j] * s.sum_I;
        cs_add(inner, termS);
    }
    CharResult res;
    res.value = value;
    res.series.coeffs = cs_mul(pref, inner);
    res.series.r_max = r_max;
    res.series.stderrs.resize(R + 1);
    for (int j = 0; j <= R; ++j) res.series.stderrs[j] = std::sqrt(var[j]);
    return res;
}

}  // namespace mpr
