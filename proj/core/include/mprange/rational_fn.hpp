#ifndef MPRANGE_RATIONAL_FN_HPP
#define MPRANGE_RATIONAL_FN_HPP

// Exact symbolic differentiation support for the asymptotic expansions: a
// rational function of y kept as a numerator polynomial over a product of
// polynomial factors with integer exponents.  Keeping the denominator factored
// makes repeated d/dy grow degrees linearly (quotient rule raises factor
// exponents by one) instead of squaring a monolithic denominator each time.
// Coefficients are long double; factor bases constructed from identical inputs
// compare bitwise equal, so merging works without symbolic normalization (a
// failed merge only costs an extra factor, never correctness).

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace mpr {

using Poly = std::vector<long double>;  // coefficient i belongs to y^i

inline Poly poly_trim(Poly p) {
    while (p.size() > 1 && p.back() == 0.0L) p.pop_back();
    return p;
}

inline Poly poly_add(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), 0.0L);
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return poly_trim(std::move(r));
}

inline Poly poly_scale(Poly a, long double s) {
    for (auto& c : a) c *= s;
    return a;
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
    Poly r(a.size() + b.size() - 1, 0.0L);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return poly_trim(std::move(r));
}

inline Poly poly_deriv(const Poly& a) {
    if (a.size() <= 1) return {0.0L};
    Poly r(a.size() - 1);
    for (size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * (long double)i;
    return poly_trim(std::move(r));
}

inline long double poly_eval(const Poly& a, long double y) {
    long double v = 0.0L;
    for (size_t i = a.size(); i-- > 0;) v = v * y + a[i];
    return v;
}

inline Poly poly_pow(const Poly& a, int n) {
    Poly r{1.0L};
    for (int i = 0; i < n; ++i) r = poly_mul(r, a);
    return r;
}

struct RatFn {
    Poly num{0.0L};
    std::vector<std::pair<Poly, int>> den;  // product of base^exp

    static RatFn from_poly(Poly p) { return RatFn{poly_trim(std::move(p)), {}}; }
    static RatFn constant(long double c) { return from_poly({c}); }

    bool is_zero() const {
        return std::all_of(num.begin(), num.end(), [](long double c) { return c == 0.0L; });
    }

    void push_factor(const Poly& base, int exp) {
        if (exp == 0) return;
        for (auto& [b, e] : den)
            if (b == base) {
                e += exp;
                if (e == 0) {
                    den.erase(std::remove_if(den.begin(), den.end(),
                                             [&](auto& f) { return f.second == 0; }),
                              den.end());
                }
                return;
            }
        if (exp < 0) {
            num = poly_mul(num, poly_pow(base, -exp));
            return;
        }
        den.push_back({base, exp});
    }

    long double eval(long double y) const {
        long double v = poly_eval(num, y);
        for (const auto& [b, e] : den) {
            const long double bv = poly_eval(b, y);
            if (bv == 0.0L) throw std::domain_error("RatFn: evaluation at a pole");
            v /= powl(bv, (long double)e);
        }
        return v;
    }
};

inline RatFn rat_mul(const RatFn& a, const RatFn& b) {
    RatFn r;
    r.num = poly_mul(a.num, b.num);
    r.den = a.den;
    for (const auto& [base, exp] : b.den) r.push_factor(base, exp);
    return r;
}

inline RatFn rat_scale(RatFn a, long double s) {
    a.num = poly_scale(std::move(a.num), s);
    return a;
}

inline RatFn rat_add(const RatFn& a, const RatFn& b) {
    // common denominator: union of factors at max exponent
    RatFn r;
    r.den = a.den;
    for (const auto& [base, exp] : b.den) {
        bool found = false;
        for (auto& [rb, re] : r.den)
            if (rb == base) {
                re = std::max(re, exp);
                found = true;
                break;
            }
        if (!found) r.den.push_back({base, exp});
    }
    auto lift = [&](const RatFn& x) {
        Poly n = x.num;
        for (const auto& [base, exp] : r.den) {
            int have = 0;
            for (const auto& [xb, xe] : x.den)
                if (xb == base) have = xe;
            n = poly_mul(n, poly_pow(base, exp - have));
        }
        return n;
    };
    r.num = poly_add(lift(a), lift(b));
    return r;
}

// d/dy of num / prod base_i^{e_i}:
//   (num' - num * sum e_i base_i'/base_i) / prod base_i^{e_i}
// realized with each factor's exponent raised by one in its own term.
inline RatFn rat_deriv(const RatFn& a) {
    RatFn r;
    r.num = poly_deriv(a.num);
    r.den = a.den;
    for (size_t i = 0; i < a.den.size(); ++i) {
        RatFn t;
        t.num = poly_scale(poly_mul(a.num, poly_deriv(a.den[i].first)),
                           -(long double)a.den[i].second);
        t.den = a.den;
        t.den[i].second += 1;
        r = rat_add(r, t);
    }
    return r;
}

// Multiply by y^p (p may be negative; negative powers enter the denominator).
inline RatFn rat_mul_ypow(RatFn a, int p) {
    if (p >= 0) {
        Poly yp(p + 1, 0.0L);
        yp[p] = 1.0L;
        a.num = poly_mul(a.num, yp);
        return a;
    }
    a.push_factor(Poly{0.0L, 1.0L}, -p);
    return a;
}

// Taylor coefficients around y = 0 up to order M (requires no pole at 0; a
// factor y^e in the denominator must be cancelled by the numerator valuation).
inline std::vector<long double> rat_taylor(const RatFn& a, int M) {
    Poly den{1.0L};
    for (const auto& [b, e] : a.den) den = poly_mul(den, poly_pow(b, e));
    Poly num = a.num;
    // strip common y^v
    size_t v = 0;
    while (v < den.size() && den[v] == 0.0L) ++v;
    if (v > 0) {
        for (size_t i = 0; i < v; ++i)
            if (i < num.size() && num[i] != 0.0L)
                throw std::domain_error("rat_taylor: pole at y = 0");
        num.erase(num.begin(), num.begin() + std::min(v, num.size()));
        if (num.empty()) num = {0.0L};
        den.erase(den.begin(), den.begin() + v);
    }
    if (den.empty() || den[0] == 0.0L)
        throw std::domain_error("rat_taylor: pole at y = 0");
    std::vector<long double> c(M + 1, 0.0L);
    for (int n = 0; n <= M; ++n) {
        long double s = (n < (int)num.size()) ? num[n] : 0.0L;
        for (int j = 1; j <= n && j < (int)den.size(); ++j) s -= den[j] * c[n - j];
        c[n] = s / den[0];
    }
    return c;
}

// Vertex function fbar_{m,k}(y,C) as a rational function of y.
inline RatFn vertex_f_rat(int m, int k, long double C) {
    if (m < 1 || k < 1) throw std::invalid_argument("vertex_f_rat: m,k >= 1");
    const long double pi = 3.14159265358979323846264338327950288L;
    const Poly d1{1.0L, -C * pi};           // 1 - C pi y
    const Poly d2{1.0L, -(C + 1.0L) * pi};  // 1 - (C+1) pi y
    long double mf = 1.0L;
    for (int i = 2; i <= m; ++i) mf *= i;
    // Gbar as num/(d1^{m-1}) with num = d1^{m-1} + (1/m) sum_j (pi y)^j w_j d1^{m-1-j}
    Poly gnum = poly_pow(d1, m - 1);
    for (int j = 1; j <= m - 1; ++j) {
        long double w = 1.0L;
        for (int i = 0; i < j; ++i) w = w * (k - 1 - i) / (i + 1);
        if (k - 1 < j) w = 0.0L;
        long double w2 = 1.0L;
        for (int i = 0; i < j + 1; ++i) w2 = w2 * (m - i) / (i + 1);
        if (w == 0.0L || w2 == 0.0L) continue;
        Poly t(j + 1, 0.0L);
        t[j] = powl(pi, (long double)j) * w * w2 / m;
        gnum = poly_add(gnum, poly_mul(t, poly_pow(d1, m - 1 - j)));
    }
    RatFn f;
    Poly ym(m + 2, 0.0L);
    ym[m + 1] = mf * powl(pi, (long double)(m + 1));  // m! (pi y)^{m+1}
    f.num = poly_mul(ym, gnum);
    f.num = poly_mul(f.num, poly_pow(d1, k - 1));
    f.push_factor(d1, m - 1);
    f.push_factor(d2, k + m);
    return f;
}

}  // namespace mpr

#endif
