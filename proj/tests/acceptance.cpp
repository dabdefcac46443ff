// Acceptance gate: every release-blocking property of the toolkit, one line of
// output per criterion.  Criteria 1-12 run by default and decide the exit
// code; criterion 13 (long empirical walk comparisons) runs with --slow or
// alone with --slow-only.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstring>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mprange/feynman.hpp"
#include "mprange/graph_enum.hpp"
#include "mprange/lattice_green.hpp"
#include "mprange/moments.hpp"
#include "mprange/special_fn.hpp"
#include "mprange/walk_oracle.hpp"

using namespace mpr;
using std::complex;

namespace {

struct Check {
    bool ok = true;
    std::ostringstream notes;

    void require(bool cond, const std::string& msg) {
        if (!cond) {
            ok = false;
            notes << "    " << msg << "\n";
        }
    }
    void close(double got, double want, double tol, const std::string& what) {
        std::ostringstream os;
        os << what << ": got " << got << ", want " << want << " (tol " << tol << ")";
        require(std::abs(got - want) <= tol, os.str());
    }
};

// ---------------------------------------------------------------- criterion 1

bool support_connected(const std::vector<std::vector<int>>& m) {
    const int r = (int)m.size();
    std::vector<int> seen(r, 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v = 0; v < r; ++v)
            if (!seen[v] && (m[u][v] > 0 || m[v][u] > 0)) {
                seen[v] = 1;
                q.push(v);
            }
    }
    return std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; });
}

std::set<std::vector<std::vector<int>>> brute_balanced(int r, const std::vector<int>& h) {
    std::set<std::vector<std::vector<int>>> out;
    std::vector<std::pair<int, int>> cells;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            if (i != j) cells.push_back({i, j});
    const int hmax = *std::max_element(h.begin(), h.end());
    std::vector<std::vector<int>> m(r, std::vector<int>(r, 0));
    auto rec = [&](auto&& self, size_t c) -> void {
        if (c == cells.size()) {
            for (int i = 0; i < r; ++i) {
                int rs = 0, cs = 0;
                for (int j = 0; j < r; ++j) {
                    rs += m[i][j];
                    cs += m[j][i];
                }
                if (rs != h[i] || cs != h[i]) return;
            }
            if (support_connected(m)) out.insert(m);
            return;
        }
        auto [i, j] = cells[c];
        for (int v = 0; v <= hmax; ++v) {
            m[i][j] = v;
            self(self, c + 1);
        }
        m[i][j] = 0;
        return;
    };
    rec(rec, 0);
    return out;
}

void criterion_1(Check& c) {
    const std::vector<std::pair<int, std::vector<int>>> cases = {
        {2, {2, 2}},    {2, {3, 3}},       {3, {2, 2, 2}},
        {3, {2, 1, 1}}, {4, {1, 1, 1, 1}}, {4, {2, 1, 1, 2}},
    };
    for (const auto& [r, h] : cases) {
        auto lib = enumerate_balanced(r, h);
        auto brute = brute_balanced(r, h);
        std::set<std::vector<std::vector<int>>> libset;
        for (const auto& F : lib) libset.insert(F.rows);
        std::ostringstream os;
        os << "enumeration r=" << r << " differs from brute force (" << lib.size()
           << " vs " << brute.size() << ")";
        c.require(libset == brute, os.str());
        c.require(std::is_sorted(lib.begin(), lib.end()),
                  "enumeration output not lexicographic");
    }
}

// ---------------------------------------------------------------- criterion 2

void criterion_2(Check& c) {
    int checked = 0;
    for (int r = 2; r <= 6; ++r) {
        std::vector<int> h(r);
        auto rec = [&](auto&& self, int pos, int left) -> void {
            if (pos == r) {
                for (const auto& F : enumerate_balanced(r, h)) {
                    if (euler_circuit_count(F) != euler_circuit_count_brute(F)) {
                        c.require(false, "circuit count mismatch on an r=" +
                                             std::to_string(r) + " matrix");
                    }
                    ++checked;
                }
                return;
            }
            const int room = left - (r - pos - 1);
            for (int v = 1; v <= room; ++v) {
                h[pos] = v;
                self(self, pos + 1, left - v);
            }
        };
        rec(rec, 0, 6);
    }
    c.require(checked >= 50, "too few matrices checked");
}

// ---------------------------------------------------------------- criterion 3

BalancedMatrix random_eulerian(std::mt19937_64& rng, int rmax, int lmax) {
    for (;;) {
        const int r = 3 + (int)(rng() % (std::uint64_t)(rmax - 2));
        const int L = 4 + (int)(rng() % (std::uint64_t)lmax);
        std::vector<int> seq{0};
        for (int i = 1; i < L; ++i) {
            int v;
            do
                v = (int)(rng() % (std::uint64_t)r);
            while (v == seq.back());
            seq.push_back(v);
        }
        if (seq.back() == 0) seq.pop_back();
        if ((int)seq.size() < 3) continue;
        std::set<int> visited(seq.begin(), seq.end());
        if ((int)visited.size() < 3) continue;
        std::map<int, int> relabel;
        for (int v : visited) relabel[v] = (int)relabel.size();
        std::vector<std::vector<int>> m(visited.size(),
                                        std::vector<int>(visited.size(), 0));
        for (size_t i = 0; i + 1 < seq.size(); ++i)
            m[relabel[seq[i]]][relabel[seq[i + 1]]] += 1;
        m[relabel[seq.back()]][relabel[seq[0]]] += 1;
        return BalancedMatrix(m);
    }
}

int find_dam(const std::vector<std::vector<int>>& rows) {
    const int r = (int)rows.size();
    for (int i = 0; i < r; ++i) {
        int deg = 0;
        for (int j = 0; j < r; ++j)
            if (j != i) deg += rows[i][j];
        if (deg == 1) return i;
    }
    return -1;
}

bool dam_makes_loop(const std::vector<std::vector<int>>& rows, int dam) {
    int in = -1, out = -1;
    for (int j = 0; j < (int)rows.size(); ++j) {
        if (j == dam) continue;
        if (rows[dam][j] > 0) out = j;
        if (rows[j][dam] > 0) in = j;
    }
    return in == out;
}

void criterion_3(Check& c) {
    std::mt19937_64 rng(314159);
    int chains = 0, loops_seen = 0, plain_seen = 0;
    while (chains < 200) {
        BalancedMatrix F = random_eulerian(rng, 7, 16);
        const int dam = find_dam(F.rows);
        if (dam < 0) continue;
        ++chains;
        (dam_makes_loop(F.rows, dam) ? loops_seen : plain_seen) += 1;
        const long long cof0 = cofactor(F);
        LoopyMatrix cur = reduce_dam(F);
        bool ok = (cofactor(cur) == cof0);
        while (ok && cur.r >= 3 && find_dam(cur.rows) >= 0) {
            cur = reduce_dam(cur);
            ok = (cofactor(cur) == cof0);
        }
        if (!ok) c.require(false, "cofactor changed under dam reduction");
    }
    c.require(loops_seen > 0 && plain_seen > 0,
              "sample missed one of the two dam classes");
}

// ---------------------------------------------------------------- criterion 4

void criterion_4(Check& c) {
    PowerSeries h = h_series({0, 0, 0}, 2, 40);
    for (int n = 1; n <= 10; ++n) {
        mpz_class b;
        mpz_bin_uiui(b.get_mpz_t(), 2 * n, n);
        c.require(h[2 * n] == mpq_class(b * b),
                  "origin series coefficient " + std::to_string(2 * n) +
                      " is not a squared central binomial");
        c.require(h[2 * n - 1] == 0, "odd coefficient nonzero");
    }
    // the three floating evaluations agree pairwise at sample points
    for (complex<double> z : {complex<double>(0.1, 0.0), complex<double>(0.17, 0.0),
                              complex<double>(0.1, 0.08)}) {
        complex<double> se = 0.0, zp = 1.0;
        for (int i = 0; i <= 40; ++i) {
            se += h[i].get_d() * zp;
            zp *= z;
        }
        // series truncation at order 40 costs < 1e-13 for |z| <= 0.13
        const complex<double> ee = h0_elliptic(z);
        const complex<double> ev = h_eval({0, 0, 0}, 2, z, 1e-12);
        c.require(std::abs(ee - ev) < 1e-10, "elliptic vs evaluation mismatch");
        if (std::abs(z) <= 0.13)
            c.require(std::abs(se - ev) < 1e-10, "series vs evaluation mismatch");
    }
}

// ---------------------------------------------------------------- criterion 5

void criterion_5(Check& c) {
    // first moments per fixed multiplicity against exhaustive enumeration
    const std::vector<std::array<int, 2>> ys = {{1, 0}, {1, 1}, {2, 0}};
    std::vector<std::pair<std::array<int, 2>, int>> queries;
    for (const auto& y : ys)
        for (int k = 1; k <= 2; ++k) queries.push_back({y, k});

    std::vector<PowerSeries> gfs;
    for (int k = 1; k <= 3; ++k) gfs.push_back(first_moment_gf(k, 12));
    std::vector<PowerSeries> mfs;
    for (const auto& [y, k] : queries)
        mfs.push_back(multiplicity_fixed_gf({y[0], y[1], 0}, k, 10));

    for (int L = 2; L <= 12; L += 2) {
        const auto e = (L <= 10) ? enumerate_closed(L, 3, {}, queries)
                                 : enumerate_closed(L, 3);
        for (int k = 1; k <= 3; ++k)
            c.require(gfs[k - 1][L] == mpq_class(e.sum_N[k - 1]),
                      "first-moment gf coefficient mismatch at L=" +
                          std::to_string(L) + " k=" + std::to_string(k));
        if (L <= 10)
            for (size_t q = 0; q < queries.size(); ++q)
                c.require(mfs[q][L] == mpq_class(e.fixed_counts[q]),
                          "multiplicity-fixed gf mismatch at L=" + std::to_string(L));
    }
}

// ---------------------------------------------------------------- criterion 6

complex<double> minor_det(const Eigen::MatrixXcd& U, int r) {
    Eigen::MatrixXcd M = U.topLeftCorner(r, r);
    for (int i = 0; i < r; ++i) M(i, i) = 1.0;
    return M.determinant();
}

void criterion_6(Check& c) {
    const PointConfig Y({{0, 0}, {1, 0}, {0, 1}, {2, 1}});
    long samples = 0, violations = 0;
    auto audit = [&](complex<double> z, double eps, bool realcase) {
        const Eigen::MatrixXcd U = first_hit_matrix(Y, z, eps);
        const complex<double> onep = 1.0 / (1.0 - U(0, 0));  // 1 + h0
        if (std::abs(onep) < 0.5 - 1e-6) ++violations;
        for (int r = 1; r <= 4; ++r) {
            const complex<double> d = minor_det(U, r);
            ++samples;
            const double lb = std::pow(1.0 / (2.0 * std::abs(onep)), r - 1);
            if (std::abs(d) < lb - 1e-6) ++violations;
            if (r == 1 && std::abs(d - 1.0) > 1e-12) ++violations;
            if (realcase) {
                if (std::abs(d.imag()) > 1e-7) ++violations;
                if (!(d.real() > 0.0 && d.real() <= 1.0 + 1e-9)) ++violations;
            }
        }
        return U;
    };

    std::mt19937_64 rng(271828);
    std::uniform_real_distribution<double> rad(0.02, 0.2), ang(0.0, 2 * M_PI);
    for (int it = 0; it < 110; ++it) {
        const complex<double> z = std::polar(rad(rng), ang(rng));
        const Eigen::MatrixXcd U = audit(z, 1e-8, false);
        if (it % 25 == 0) {
            // evenness: the determinant depends only on z^2
            const Eigen::MatrixXcd Um = first_hit_matrix(Y, -z, 1e-8);
            if (std::abs(minor_det(U, 4) - minor_det(Um, 4)) > 1e-6) ++violations;
        }
    }
    for (int it = 0; it < 20; ++it)
        audit(complex<double>(0.02 + it * (0.215 / 19), 0.0), 1e-8, true);
    // approaches to the boundary of the disk of analyticity
    for (complex<double> z :
         {complex<double>(0.240, 0.0), complex<double>(0.2435, 0.0),
          complex<double>(0.246, 0.0), complex<double>(0.2401, 0.006),
          complex<double>(0.2401, -0.006), complex<double>(0.2435, 0.004),
          complex<double>(0.245, 0.002)})
        audit(z, 1e-7, std::abs(z.imag()) < 1e-15);

    c.require(samples >= 500, "fewer than 500 determinant samples");
    c.require(violations == 0,
              std::to_string(violations) + " determinant property violations");
}

// ---------------------------------------------------------------- criterion 7

void criterion_7(Check& c) {
    double s = 0.0;
    for (long p = 300000; p >= 0; --p)
        s += 1.0 / ((1.0 + 3 * p) * (1.0 + 3 * p)) -
             1.0 / ((2.0 + 3 * p) * (2.0 + 3 * p));
    c.close(const_H3(), 8.0 / (M_PI * M_PI) * 1.5 * s, 1e-6,
            "triple-kernel constant vs lattice sum");
}

// ---------------------------------------------------------------- criterion 8

void criterion_8(Check& c) {
    // tail identity first: int_0^inf t K0^2 dt = 1/2 pins the quadrature
    c.close(radial_tK0_integral(2), 0.5, 1e-10, "second kernel moment");
    const BalancedMatrix F1({{0, 1}, {1, 0}});
    c.close(integral_I(F1, 0).value, 4.0 / M_PI, 1e-8, "pair integral");
}

// ---------------------------------------------------------------- criterion 9

void criterion_9(Check& c) {
    const auto mats = enumerate_balanced(3, {2, 2, 2});
    const long long budget = 400000;
    std::vector<GraphIntegral> v;
    for (const auto& F : mats) v.push_back(integral_I(F, budget, 17));
    for (size_t a = 0; a < v.size(); ++a)
        for (size_t b = a + 1; b < v.size(); ++b) {
            const double d = std::abs(v[a].value - v[b].value);
            const double s = std::hypot(v[a].stderr_, v[b].stderr_);
            c.require(d <= 3.0 * s, "equivalent matrices disagree beyond 3 sigma");
        }
    const auto hi = integral_I(mats[0], 2 * budget, 17);
    const double s = std::hypot(v[0].stderr_, hi.stderr_);
    c.require(std::abs(v[0].value - hi.value) <= 3.0 * s,
              "doubled budget moved the estimate beyond 3 sigma");
    c.require(hi.stderr_ < v[0].stderr_, "doubled budget did not reduce the error");
}

// --------------------------------------------------------------- criterion 10

std::vector<complex<double>> fit_taylor(
    const std::function<complex<double>(double)>& f, int deg, int npts, double T) {
    Eigen::MatrixXd V(npts, deg + 1);
    Eigen::VectorXd br(npts), bi(npts);
    for (int i = 0; i < npts; ++i) {
        const double t = -T + 2.0 * T * i / (npts - 1);
        double tp = 1.0;
        for (int j = 0; j <= deg; ++j) {
            V(i, j) = tp;
            tp *= t;
        }
        const complex<double> y = f(t);
        br(i) = y.real();
        bi(i) = y.imag();
    }
    const auto qr = V.colPivHouseholderQr();
    Eigen::VectorXd cr = qr.solve(br), ci = qr.solve(bi);
    std::vector<complex<double>> out(deg + 1);
    for (int j = 0; j <= deg; ++j) out[j] = {cr(j), ci(j)};
    return out;
}

void criterion_10(Check& c, const std::vector<GraphSumRecord>& sums) {
    CharResult cc = char_closed({1.0}, 0.0, 3, sums, 6);
    CharResult cb = char_brownian(0.0, 3, sums, 6);
    c.require(std::abs(cc.value - 1.0) < 1e-12, "closed charfn(0) != 1");
    c.require(std::abs(cb.value - 1.0) < 1e-12, "brownian charfn(0) != 1");
    c.require(std::abs(cc.series.coeffs[1]) <= 1e-10, "closed linear coefficient");
    c.require(std::abs(cb.series.coeffs[1]) <= 1e-10, "brownian linear coefficient");

    auto fitc = fit_taylor(
        [&](double t) { return char_closed({1.0}, t, 3, sums, 6).value; }, 12, 49,
        0.5);
    auto fitb = fit_taylor(
        [&](double t) { return char_brownian(t, 3, sums, 6).value; }, 12, 49, 0.5);
    for (int j = 0; j <= 4; ++j) {
        c.require(std::abs(fitc[j] - cc.series.coeffs[j]) < 1e-8,
                  "closed series order " + std::to_string(j) +
                      " disagrees with the pointwise fit");
        c.require(std::abs(fitb[j] - cb.series.coeffs[j]) < 1e-8,
                  "brownian series order " + std::to_string(j) +
                      " disagrees with the pointwise fit");
    }
}

// --------------------------------------------------------------- criterion 11

std::vector<double> conv_coeffs(const std::vector<double>& a,
                                const std::vector<double>& b, int M) {
    std::vector<double> c(M + 1, 0.0);
    for (int i = 0; i < (int)a.size(); ++i)
        for (int j = 0; j < (int)b.size() && i + j <= M; ++j) c[i + j] += a[i] * b[j];
    return c;
}

void criterion_11(Check& c) {
    const std::vector<GraphSumRecord> sums = {graph_sum(2, 0)};
    for (WalkClass cls : {WalkClass::closed, WalkClass::unrestricted}) {
        const double unit =
            (cls == WalkClass::closed) ? 2.0 * M_PI * M_PI : M_PI * M_PI;
        MomentExpansion raw = moment_full(cls, {1, 2}, 7);
        std::vector<double> cen = raw.logcoeffs;
        std::vector<double> prod =
            conv_coeffs(moment_full(cls, {1}, 7).logcoeffs,
                        moment_full(cls, {2}, 7).logcoeffs, 7);
        for (int i = 0; i <= 7; ++i) cen[i] -= prod[i];
        const double lead = central_moment_leading(cls, 2, {1, 2}, sums);
        c.close(cen[6] / (unit * unit), lead, 1e-10 * std::abs(lead),
                "series-assembled leading constant vs graph-sum formula");
        const double n = 1e8, ln = std::log(n);
        const double series =
            n * n * (cen[6] / std::pow(ln, 6) + cen[7] / std::pow(ln, 7));
        const double direct = second_moment_central(cls, n, 1, 2);
        c.close(series / direct, 1.0, 1e-9, "two-term series vs closed form");
    }
}

// --------------------------------------------------------------- criterion 12

void criterion_12(Check& c) {
    const long n = 10000;
    const long N = n + 3;
    std::vector<double> S(N + 1), A(N + 1, 0.0);
    for (long i = 0; i <= N; ++i) S[i] = 1.0 / (i + 1);
    A[0] = 1.0;
    for (long i = 1; i <= N; ++i) {
        double s = 0.0;
        for (long l = 1; l <= i; ++l) s += S[l] * A[i - l];
        A[i] = -s;
    }
    auto exact_coeff = [&](int m, int j) {
        std::vector<double> P(N + 1, 0.0);
        P[0] = 1.0;
        for (int t = 0; t < j; ++t) {
            std::vector<double> Q(N + 1, 0.0);
            for (long i = 0; i <= N; ++i) {
                if (P[i] == 0.0) continue;
                for (long l = 0; l + i <= N; ++l) Q[i + l] += P[i] * A[l];
            }
            P = std::move(Q);
        }
        for (int t = 0; t < m; ++t)
            for (long i = 1; i <= N; ++i) P[i] += P[i - 1];
        return ((j % 2) ? -1.0 : 1.0) * P[n + j];
    };
    for (int m = 1; m <= 3; ++m)
        for (int j = 1; j <= 3; ++j) {
            const double exact = exact_coeff(m, j);
            Poly g(j + 1, 0.0L);
            g[j] = 1.0L;
            // the expansion is asymptotic: deep truncations must beat the
            // shallowest valid one and reach the pinned accuracy
            const double err0 =
                std::abs(coeff_asym(g, m, (double)n, j) - exact) / std::abs(exact);
            for (int M : {8, 10}) {
                const double err =
                    std::abs(coeff_asym(g, m, (double)n, M) - exact) / std::abs(exact);
                std::ostringstream os;
                os << "deep truncation not better than shallow at m=" << m
                   << " j=" << j << " M=" << M << " (" << err << " vs " << err0 << ")";
                c.require(err < err0, os.str());
            }
            const double best =
                std::abs(coeff_asym(g, m, (double)n, 10) - exact) / std::abs(exact);
            // the attainable floor of the asymptotic series scales like 1/n
            // times m-dependent constants, a few 1e-4 here
            c.require(best < 1e-3, "order-10 expansion misses the exact coefficient");
        }
}

// --------------------------------------------------------------- criterion 13

void criterion_13(Check& c) {
    // long open walks against the asymptotic first moment
    const int n = 1 << 14;
    WalkStats st = mc_unrestricted(n, {3, 100000}, 1);
    const double pred = first_moment(WalkClass::unrestricted, (double)n, 1, 3);
    std::ostringstream os;
    os << "sampled E N_2 = " << st.mean[0] << " vs asymptotic " << pred;
    c.require(std::abs(st.mean[0] - pred) / pred < 0.30, os.str());

    // exact enumeration at the sampler's upper exact range
    auto exact = enumerate_closed(14, 2);
    const double walks = exact.walks.get_d();
    WalkStats mc = mc_closed(7, {5, 200000}, 2);
    for (int k = 0; k < 2; ++k) {
        const double truth = exact.sum_N[k].get_d() / walks;
        std::ostringstream os2;
        os2 << "closed sampler off at k=" << (k + 1) << ": " << mc.mean[k] << " vs "
            << truth;
        c.require(std::abs(mc.mean[k] - truth) <= 4.0 * mc.se[k], os2.str());
    }
}

}  // namespace

int main(int argc, char** argv) {
    bool slow = false, slow_only = false;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--slow")) slow = true;
        if (!std::strcmp(argv[i], "--slow-only")) slow_only = true;
    }

    struct Entry {
        int id;
        const char* name;
        std::function<void(Check&)> run;
    };

    // graph sums shared by the characteristic-function criterion
    std::vector<GraphSumRecord> char_sums;

    const std::vector<Entry> entries = {
        {1, "matrix enumeration is exact", criterion_1},
        {2, "circuit counts match exhaustive search", criterion_2},
        {3, "dam reduction preserves cofactors", criterion_3},
        {4, "origin walk series has binomial coefficients", criterion_4},
        {5, "generating functions match walk enumeration", criterion_5},
        {6, "first-hit determinant bounds hold", criterion_6},
        {7, "triple-kernel constant matches its lattice sum", criterion_7},
        {8, "pair integral has its closed-form value", criterion_8},
        {9, "monte carlo integrals are budget- and symmetry-stable", criterion_9},
        {10, "characteristic series match pointwise values",
         [&](Check& c) {
             char_sums = {graph_sum(2, 0), graph_sum(3, 150000, 1)};
             criterion_10(c, char_sums);
         }},
        {11, "central second moment assembles consistently", criterion_11},
        {12, "asymptotic coefficients converge to exact series", criterion_12},
        {13, "long-walk sampling tracks the asymptotics", criterion_13},
    };

    int failures = 0;
    for (const auto& e : entries) {
        const bool is_slow = (e.id == 13);
        if (slow_only && !is_slow) continue;
        if (!slow_only && is_slow && !slow) {
            std::cout << "criterion 13: SKIP (slow; run with --slow)\n";
            continue;
        }
        Check c;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            e.run(c);
        } catch (const std::exception& ex) {
            c.require(false, std::string("exception: ") + ex.what());
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        std::ostringstream line;
        line << "criterion " << e.id << ": " << (c.ok ? "PASS" : "FAIL") << " - "
             << e.name << " (" << secs << " s)";
        std::cout << line.str() << "\n";
        if (!c.ok) {
            std::cout << c.notes.str();
            ++failures;
        }
    }
    return failures == 0 ? 0 : 1;
}
