#include "mprange/lattice_green.hpp"

#include <cmath>
#include <stdexcept>

#include "mprange/special_fn.hpp"

namespace mpr {

namespace {

void check_dim(int d) {
    if (d != 2 && d != 3) throw std::invalid_argument("d must be 2 or 3");
}

// Complex field of h(x,d,z) for every x at once: truncated-box DP over walk
// lengths, propagating z^m W_m(x) (magnitudes bounded by (2d|z|)^m, so double
// arithmetic is stable).  Two error sources, both kept below eps/2: the length
// truncation (geometric tail) and walks escaping the box (Hoeffding bound per
// coordinate with a reflection factor).
// Accumulation starts at walk length 1, so at() already equals h everywhere:
// the origin's length-0 delta never enters.
struct HField {
    int d = 2;
    int R = 0;
    std::vector<std::complex<double>> acc;  // accumulated h values

    std::complex<double> at(int x0, int x1, int x2) const {
        if (std::abs(x0) > R || std::abs(x1) > R || std::abs(x2) > R) return 0.0;
        const int w = 2 * R + 1;
        size_t idx = (x0 + R) * (size_t)w + (x1 + R);
        if (d == 3) idx = idx * w + (x2 + R);
        return acc[idx];
    }
};

HField h_field(int d, std::complex<double> z, double eps) {
    check_dim(d);
    const double q = 2.0 * d * std::abs(z);
    if (q >= 0.995)
        throw std::domain_error("h_eval: |z| too close to 1/(2d) for requested accuracy");
    int N = 20;
    if (z != 0.0) {
        N = std::max(N, (int)std::ceil(std::log(0.5 * eps * (1.0 - q)) / std::log(q)));
    }
    const int R =
        (int)std::ceil(std::sqrt(2.0 * N * std::log(16.0 * N / (eps * (1.0 - q)))));
    const int w = 2 * R + 1;
    const size_t cells = (d == 2) ? (size_t)w * w : (size_t)w * w * w;

    HField f;
    f.d = d;
    f.R = R;
    f.acc.assign(cells, 0.0);
    std::vector<std::complex<double>> cur(cells, 0.0), nxt(cells, 0.0);

    auto idx2 = [&](int i, int j) { return (size_t)i * w + j; };
    auto idx3 = [&](int i, int j, int l) { return ((size_t)i * w + j) * w + l; };

    if (d == 2)
        cur[idx2(R, R)] = 1.0;
    else
        cur[idx3(R, R, R)] = 1.0;

    for (int m = 1; m <= N; ++m) {
        if (d == 2) {
            for (int i = 0; i < w; ++i)
                for (int j = 0; j < w; ++j) {
                    std::complex<double> s = 0.0;
                    if (i > 0) s += cur[idx2(i - 1, j)];
                    if (i + 1 < w) s += cur[idx2(i + 1, j)];
                    if (j > 0) s += cur[idx2(i, j - 1)];
                    if (j + 1 < w) s += cur[idx2(i, j + 1)];
                    nxt[idx2(i, j)] = z * s;
                }
        } else {
            for (int i = 0; i < w; ++i)
                for (int j = 0; j < w; ++j)
                    for (int l = 0; l < w; ++l) {
                        std::complex<double> s = 0.0;
                        if (i > 0) s += cur[idx3(i - 1, j, l)];
                        if (i + 1 < w) s += cur[idx3(i + 1, j, l)];
                        if (j > 0) s += cur[idx3(i, j - 1, l)];
                        if (j + 1 < w) s += cur[idx3(i, j + 1, l)];
                        if (l > 0) s += cur[idx3(i, j, l - 1)];
                        if (l + 1 < w) s += cur[idx3(i, j, l + 1)];
                        nxt[idx3(i, j, l)] = z * s;
                    }
        }
        std::swap(cur, nxt);
        for (size_t i = 0; i < cells; ++i) f.acc[i] += cur[i];
    }
    return f;
}

}  // namespace

PointConfig::PointConfig(std::vector<std::array<int, 2>> pts) : points(std::move(pts)) {
    if (points.empty()) throw std::invalid_argument("PointConfig: need r >= 1");
    if (points[0] != std::array<int, 2>{0, 0})
        throw std::invalid_argument("PointConfig: first point must be the origin");
    for (size_t i = 0; i < points.size(); ++i)
        for (size_t j = i + 1; j < points.size(); ++j)
            if (points[i] == points[j])
                throw std::invalid_argument("PointConfig: points must be distinct");
}

PowerSeries walk_count_series(const LatticePoint& x, int d, int N) {
    check_dim(d);
    if (N < 0 || N > 60) throw std::invalid_argument("walk_count_series: 0 <= N <= 60");
    const int R = N;  // box radius = order: walks cannot feel the boundary
    const int w = 2 * R + 1;
    const size_t cells = (d == 2) ? (size_t)w * w : (size_t)w * w * w;
    std::vector<mpz_class> cur(cells, 0), nxt(cells, 0);
    auto index = [&](int i, int j, int l) {
        size_t v = (size_t)i * w + j;
        if (d == 3) v = v * w + l;
        return v;
    };
    cur[index(R, R, R)] = 1;
    const size_t target = index(x[0] + R, x[1] + R, (d == 3 ? x[2] : 0) + R);
    if (std::abs(x[0]) > R || std::abs(x[1]) > R || (d == 3 && std::abs(x[2]) > R))
        throw std::invalid_argument("walk_count_series: |x| exceeds order");

    PowerSeries out(N);
    out[0] = (x[0] == 0 && x[1] == 0 && (d == 2 || x[2] == 0)) ? 1 : 0;
    for (int m = 1; m <= N; ++m) {
        for (int i = 0; i < w; ++i)
            for (int j = 0; j < w; ++j) {
                const int lmax = (d == 3) ? w : 1;
                for (int l = 0; l < lmax; ++l) {
                    mpz_class s = 0;
                    if (i > 0) s += cur[index(i - 1, j, l)];
                    if (i + 1 < w) s += cur[index(i + 1, j, l)];
                    if (j > 0) s += cur[index(i, j - 1, l)];
                    if (j + 1 < w) s += cur[index(i, j + 1, l)];
                    if (d == 3) {
                        if (l > 0) s += cur[index(i, j, l - 1)];
                        if (l + 1 < w) s += cur[index(i, j, l + 1)];
                    }
                    nxt[index(i, j, l)] = s;
                }
            }
        std::swap(cur, nxt);
        out[m] = mpq_class(cur[target]);
    }
    return out;
}

PowerSeries h_series(const LatticePoint& x, int d, int N) {
    PowerSeries s = walk_count_series(x, d, N);
    if (x[0] == 0 && x[1] == 0 && (d == 2 || x[2] == 0)) s[0] -= 1;
    return s;
}

std::complex<double> h_eval(const LatticePoint& x, int d, std::complex<double> z,
                            double eps) {
    HField f = h_field(d, z, eps);
    return f.at(x[0], x[1], d == 3 ? x[2] : 0);
}

std::complex<double> h0_elliptic(std::complex<double> z) {
    return 2.0 / M_PI * elliptic_K(16.0 * z * z) - 1.0;
}

Eigen::MatrixXcd first_hit_matrix(const PointConfig& Y, std::complex<double> z,
                                  double eps) {
    const int r = Y.r();
    HField f = h_field(2, z, eps);
    const std::complex<double> denom = 1.0 + f.at(0, 0, 0);
    Eigen::MatrixXcd U(r, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            const int dx = Y.points[i][0] - Y.points[j][0];
            const int dy = Y.points[i][1] - Y.points[j][1];
            U(i, j) = f.at(dx, dy, 0) / denom;
        }
    return U;
}

std::complex<double> delta_r(const PointConfig& Y, std::complex<double> z, double eps) {
    const int r = Y.r();
    if (r == 1) return 1.0;
    Eigen::MatrixXcd M = first_hit_matrix(Y, z, eps);
    for (int i = 0; i < r; ++i) M(i, i) = 1.0;
    return M.determinant();
}

PowerSeries first_moment_gf(int k, int N) {
    if (k < 1) throw std::invalid_argument("first_moment_gf: k >= 1");
    if (N < 0 || N > 40) throw std::invalid_argument("first_moment_gf: 0 <= N <= 40");
    PowerSeries h0 = h_series({0, 0, 0}, 2, N);
    PowerSeries one(N);
    one[0] = 1;
    PowerSeries u = h0 * (one + h0).inverse();
    PowerSeries s = u.pow(k);
    for (int i = 0; i <= N; ++i) s[i] /= k;
    return s.z_ddz();
}

PowerSeries multiplicity_fixed_gf(const LatticePoint& y, int k, int N) {
    if (y[0] == 0 && y[1] == 0 && y[2] == 0)
        throw std::invalid_argument("multiplicity_fixed_gf: y must be nonzero");
    if (k < 1) throw std::invalid_argument("multiplicity_fixed_gf: k >= 1");
    PowerSeries h0 = h_series({0, 0, 0}, 2, N);
    PowerSeries hy = h_series(y, 2, N);
    PowerSeries one(N);
    one[0] = 1;
    PowerSeries inv = (one + h0).inverse();
    PowerSeries u = h0 * inv;
    return hy * hy * inv * inv * u.pow(k - 1);
}

}  // namespace mpr
