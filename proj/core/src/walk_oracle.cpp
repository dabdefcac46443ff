#include "mprange/walk_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace mpr {

namespace {

constexpr int kDX[4] = {1, -1, 0, 0};
constexpr int kDY[4] = {0, 0, 1, -1};
constexpr int kStreams = 64;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t site_key(int x, int y) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)) << 32) |
           static_cast<std::uint32_t>(y);
}

// Dense occupancy DFS state shared by both exact enumerators.
struct EnumGrid {
    int L, w;
    std::vector<int> visits;  // (x+L)*w + (y+L)
    std::vector<long> hist;  // hist[v] = sites currently visited v times

    explicit EnumGrid(int L_) : L(L_), w(2 * L_ + 1), visits(w * w, 0), hist(L_ + 2, 0) {}

    int& at(int x, int y) { return visits[(x + L) * w + (y + L)]; }
    void bump(int x, int y) {
        int& v = at(x, y);
        if (v > 0) --hist[v];
        ++v;
        ++hist[v];
    }
    void unbump(int x, int y) {
        int& v = at(x, y);
        --hist[v];
        --v;
        if (v > 0) ++hist[v];
    }
};

void accumulate_central(WalkStats& st) {
    st.central.assign(st.kmax, {0.0, 0.0, 0.0});
    for (int k = 0; k < st.kmax; ++k) {
        const double m = st.raw[k][0], r2 = st.raw[k][1], r3 = st.raw[k][2],
                     r4 = st.raw[k][3];
        st.central[k][0] = r2 - m * m;
        st.central[k][1] = r3 - 3.0 * m * r2 + 2.0 * m * m * m;
        st.central[k][2] = r4 - 4.0 * m * r3 + 6.0 * m * m * r2 - 3.0 * m * m * m * m;
    }
}

// Shared Monte Carlo scaffolding: `play` runs one walk and fills nk[k-1] with
// N_{2k}; streams are merged in fixed order so results are seed-deterministic.
template <class Play>
WalkStats mc_run(WalkClass cls, long long length, const SeedSpec& seed, int kmax,
                 Play play) {
    const long long per = std::max(1LL, (seed.samples + kStreams - 1) / kStreams);
    WalkStats st;
    st.cls = cls;
    st.length = length;
    st.samples = per * kStreams;
    st.kmax = kmax;
    st.mean.assign(kmax, 0.0);
    st.se.assign(kmax, 0.0);
    st.raw.assign(kmax, {0.0, 0.0, 0.0, 0.0});

    std::vector<std::vector<double>> stream_mean(kmax,
                                                 std::vector<double>(kStreams, 0.0));
    std::vector<long long> nk(kmax, 0);
    for (int s = 0; s < kStreams; ++s) {
        std::mt19937_64 rng(splitmix64(seed.root_seed + 0x100 * (s + 1)));
        for (long long it = 0; it < per; ++it) {
            std::fill(nk.begin(), nk.end(), 0);
            play(rng, nk);
            for (int k = 0; k < kmax; ++k) {
                const double v = (double)nk[k];
                stream_mean[k][s] += v;
                st.raw[k][0] += v;
                st.raw[k][1] += v * v;
                st.raw[k][2] += v * v * v;
                st.raw[k][3] += v * v * v * v;
            }
        }
        for (int k = 0; k < kmax; ++k) stream_mean[k][s] /= per;
    }
    for (int k = 0; k < kmax; ++k) {
        for (int j = 0; j < 4; ++j) st.raw[k][j] /= st.samples;
        double m = 0.0;
        for (double v : stream_mean[k]) m += v;
        m /= kStreams;
        st.mean[k] = m;
        double var = 0.0;
        for (double v : stream_mean[k]) var += (v - m) * (v - m);
        st.se[k] = std::sqrt(var / (kStreams * (kStreams - 1)));
    }
    accumulate_central(st);
    return st;
}

}  // namespace

std::string WalkStats::csv() const {
    std::ostringstream os;
    os << "n,samples,k,mean,stderr,central2,central3,central4\n";
    for (int k = 0; k < kmax; ++k)
        os << length << "," << samples << "," << (k + 1) << "," << mean[k] << ","
           << se[k] << "," << central[k][0] << "," << central[k][1] << ","
           << central[k][2] << "\n";
    return os.str();
}

ClosedEnumeration enumerate_closed(
    int L, int kmax, const std::vector<std::vector<int>>& product_ks,
    const std::vector<std::pair<std::array<int, 2>, int>>& fixed_queries) {
    if (L < 2 || L % 2 != 0)
        throw std::invalid_argument("enumerate_closed: L must be even and >= 2");
    if (L > 14)
        throw std::invalid_argument(
            "enumerate_closed: L > 14 refused (cost grows like 4^L, about " +
            std::to_string((double)std::pow(4.0, L)) + " paths)");
    ClosedEnumeration out;
    out.L = L;
    out.sum_N.assign(kmax, 0);
    out.product_sums.assign(product_ks.size(), 0);
    out.fixed_counts.assign(fixed_queries.size(), 0);

    EnumGrid grid(L);
    auto dfs = [&](auto&& self, int x, int y, int step) -> void {
        if (step == L) {
            out.walks += 1;
            const int hmax = (int)grid.hist.size() - 1;
            for (int k = 1; k <= kmax && k <= hmax; ++k)
                out.sum_N[k - 1] += grid.hist[k];
            for (size_t q = 0; q < product_ks.size(); ++q) {
                mpz_class p = 1;
                for (int k : product_ks[q]) p *= (k <= hmax) ? grid.hist[k] : 0L;
                out.product_sums[q] += p;
            }
            for (size_t q = 0; q < fixed_queries.size(); ++q) {
                const auto& [yq, kq] = fixed_queries[q];
                if (grid.at(yq[0], yq[1]) == kq) out.fixed_counts[q] += 1;
            }
            return;
        }
        for (int d = 0; d < 4; ++d) {
            const int nx = x + kDX[d], ny = y + kDY[d];
            if (std::abs(nx) + std::abs(ny) > L - step - 1) continue;
            grid.bump(nx, ny);
            self(self, nx, ny, step + 1);
            grid.unbump(nx, ny);
        }
    };
    dfs(dfs, 0, 0, 0);
    return out;
}

UnrestrictedEnumeration enumerate_unrestricted(int n, int kmax) {
    if (n < 1 || n > 12)
        throw std::invalid_argument(
            "enumerate_unrestricted: 1 <= n <= 12 (cost grows like 4^n)");
    UnrestrictedEnumeration out;
    out.n = n;
    out.sum_N.assign(kmax, 0);

    EnumGrid grid(n);
    grid.bump(0, 0);  // time 0 counts for open walks
    auto dfs = [&](auto&& self, int x, int y, int step) -> void {
        if (step == n) {
            out.walks += 1;
            const int v0 = grid.at(0, 0);
            const bool closed_end = (x == 0 && y == 0);
            const int vend = grid.at(x, y);
            const int hmax = (int)grid.hist.size() - 1;
            for (int k = 1; k <= kmax; ++k) {
                mpz_class c = (k <= hmax) ? grid.hist[k] : 0L;
                // endpoints have odd multiplicity unless they coincide, where
                // mu = 2 visits - 2
                c -= (v0 == k) ? 1 : 0;
                if (closed_end) {
                    c += (v0 == k + 1) ? 1 : 0;
                } else {
                    c -= (vend == k) ? 1 : 0;
                }
                out.sum_N[k - 1] += c;
            }
            return;
        }
        for (int d = 0; d < 4; ++d) {
            const int nx = x + kDX[d], ny = y + kDY[d];
            grid.bump(nx, ny);
            self(self, nx, ny, step + 1);
            grid.unbump(nx, ny);
        }
    };
    dfs(dfs, 0, 0, 0);
    return out;
}

WalkStats mc_closed(int n, const SeedSpec& seed, int kmax) {
    if (n < 1 || n > (1 << 20)) throw std::invalid_argument("mc_closed: 1 <= n <= 2^20");
    const int L = 2 * n;
    std::vector<int> du(L), dv(L);
    std::unordered_map<std::uint64_t, int> visits;
    visits.reserve(2 * L);
    return mc_run(
        WalkClass::closed, L, seed, kmax,
        [&](std::mt19937_64& rng, std::vector<long long>& nk) {
            for (int i = 0; i < L; ++i) {
                du[i] = (i < n) ? 1 : -1;
                dv[i] = (i < n) ? 1 : -1;
            }
            for (int i = L - 1; i > 0; --i) {
                std::uniform_int_distribution<int> pick(0, i);
                std::swap(du[i], du[pick(rng)]);
                std::swap(dv[i], dv[pick(rng)]);
            }
            visits.clear();
            int x = 0, y = 0;
            for (int i = 0; i < L; ++i) {
                x += (du[i] + dv[i]) / 2;
                y += (du[i] - dv[i]) / 2;
                ++visits[site_key(x, y)];
            }
            for (const auto& [key, v] : visits)
                if (v <= kmax) ++nk[v - 1];
        });
}

WalkStats mc_unrestricted(int n, const SeedSpec& seed, int kmax) {
    if (n < 1 || n > (1 << 20))
        throw std::invalid_argument("mc_unrestricted: 1 <= n <= 2^20");
    std::unordered_map<std::uint64_t, int> visits;
    visits.reserve(2 * n);
    return mc_run(
        WalkClass::unrestricted, n, seed, kmax,
        [&](std::mt19937_64& rng, std::vector<long long>& nk) {
            visits.clear();
            int x = 0, y = 0;
            ++visits[site_key(0, 0)];
            std::uniform_int_distribution<int> dir(0, 3);
            for (int i = 0; i < n; ++i) {
                const int d = dir(rng);
                x += kDX[d];
                y += kDY[d];
                ++visits[site_key(x, y)];
            }
            const int v0 = visits[site_key(0, 0)];
            const bool closed_end = (x == 0 && y == 0);
            const int vend = visits[site_key(x, y)];
            for (const auto& [key, v] : visits)
                if (v <= kmax) ++nk[v - 1];
            for (int k = 1; k <= kmax; ++k) {
                long long c = 0;
                c -= (v0 == k) ? 1 : 0;
                if (closed_end)
                    c += (v0 == k + 1) ? 1 : 0;
                else
                    c -= (vend == k) ? 1 : 0;
                nk[k - 1] += c;
            }
        });
}

}  // namespace mpr
