#include "mprange/feynman.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

#include "mprange/special_fn.hpp"

namespace mpr {

namespace {

constexpr int kStreams = 64;

// 16-point Gauss-Legendre nodes and weights on [-1,1].
constexpr double kGLx[16] = {
    -0.9894009349916499, -0.9445750230732326, -0.8656312023878318,
    -0.7554044083550030, -0.6178762444026438, -0.4580167776572274,
    -0.2816035507792589, -0.0950125098376374, 0.0950125098376374,
    0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
    0.7554044083550030,  0.8656312023878318,  0.9445750230732326,
    0.9894009349916499};
constexpr double kGLw[16] = {
    0.0271524594117541, 0.0622535239386479, 0.0951585116824928,
    0.1246289712555339, 0.1495959888165767, 0.1691565193950025,
    0.1826034150449236, 0.1894506104550685, 0.1894506104550685,
    0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479,
    0.0271524594117541};

template <class Fn>
double gl_panels(Fn f, double a, double b, double width) {
    double s = 0.0;
    const int n = std::max(1, (int)std::ceil((b - a) / width));
    const double h = (b - a) / n;
    for (int p = 0; p < n; ++p) {
        const double lo = a + p * h;
        for (int i = 0; i < 16; ++i)
            s += 0.5 * h * kGLw[i] * f(lo + 0.5 * h * (1.0 + kGLx[i]));
    }
    return s;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t matrix_hash(const BalancedMatrix& F, std::uint64_t seed) {
    std::uint64_t h = splitmix64(seed ^ 0x6d70726d6370ULL);
    for (const auto& row : F.rows)
        for (int v : row) h = splitmix64(h ^ (std::uint64_t)(v + 1));
    return h;
}

struct Pair {
    int i, j, m;  // undirected support edge with total multiplicity m
};

struct TreeEdge {
    int child, parent, rate;
};

// Spanning tree of the support graph preferring heavy edges, ordered so every
// child appears after its parent (root 0 is pinned at the origin).
std::vector<TreeEdge> spanning_tree(int r, const std::vector<Pair>& pairs) {
    std::vector<std::vector<std::pair<int, int>>> adj(r);  // (neighbor, rate)
    std::vector<Pair> sorted = pairs;
    std::sort(sorted.begin(), sorted.end(),
              [](const Pair& a, const Pair& b) { return a.m > b.m; });
    std::vector<int> parent(r, -1), rate(r, 0);
    std::vector<bool> seen(r, false);
    seen[0] = true;
    std::vector<TreeEdge> order;
    // Prim-style growth, scanning heavy edges first
    while ((int)order.size() < r - 1) {
        bool grew = false;
        for (const Pair& p : sorted) {
            int in = -1, out = -1;
            if (seen[p.i] && !seen[p.j]) in = p.i, out = p.j;
            if (seen[p.j] && !seen[p.i]) in = p.j, out = p.i;
            if (in < 0) continue;
            seen[out] = true;
            order.push_back({out, in, p.m});
            grew = true;
            break;
        }
        if (!grew) throw std::invalid_argument("integral: support graph disconnected");
    }
    return order;
}

// Both integrands from a shared sample set.  The scriptI integrand is the
// joint pair-sum with one exponent lowered; a lowered-to-zero factor is
// dropped rather than evaluated as 0^0.
struct McResult {
    double I, I_err, sI, sI_err;
    long long samples;
};

McResult mc_joint(const BalancedMatrix& F, long long budget, std::uint64_t seed) {
    const int r = F.r;
    std::vector<Pair> pairs;
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) {
            const int m = F.rows[i][j] + F.rows[j][i];
            if (m > 0) pairs.push_back({i, j, m});
        }
    const std::vector<TreeEdge> tree = spanning_tree(r, pairs);

    const long long per_stream = std::max(1LL, (budget + kStreams - 1) / kStreams);
    std::vector<double> meanI(kStreams), meanS(kStreams);

    for (int s = 0; s < kStreams; ++s) {
        std::mt19937_64 rng(splitmix64(seed + 0x1000 * (s + 1)));
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        double accI = 0.0, accS = 0.0;
        std::vector<double> x(r, 0.0), y(r, 0.0);
        std::vector<double> logu(pairs.size());
        for (long long it = 0; it < per_stream; ++it) {
            double logq = 0.0;
            for (const TreeEdge& e : tree) {
                const double u1 = 1.0 - unif(rng), u2 = 1.0 - unif(rng);
                const double t = -(std::log(u1) + std::log(u2)) / e.rate;
                const double th = 2.0 * M_PI * unif(rng);
                x[e.child] = x[e.parent] + t * std::cos(th);
                y[e.child] = y[e.parent] + t * std::sin(th);
                logq += 2.0 * std::log((double)e.rate) - e.rate * t -
                        std::log(2.0 * M_PI);
            }
            bool dead = false;
            double logmono = 0.0;
            for (size_t p = 0; p < pairs.size(); ++p) {
                const double dx = x[pairs[p].i] - x[pairs[p].j];
                const double dy = y[pairs[p].i] - y[pairs[p].j];
                const double d = std::sqrt(dx * dx + dy * dy);
                const double u = (d < 700.0) ? 2.0 / M_PI * bessel_K(0, d) : 0.0;
                if (u <= 0.0) {
                    dead = true;
                    break;
                }
                logu[p] = std::log(u);
                logmono += pairs[p].m * logu[p];
            }
            if (dead) continue;  // kernel underflow: contributes 0
            accI += std::exp(logmono - logq);
            for (size_t p = 0; p < pairs.size(); ++p)
                accS += pairs[p].m * std::exp(logmono - logu[p] - logq);
        }
        meanI[s] = accI / per_stream;
        meanS[s] = accS / per_stream;
    }

    auto reduce = [&](const std::vector<double>& m) {
        const double mean = std::accumulate(m.begin(), m.end(), 0.0) / kStreams;
        double var = 0.0;
        for (double v : m) var += (v - mean) * (v - mean);
        var /= kStreams * (kStreams - 1);
        return std::pair<double, double>(mean, std::sqrt(var));
    };
    auto [mi, ei] = reduce(meanI);
    auto [ms, es] = reduce(meanS);
    return {mi, ei, ms, es, per_stream * (long long)kStreams};
}

void check_integrable(const BalancedMatrix& F) {
    if (F.r >= 2 && !strongly_connected(F))
        throw std::invalid_argument("integral: F must be strongly connected");
}

int pair_total(const BalancedMatrix& F) { return F.rows[0][1] + F.rows[1][0]; }

}  // namespace

double radial_tK0_integral(int p) {
    if (p < 1) throw std::invalid_argument("radial_tK0_integral: p >= 1 needed");
    // t in (0,1]: t = e^u, integrand e^{2u} K0(e^u)^p, u in [-40, 0]
    const double inner = gl_panels(
        [p](double u) {
            const double t = std::exp(u);
            return std::exp(2.0 * u) * std::pow(bessel_K(0, t), p);
        },
        -40.0, 0.0, 0.5);
    const double outer = gl_panels(
        [p](double t) { return t * std::pow(bessel_K(0, t), p); }, 1.0, 40.0, 0.5);
    return inner + outer;
}

GraphIntegral integral_I(const BalancedMatrix& F, long long budget,
                         std::uint64_t seed) {
    check_integrable(F);
    if (F.r == 1) return {1.0, 0.0, "radial-quadrature", 0};
    if (F.r == 2) {
        const int p = pair_total(F);
        const double v =
            2.0 * M_PI * std::pow(2.0 / M_PI, p) * radial_tK0_integral(p);
        return {v, 0.0, "radial-quadrature", 0};
    }
    McResult m = mc_joint(F, budget, matrix_hash(F, seed));
    return {m.I, m.I_err, "monte-carlo", m.samples};
}

GraphIntegral integral_scriptI(const BalancedMatrix& F, long long budget,
                               std::uint64_t seed) {
    check_integrable(F);
    if (F.r == 1) return {0.0, 0.0, "radial-quadrature", 0};
    if (F.r == 2) {
        const int p = pair_total(F);
        const double v = p * 2.0 * M_PI * std::pow(2.0 / M_PI, p - 1) *
                         radial_tK0_integral(p - 1);
        return {v, 0.0, "radial-quadrature", 0};
    }
    McResult m = mc_joint(F, budget, matrix_hash(F, seed));
    return {m.sI, m.sI_err, "monte-carlo", m.samples};
}

GraphSumRecord graph_sum(int r, long long budget, std::uint64_t seed) {
    if (r < 2 || r > 6) throw std::invalid_argument("graph_sum: 2 <= r <= 6");
    const std::vector<BalancedMatrix> mats =
        enumerate_balanced(r, std::vector<int>(r, 2));
    GraphSumRecord rec;
    rec.r = r;
    rec.count = (int)mats.size();
    rec.seed = seed;
    rec.budget = budget;
    double varI = 0.0, varS = 0.0;
    for (const BalancedMatrix& F : mats) {
        const GraphWeights w = graph_weights(F);
        const double wt = w.mult.get_d() * (double)w.cof;
        if (r == 2) {
            rec.sum_I += wt * integral_I(F, 0).value;
            rec.sum_scriptI += wt * integral_scriptI(F, 0).value;
        } else {
            McResult m = mc_joint(F, budget, matrix_hash(F, seed));
            rec.sum_I += wt * m.I;
            rec.sum_scriptI += wt * m.sI;
            varI += wt * wt * m.I_err * m.I_err;
            varS += wt * wt * m.sI_err * m.sI_err;
        }
    }
    rec.sum_I_stderr = std::sqrt(varI);
    rec.sum_scriptI_stderr = std::sqrt(varS);
    return rec;
}

std::string graph_sum_filename(int r, long long budget, std::uint64_t seed) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "gs_r%d_b%lld_s%llu.json", r, budget,
                  (unsigned long long)seed);
    return buf;
}

void save_graph_sum(const GraphSumRecord& rec, const std::string& cache_dir) {
    std::filesystem::create_directories(cache_dir);
    nlohmann::json j{{"r", rec.r},
                     {"count", rec.count},
                     {"sum_I", rec.sum_I},
                     {"sum_I_stderr", rec.sum_I_stderr},
                     {"sum_scriptI", rec.sum_scriptI},
                     {"sum_scriptI_stderr", rec.sum_scriptI_stderr},
                     {"seed", rec.seed},
                     {"budget", rec.budget}};
    const std::filesystem::path p =
        std::filesystem::path(cache_dir) /
        graph_sum_filename(rec.r, rec.budget, rec.seed);
    std::ofstream os(p);
    if (!os) throw std::runtime_error("save_graph_sum: cannot write " + p.string());
    os << j.dump(2) << "\n";
}

std::optional<GraphSumRecord> load_graph_sum(int r, const std::string& cache_dir) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(cache_dir)) return std::nullopt;
    char prefix[32];
    std::snprintf(prefix, sizeof prefix, "gs_r%d_b", r);
    std::optional<GraphSumRecord> best;
    for (const auto& entry : fs::directory_iterator(cache_dir)) {
        const std::string name = entry.path().filename().string();
        if (name.rfind(prefix, 0) != 0 || entry.path().extension() != ".json")
            continue;
        std::ifstream is(entry.path());
        nlohmann::json j;
        try {
            is >> j;
        } catch (const nlohmann::json::exception&) {
            continue;
        }
        if (!j.contains("r") || j["r"].get<int>() != r) continue;
        GraphSumRecord rec;
        rec.r = r;
        rec.count = j.value("count", 0);
        rec.sum_I = j.value("sum_I", 0.0);
        rec.sum_I_stderr = j.value("sum_I_stderr", 0.0);
        rec.sum_scriptI = j.value("sum_scriptI", 0.0);
        rec.sum_scriptI_stderr = j.value("sum_scriptI_stderr", 0.0);
        rec.seed = j.value("seed", (std::uint64_t)0);
        rec.budget = j.value("budget", (long long)0);
        if (!best || rec.budget > best->budget ||
            (rec.budget == best->budget && rec.seed < best->seed))
            best = rec;
    }
    return best;
}

}  // namespace mpr
