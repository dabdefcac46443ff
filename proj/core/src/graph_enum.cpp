#include "mprange/graph_enum.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace mpr {

namespace {

void check_square(const std::vector<std::vector<int>>& rows) {
    const size_t r = rows.size();
    if (r < 1) throw std::invalid_argument("matrix must be nonempty");
    for (const auto& row : rows) {
        if (row.size() != r) throw std::invalid_argument("matrix must be square");
        for (int v : row)
            if (v < 0) throw std::invalid_argument("entries must be nonnegative");
    }
}

std::vector<int> offdiag_row_sums(const std::vector<std::vector<int>>& rows) {
    const int r = static_cast<int>(rows.size());
    std::vector<int> h(r, 0);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            if (i != j) h[i] += rows[i][j];
    return h;
}

void check_balanced(const std::vector<std::vector<int>>& rows, bool allow_loops) {
    const int r = static_cast<int>(rows.size());
    for (int i = 0; i < r; ++i) {
        if (!allow_loops && rows[i][i] != 0)
            throw std::invalid_argument("diagonal entries must be zero");
        int rs = 0, cs = 0;
        for (int j = 0; j < r; ++j) {
            if (j == i) continue;
            rs += rows[i][j];
            cs += rows[j][i];
        }
        if (rs != cs) throw std::invalid_argument("row/column sums must match");
    }
}

// Exact determinant by fraction-free (Bareiss) elimination.
mpz_class bareiss_det(std::vector<std::vector<mpz_class>> m) {
    const int n = static_cast<int>(m.size());
    if (n == 0) return 1;
    mpz_class prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m[k][k] == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (m[i][k] != 0) { p = i; break; }
            if (p < 0) return 0;
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

long long laplacian_cofactor(const std::vector<std::vector<int>>& rows) {
    const int r = static_cast<int>(rows.size());
    const std::vector<int> h = offdiag_row_sums(rows);
    // minor of A - F with row/column 0 removed; on the diagonal the loop
    // entries of A and F cancel, leaving the off-diagonal degree
    std::vector<std::vector<mpz_class>> m(r - 1, std::vector<mpz_class>(r - 1));
    for (int i = 1; i < r; ++i)
        for (int j = 1; j < r; ++j)
            m[i - 1][j - 1] = (i == j) ? h[i] : -rows[i][j];
    mpz_class det = bareiss_det(std::move(m));
    if (!det.fits_slong_p()) throw std::overflow_error("cofactor overflow");
    return det.get_si();
}

mpq_class mult_weight_rows(const std::vector<std::vector<int>>& rows) {
    const int r = static_cast<int>(rows.size());
    mpz_class denom = 1;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            if (i == j) continue;
            mpz_class f;
            mpz_fac_ui(f.get_mpz_t(), rows[i][j]);
            denom *= f;
        }
    mpq_class q(1, denom);
    q.canonicalize();
    return q;
}

std::vector<std::vector<int>> reduce_dam_rows(const std::vector<std::vector<int>>& rows) {
    const int r = static_cast<int>(rows.size());
    if (r < 3) throw std::invalid_argument("dam reduction needs r >= 3");
    const std::vector<int> h = offdiag_row_sums(rows);
    int i0 = -1;
    for (int i = 0; i < r; ++i)
        if (h[i] == 1) { i0 = i; break; }
    if (i0 < 0) throw std::invalid_argument("matrix has no dam");
    std::vector<int> keep;
    for (int i = 0; i < r; ++i)
        if (i != i0) keep.push_back(i);
    std::vector<std::vector<int>> out(r - 1, std::vector<int>(r - 1, 0));
    for (int a = 0; a < r - 1; ++a)
        for (int b = 0; b < r - 1; ++b) {
            const int i = keep[a], j = keep[b];
            out[a][b] = rows[i][j] + rows[i][i0] * rows[i0][j];
        }
    return out;
}

}  // namespace

BalancedMatrix::BalancedMatrix(std::vector<std::vector<int>> entries)
    : r(static_cast<int>(entries.size())), rows(std::move(entries)) {
    check_square(rows);
    check_balanced(rows, false);
}

std::vector<int> BalancedMatrix::degrees() const { return offdiag_row_sums(rows); }

LoopyMatrix::LoopyMatrix(std::vector<std::vector<int>> entries)
    : r(static_cast<int>(entries.size())), rows(std::move(entries)) {
    check_square(rows);
    check_balanced(rows, true);
}

std::vector<int> LoopyMatrix::degrees() const { return offdiag_row_sums(rows); }

bool strongly_connected(const BalancedMatrix& F) {
    // Tarjan's SCC algorithm; the graph is strongly connected iff the first
    // root's component covers every vertex with positive degree, and every
    // vertex must carry edges for the Euler circuit to exist.
    const int r = F.r;
    std::vector<int> index(r, -1), low(r, 0), stack;
    std::vector<bool> onstack(r, false);
    int next = 0, components = 0;
    std::function<void(int)> dfs = [&](int v) {
        index[v] = low[v] = next++;
        stack.push_back(v);
        onstack[v] = true;
        for (int w = 0; w < r; ++w) {
            if (w == v || F.rows[v][w] == 0) continue;
            if (index[w] < 0) {
                dfs(w);
                low[v] = std::min(low[v], low[w]);
            } else if (onstack[w]) {
                low[v] = std::min(low[v], index[w]);
            }
        }
        if (low[v] == index[v]) {
            ++components;
            while (true) {
                int w = stack.back();
                stack.pop_back();
                onstack[w] = false;
                if (w == v) break;
            }
        }
    };
    dfs(0);
    for (int v = 0; v < r; ++v)
        if (index[v] < 0) return false;  // unreachable vertex
    return components == 1;
}

std::vector<BalancedMatrix> enumerate_balanced(int r, const std::vector<int>& h) {
    if (r < 2) throw std::invalid_argument("r must be >= 2");
    if (static_cast<int>(h.size()) != r)
        throw std::invalid_argument("degree vector length must equal r");
    for (int v : h)
        if (v < 1) throw std::invalid_argument("degrees must be >= 1");

    std::vector<BalancedMatrix> out;
    std::vector<std::vector<int>> rows(r, std::vector<int>(r, 0));
    std::vector<int> colresid(h);

    // Fill row by row; within a row, entry by entry, bounded by the row
    // residual and the column residual.  Iterating entry values downward is
    // unnecessary: ascending values produce ascending row-major order.
    std::function<void(int)> fill_row = [&](int i) {
        if (i == r) {
            BalancedMatrix F(rows);
            const bool conn = strongly_connected(F);
            const long long cof = laplacian_cofactor(rows);
            if (conn != (cof != 0))
                throw std::logic_error("connectivity / cofactor cross-check failed");
            if (conn) out.push_back(std::move(F));
            return;
        }
        std::function<void(int, int)> fill_entry = [&](int j, int rem) {
            if (j == r) {
                if (rem != 0) return;
                // prune: each remaining column must be fillable by the rows
                // below (row c never feeds column c)
                for (int c = 0; c < r; ++c) {
                    int avail = 0;
                    for (int t = i + 1; t < r; ++t)
                        if (t != c) avail += h[t];
                    if (colresid[c] > avail) return;
                }
                fill_row(i + 1);
                return;
            }
            if (j == i) {
                fill_entry(j + 1, rem);
                return;
            }
            const int cap = std::min(rem, colresid[j]);
            for (int v = 0; v <= cap; ++v) {
                rows[i][j] = v;
                colresid[j] -= v;
                fill_entry(j + 1, rem - v);
                colresid[j] += v;
                rows[i][j] = 0;
            }
        };
        fill_entry(0, h[i]);
    };
    fill_row(0);
    return out;
}

long long cofactor(const BalancedMatrix& F) { return laplacian_cofactor(F.rows); }
long long cofactor(const LoopyMatrix& F) { return laplacian_cofactor(F.rows); }

mpq_class mult_weight(const BalancedMatrix& F) { return mult_weight_rows(F.rows); }
mpq_class mult_weight(const LoopyMatrix& F) { return mult_weight_rows(F.rows); }

LoopyMatrix reduce_dam(const BalancedMatrix& F) {
    return LoopyMatrix(reduce_dam_rows(F.rows));
}
LoopyMatrix reduce_dam(const LoopyMatrix& F) {
    return LoopyMatrix(reduce_dam_rows(F.rows));
}

mpz_class euler_circuit_count(const BalancedMatrix& F) {
    if (!strongly_connected(F))
        throw std::invalid_argument("Euler circuits need a strongly connected graph");
    mpz_class n = static_cast<long>(cofactor(F));
    for (int d : F.degrees()) {
        mpz_class f;
        mpz_fac_ui(f.get_mpz_t(), d - 1);
        n *= f;
    }
    return n;
}

mpz_class euler_circuit_count_brute(const BalancedMatrix& F) {
    if (!strongly_connected(F))
        throw std::invalid_argument("Euler circuits need a strongly connected graph");
    // Distinguishable parallel edges: expand F into an edge list (tail, head,
    // copy).  Circuits start with the lexicographically first edge.
    struct Edge { int to; bool used; };
    const int r = F.r;
    std::vector<std::vector<Edge>> adj(r);
    int total_edges = 0;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            for (int c = 0; c < F.rows[i][j]; ++c) {
                adj[i].push_back({j, false});
                ++total_edges;
            }
    mpz_class count = 0;
    std::function<void(int, int)> walk = [&](int v, int used) {
        if (used == total_edges) {
            if (v == 0) ++count;
            return;
        }
        for (auto& e : adj[v]) {
            if (e.used) continue;
            e.used = true;
            walk(e.to, used + 1);
            e.used = false;
        }
    };
    // anchor the circuit at the first edge instance out of vertex 0
    if (adj[0].empty()) throw std::invalid_argument("vertex 0 has no outgoing edge");
    adj[0][0].used = true;
    walk(adj[0][0].to, 1);
    return count;
}

GraphWeights graph_weights(const BalancedMatrix& F) {
    GraphWeights w;
    w.cof = cofactor(F);
    w.mult = mult_weight(F);
    w.trails = euler_circuit_count(F);
    return w;
}

void to_json(nlohmann::json& j, const BalancedMatrix& F) {
    j = nlohmann::json{{"r", F.r}, {"rows", F.rows}};
}

void from_json(const nlohmann::json& j, BalancedMatrix& F) {
    std::vector<std::vector<int>> rows = j.at("rows").get<std::vector<std::vector<int>>>();
    if (j.at("r").get<int>() != static_cast<int>(rows.size()))
        throw std::invalid_argument("r does not match row count");
    F = BalancedMatrix(std::move(rows));
}

}  // namespace mpr
