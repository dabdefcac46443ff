#ifndef MPRANGE_GRAPH_ENUM_HPP
#define MPRANGE_GRAPH_ENUM_HPP

// Enumeration of balanced nonnegative integer matrices (adjacency matrices of
// Eulerian multidigraphs) and their combinatorial weights.  A matrix F is
// balanced when every row sum equals the matching column sum; together with a
// nonzero cofactor of A - F (A the diagonal degree matrix) this makes F the
// adjacency matrix of a strongly connected multidigraph carrying an Euler
// circuit.  The weights are the cofactor itself (arborescence count), the
// multiplicity weight prod 1/F_{i,j}! and the Euler circuit count.

#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <nlohmann/json.hpp>

namespace mpr {

// Zero-diagonal balanced matrix.  degrees[i] is the common row/column sum.
struct BalancedMatrix {
    int r = 0;
    std::vector<std::vector<int>> rows;

    BalancedMatrix() = default;
    explicit BalancedMatrix(std::vector<std::vector<int>> entries);

    std::vector<int> degrees() const;
    int at(int i, int j) const { return rows[i][j]; }
    bool operator==(const BalancedMatrix& o) const { return rows == o.rows; }
    bool operator<(const BalancedMatrix& o) const { return rows < o.rows; }
};

// Balanced matrix that may carry diagonal (loop) entries; produced by dam
// reduction.  Degrees count off-diagonal entries only.
struct LoopyMatrix {
    int r = 0;
    std::vector<std::vector<int>> rows;

    LoopyMatrix() = default;
    explicit LoopyMatrix(std::vector<std::vector<int>> entries);

    std::vector<int> degrees() const;  // off-diagonal row sums
    bool operator==(const LoopyMatrix& o) const { return rows == o.rows; }
};

struct GraphWeights {
    long long cof = 0;      // cofactor of A - F
    mpq_class mult;         // M(F) = prod 1/F_{i,j}!
    mpz_class trails;       // Euler circuits with a designated first edge
};

// All matrices in H~_r(h) = {F balanced, zero diagonal, cof(A-F) != 0} in
// lexicographic row-major order.  Strong connectivity is checked structurally
// (Tarjan) and cross-checked against cof != 0.
std::vector<BalancedMatrix> enumerate_balanced(int r, const std::vector<int>& h);

// Any cofactor of A - F with A = diag(off-diagonal degrees).  All cofactors
// agree for balanced matrices; computed exactly (fraction-free elimination).
long long cofactor(const BalancedMatrix& F);
long long cofactor(const LoopyMatrix& F);

mpq_class mult_weight(const BalancedMatrix& F);
mpq_class mult_weight(const LoopyMatrix& F);

// Lift the smallest-index dam (off-diagonal degree 1) out of F:
// (F_ld)_{i,j} = F_{i',j'} + F_{i',i0} * F_{i0,j'}.  Loop entries may appear.
LoopyMatrix reduce_dam(const BalancedMatrix& F);
LoopyMatrix reduce_dam(const LoopyMatrix& F);

// Euler circuit count with a designated start edge fixed first (BEST theorem):
// cof(A - F) * prod_i (h_i - 1)!.
mpz_class euler_circuit_count(const BalancedMatrix& F);

// Exhaustive Euler circuit search treating parallel edges as distinguishable,
// anchored at the lexicographically first edge.  Oracle for small graphs.
mpz_class euler_circuit_count_brute(const BalancedMatrix& F);

bool strongly_connected(const BalancedMatrix& F);
GraphWeights graph_weights(const BalancedMatrix& F);

void to_json(nlohmann::json& j, const BalancedMatrix& F);
void from_json(const nlohmann::json& j, BalancedMatrix& F);

}  // namespace mpr

#endif
