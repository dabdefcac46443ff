#ifndef MPRANGE_WALK_ORACLE_HPP
#define MPRANGE_WALK_ORACLE_HPP

// Ground truth for the multiple point range N_{2k}: exhaustive enumeration of
// short planar walks (exact big-integer aggregates) and seeded Monte Carlo
// sampling of long ones.  Multiplicity is the edge-incidence count: a closed
// walk of length L occupies the cyclic time set {1..L}, so every visit counts
// twice; an open walk counts interior visits twice and each endpoint once.

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "mprange/moments.hpp"

namespace mpr {

struct SeedSpec {
    std::uint64_t root_seed = 0;
    long long samples = 0;
};

// Monte Carlo aggregates of N_{2k} for k = 1..kmax: means with batch-means
// standard errors (64 fixed streams), raw power sums up to order 4, and the
// derived central moments.
struct WalkStats {
    WalkClass cls = WalkClass::closed;
    long long length = 0;  // number of steps
    long long samples = 0;
    int kmax = 0;
    std::vector<double> mean, se;                // index k-1
    std::vector<std::array<double, 4>> raw;      // E[N^j], j = 1..4
    std::vector<std::array<double, 3>> central;  // orders 2..4

    std::string csv() const;
};

// Exact aggregates over all closed walks of length L from the origin.
struct ClosedEnumeration {
    int L = 0;
    mpz_class walks;
    std::vector<mpz_class> sum_N;         // index k-1: sum_w N_{2k}(w), k <= kmax
    std::vector<mpz_class> product_sums;  // per requested k-vector
    std::vector<mpz_class> fixed_counts;  // per requested (y,k): #walks with mu(y)=2k
};

ClosedEnumeration enumerate_closed(
    int L, int kmax, const std::vector<std::vector<int>>& product_ks = {},
    const std::vector<std::pair<std::array<int, 2>, int>>& fixed_queries = {});

// Exact aggregates over all 4^n open walks of length n.
struct UnrestrictedEnumeration {
    int n = 0;
    mpz_class walks;
    std::vector<mpz_class> sum_N;  // index k-1
};

UnrestrictedEnumeration enumerate_unrestricted(int n, int kmax);

// Uniform closed walks of length 2n by the diagonal decomposition: u = x+y and
// v = x-y are independent one-dimensional bridges, shuffled exactly.
WalkStats mc_closed(int n, const SeedSpec& seed, int kmax = 6);

// Plain uniform sampling of open walks of length n.
WalkStats mc_unrestricted(int n, const SeedSpec& seed, int kmax = 6);

}  // namespace mpr

#endif
