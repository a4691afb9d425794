#pragma once

#include <memory>
#include <unordered_map>
#include <vector>

#include "kroncalc/linalg.hpp"

namespace kroncalc {

// Number of ways to write mu as a nonnegative integer combination of the vectors (memoized DP).
class PartitionCounter {
public:
    // functional: strictly positive on every vector; found automatically when empty
    explicit PartitionCounter(IntMat vectors, IntVec functional = {});
    Integer count(const IntVec& mu);
    const IntVec& functional() const { return X_; }

private:
    struct Hash {
        size_t operator()(const IntVec& v) const;
    };
    IntMat psi_;
    IntVec X_;
    std::vector<std::vector<signed char>> sign_;  // per suffix start, per coordinate: 1 >=0, -1 <=0, 0 zero, 2 any
    std::vector<std::unordered_map<IntVec, Integer, Hash>> memo_;
    Integer rec(size_t i, const IntVec& v);
    bool feasible(size_t i, const IntVec& v) const;
};

// throws UnboundedCone when no positive functional exists, Input on a zero vector
Integer partition_count_dp(const IntMat& psi, const IntVec& mu);

// sum_w eps(w) P(lambda + rho - w rho); the Weyl group is generated by the reflections in the roots
Integer multiplicity_K_bruteforce(const IntMat& psi, const IntMat& positive_roots, const IntVec& rho,
                                  const IntVec& lambda);

// Kronecker coefficient by alternating sums of contingency-table counts; CapExceeded above the content cap
Integer kronecker_bruteforce(const std::vector<int>& dims, const std::vector<IntVec>& partitions, long cap = 12);

// Multiplicity of the K-module mu in the U(M)-module lambda. K = prod U(n_i) acting on the tensor product
// of the C^{n_i} (prod n_i = M), or the maximal torus when block_ranks is M ones.
// mu is given as the concatenated block weights.
Integer kostant_branching_bruteforce(int M, const std::vector<int>& block_ranks, const IntVec& lambda,
                                     const IntVec& mu, int max_rank = 6);

// Orbit of a vector under the group generated by root reflections, with the sign of the group element.
std::vector<std::pair<IntVec, int>> reflection_orbit(const IntVec& v, const IntMat& roots);

}  // namespace kroncalc
