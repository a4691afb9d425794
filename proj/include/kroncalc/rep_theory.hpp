#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "kroncalc/lattice.hpp"
#include "kroncalc/quasipoly.hpp"
#include "kroncalc/residue.hpp"

namespace kroncalc {

using Perm = std::vector<int>;

struct UnitaryGroupData {
    int n = 0;
    IntMat positive_roots;  // e_i - e_j, i < j
    IntVec rho;             // (n-1, ..., 0)
    static UnitaryGroupData make(int n);
};

// every permutation of 0..n-1 with its sign, lexicographic order
std::vector<std::pair<Perm, int>> symmetric_group(int n);
int perm_sign(const Perm& w);

// K = prod U(n_i) inside U(M) via the tensor product of the C^{n_i} (M = prod n_i),
// or the maximal torus of U(M) when torus is set.
struct RestrictedRoots {
    std::vector<int> blocks;
    bool torus = false;
    long M = 0;
    long kdim = 0;                  // sum of the block ranks
    IntMat positions;               // row p: K-weight of the p-th basis vector of C^M
    IntVec X;                       // splitting element on the K coordinates
    IntVec embedded_X;              // its values on the basis vectors, strictly decreasing
    IntMat psi;                     // restrictions of e_p - e_q, p < q, in that order
    std::vector<std::pair<int, int>> pairs;
    IntMat k_roots;                 // positive roots of K on the K coordinates

    IntVec restrict_weight(const IntVec& g_weight) const;
    RatVec restrict_weight(const RatVec& g_weight) const;
    WeightSystem system() const;    // psi in Z^kdim
};

RestrictedRoots restricted_roots(const std::vector<int>& blocks);
RestrictedRoots torus_roots(long M);

struct LeviData {
    std::vector<std::vector<int>> runs;        // positions grouped into Σ-blocks, in order
    IntMat sigma_roots;                         // simple roots e_i - e_{i+1} inside a run
    std::vector<std::pair<int, int>> du_pairs;  // (a, b), a < b in different runs
    Integer coset_count;
};

// runs: maximal equal runs of lambda; without the rectangular hint positions below `active`
// stay singletons and only the tail from `active` on is merged
LeviData levi_data(const IntVec& lambda, long active, bool rectangular);

// minimal length coset representatives: w[a] = image of position a, increasing on every run.
// The callback returns false to stop.
void for_each_coset(const LeviData& L, long M, const std::function<bool(const Perm&)>& f);

struct Polarized {
    IntMat psi;  // polarized restrictions (K coordinates), <., X> > 0
    int flips = 0;
    IntVec shift;  // g: sum of the flipped (negative) restrictions
};

// restrictions of e_{w(a)} - e_{w(b)} over the pairs, made X-positive; NonregularX on a zero pairing
Polarized polarize(const Perm& w, const std::vector<std::pair<int, int>>& pairs, const RestrictedRoots& rr);

struct InteriorPoint {
    RatVec g_part;  // dominant, constant on runs (G coordinates)
    RatVec k_part;  // concatenated block spectra (K coordinates)
};

// marginals of a random Hermitian matrix with spectrum constant on the runs, rounded to 1/denominator
InteriorPoint random_interior_point(const RestrictedRoots& rr, const LeviData& L, std::uint64_t seed,
                                    long denominator = 1000000);

struct BranchingOptions {
    EngineOptions engine;
    std::uint64_t seed = 1;
    long q_override = 0;
    long cap = 100000000L;
    bool rectangular = false;   // enlarge the Levi set to all equal runs
    long active = -1;           // coordinates kept as singletons; -1: up to the last nonzero entry
    bool prefilter = true;      // skip cosets whose point lies outside the cone
};

struct BranchingResult {
    Integer value = 0;
    QuasiPolynomial quasi;      // dilated: period q as used
    long q = 1;
    long cosets = 0;
    long valid_cosets = 0;
    long terms_total = 0;
    long terms_evaluated = 0;
};

// multiplicity of V_mu (K) in V_lambda (U(M)); mu as concatenated block weights
BranchingResult branching_multiplicity(const RestrictedRoots& rr, const IntVec& lambda, const IntVec& mu,
                                       bool dilated, const BranchingOptions& opt = {});

struct KroneckerResult {
    BranchingResult detail;
    bool dilated = false;
    Integer value = 0;
    QuasiPolynomial quasi;
};

// g(nu_1, ..., nu_s) for U(dims[0]) x ... ; dilated: k -> g(k nu_1, ..., k nu_s)
KroneckerResult kronecker(const std::vector<int>& dims, const std::vector<IntVec>& partitions, bool dilated,
                          const BranchingOptions& opt = {});

// interior degree dim H - |Δk+| - (sum n_i - (s - 1)); with a facet normal on the concatenated
// coordinates, |Ψ0| - |Δ0+| - (dim t - 1) restricted to the normal
long expected_degree(const std::vector<int>& dims, const IntVec& facet_normal = {});

}  // namespace kroncalc
