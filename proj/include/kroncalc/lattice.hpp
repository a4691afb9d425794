#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kroncalc/linalg.hpp"

namespace kroncalc {

// Lattice spanned by integer generators inside Z^n.
class Lattice {
public:
    Lattice() = default;
    static Lattice standard(long n);
    static Lattice generated_by(const IntMat& gens);

    long rank() const { return static_cast<long>(basis_.size()); }
    long ambient_dim() const { return n_; }
    const IntMat& basis() const { return basis_; }

    bool contains(const IntVec& v) const;
    // coordinates in basis(); throws Input for vectors outside the lattice
    IntVec coords(const IntVec& v) const;
    // rational coordinates of a vector in the real span
    RatVec coords(const RatVec& v) const;

private:
    long n_ = 0;
    IntMat basis_;
    std::vector<long> pivots_;  // columns where basis_ restricted is invertible
};

struct WeightSystem {
    IntMat weights;  // ambient coordinates, order significant
    Lattice lattice;
    std::string label;
};

// Distinct weights of a system in the coordinates of a basis of (lattice ∩ span).
struct ReducedSystem {
    long rank = 0;
    long ambient_dim = 0;
    IntMat vectors;                   // distinct weights, first-occurrence order
    std::vector<long> multiplicity;   // per distinct weight
    std::vector<long> index_of;       // original position -> distinct index
    RatMat coord_map;                 // rank x ambient_dim, exact on the span
    IntVec positive_functional;       // <X, v> > 0 on every vector; empty if none found

    RatVec reduce(const RatVec& ambient) const;
    // throws Input if the vector is outside lattice ∩ span
    IntVec reduce_lattice(const IntVec& ambient, const Lattice& lat) const;
    long find(const IntVec& reduced) const;  // distinct index or -1
};

ReducedSystem reduce_system(const WeightSystem& sys);

// Strictly positive functional on all vectors, or empty (perceptron with an iteration cap).
IntVec find_positive_functional(const IntMat& vectors, long max_iter = 200000);

// Elementary divisors of lattice / span(vectors); throws RankDeficient.
std::vector<Integer> elementary_divisors(const IntMat& vectors, const Lattice& lattice);

struct IndexData {
    long q = 1;
    long determinant_evaluations = 0;
    // torsion points theta with <beta_i, theta> in Z for some basis beta of distinct vectors,
    // stored as q*theta mod q
    std::vector<IntVec> torsion;
    bool full_grid = false;  // q supplied by the caller: torsion is all of (Z/q)^r
};

// lcm of d_sigma over bases sigma of the distinct vectors; cap on determinant evaluations
IndexData system_index_data(const ReducedSystem& sys, long cap = 100000000L, long q_override = 0);
long system_index(const WeightSystem& sys, long cap = 100000000L);

// Primitive normals of hyperplanes spanned by distinct vectors, sorted.
IntMat admissible_hyperplanes(const ReducedSystem& sys, bool use_cache = true);
// same, expressed as functionals on the ambient coordinates (positive multiples of the reduced ones)
IntMat admissible_hyperplanes(const WeightSystem& sys);
IntMat ambient_normals(const ReducedSystem& sys, const IntMat& normals);

// Stable 64-bit content hash of the sorted distinct vectors and the coordinate map.
std::uint64_t arrangement_key(const ReducedSystem& sys);

struct Tope {
    std::vector<int> signs;  // +1 / -1 per hyperplane
    RatVec witness;
    bool operator==(const Tope& o) const { return signs == o.signs; }
};

// throws NotRegular listing the vanishing normals
Tope tope_of(const RatVec& v, const IntMat& normals);

// Functional (xi, nu) -> <X, restrict(w xi) - nu> for a permutation w of the G-coordinates.
struct BranchingHyperplane {
    IntVec X;
    std::vector<int> w;  // w[p] = image of position p
};

// positions: row p is the K-weight of the p-th basis vector of C^M (ambient K coordinates)
std::vector<BranchingHyperplane> branching_family(const IntMat& normals, const std::vector<std::vector<int>>& perms,
                                                  const IntMat& positions, const ReducedSystem& sys,
                                                  long cap = 1000000);
Rational branching_pairing(const BranchingHyperplane& h, const RatVec& xi, const RatVec& nu,
                           const IntMat& positions, const ReducedSystem& sys);

struct Deformed {
    RatVec xi, nu;
    std::vector<int> signs;  // per family member
    Rational t;
};

// (xi, nu) + t*(e1, e2) with every nonzero pairing keeping its sign; throws DirectionSingular
Deformed deform_to_regular(const RatVec& xi, const RatVec& nu, const std::vector<BranchingHyperplane>& family,
                           const RatVec& e1, const RatVec& e2, const IntMat& positions, const ReducedSystem& sys);

// Per-term helper used by the pipelines: point v + t*d regular for every normal.
// Returns v + t*d with |t <d, X>| < 1/2 for all normals; throws DirectionSingular.
RatVec deform_point(const RatVec& v, const RatVec& d, const IntMat& normals);

}  // namespace kroncalc
