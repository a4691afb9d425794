#pragma once

#include <vector>

#include "kroncalc/lattice.hpp"

namespace kroncalc {

// Ordered list of positions into the distinct vectors of a ReducedSystem.
// The order is the residue order.
using OrderedBasis = std::vector<long>;

// Precomputed incidence of the distinct vectors with the admissible hyperplanes.
class OSArrangement {
public:
    OSArrangement(const ReducedSystem& sys, IntMat hyperplanes);

    const IntMat& hyperplanes() const { return hyperplanes_; }
    const ReducedSystem& system() const { return *sys_; }

    // all OS bases, nested-flag recursion without the side condition
    std::vector<OrderedBasis> all() const;
    // OS bases whose open cone contains v; throws NotRegular if v lies on a hyperplane inside Cone(Psi)
    std::vector<OrderedBasis> adapted(const RatVec& v) const;

private:
    void recurse(long s, std::vector<long>& chosen, const std::vector<long>& idx, const std::vector<int>* vsign,
                 std::vector<OrderedBasis>& out) const;
    bool flags_span(const std::vector<long>& chosen) const;

    const ReducedSystem* sys_;
    IntMat hyperplanes_;
    std::vector<std::vector<signed char>> side_;  // side_[h][i] = sign <vector i, H_h>
};

std::vector<OrderedBasis> os_bases(const ReducedSystem& sys, const IntMat& hyperplanes);
std::vector<OrderedBasis> adapted_os_bases(const ReducedSystem& sys, const RatVec& v, const IntMat& hyperplanes);

// Direct definition check over all index subsets (validation at small scale).
std::vector<OrderedBasis> os_bases_bruteforce(const ReducedSystem& sys);

// coefficients of v in the basis; all positive iff v is in the open cone
RatVec cone_coefficients(const ReducedSystem& sys, const OrderedBasis& b, const RatVec& v);

}  // namespace kroncalc
