#pragma once

#include <functional>
#include <ostream>
#include <vector>

#include "kroncalc/cyclotomic.hpp"
#include "kroncalc/lattice.hpp"
#include "kroncalc/os_bases.hpp"
#include "kroncalc/polynomial.hpp"
#include "kroncalc/quasipoly.hpp"

namespace kroncalc {

// sign * e^{<a + k b, z>} prod_beta (1 - e^{-<beta,z>}) / prod_psi (1 - e^{-<psi,z>}),
// all vectors in reduced lattice coordinates. With linear = true every factor
// (1 - e^{-<v,z>}) is replaced by <v,z> (volume kernels).
struct ResidueKernel {
    IntVec a;
    IntVec b;  // dilation direction, empty for a plain number
    IntMat numerators;
    IntMat denominators;  // repeated according to multiplicity
    int sign = 1;
    bool linear = false;
};

struct ResidueJob {
    ResidueKernel kernel;
    std::vector<IntMat> bases;  // ordered bases, residue order = row order
};

enum class FieldKind { Exact, Modular };

struct EngineOptions {
    FieldKind field = FieldKind::Modular;
    bool prune = true;   // skip terms with an empty pole level
    int threads = 0;     // 0: KRONCALC_THREADS or 1
    std::ostream* diagnostics = nullptr;  // per-term log
};

struct ResidueInput {
    long rank = 0;
    long q = 1;
    std::vector<IntVec> torsion;  // q*theta mod q
    std::vector<ResidueJob> jobs;
    bool dilated = false;
};

struct ResidueOutput {
    Rational value;        // plain mode
    QuasiPolynomial quasi;  // dilated mode, period q (not reduced)
    long terms_total = 0;
    long terms_evaluated = 0;  // survived pruning
    int primes_used = 0;
};

ResidueOutput evaluate_residues(const ResidueInput& in, const EngineOptions& opt = {});

// Single term Res_sigma at the torsion point theta (given as q*theta), exact arithmetic.
Cyclotomic iterated_residue(const IntMat& sigma, const ResidueKernel& kernel, const IntVec& theta, long q,
                            bool prune = true);
// Dilated single term: cosets[c][d] = coefficient of k^d for k = c mod q.
std::vector<std::vector<Cyclotomic>> iterated_residue_dilated(const IntMat& sigma, const ResidueKernel& kernel,
                                                              const IntVec& theta, long q);
// Independent slow path: full multivariate Laurent expansion, plain mode only.
Cyclotomic iterated_residue_reference(const IntMat& sigma, const ResidueKernel& kernel, const IntVec& theta, long q);

// Integer value of a plain sum; NotRational / NegativeMultiplicity on inconsistency.
Integer assemble_count(const Rational& v);
// Exact merge of per-coset contributions into a quasi-polynomial, checked rational.
QuasiPolynomial assemble(long q, const std::vector<std::vector<Cyclotomic>>& cosets);

struct MultiplicityOptions {
    EngineOptions engine;
    RatVec direction;  // ambient deformation direction for singular points; empty = automatic
    long q_override = 0;
    long cap = 100000000L;
};

// Kostant partition function of the system at mu, or k -> P(k mu).
Integer multiplicity_T(const WeightSystem& psi, const IntVec& mu, const MultiplicityOptions& opt = {});
QuasiPolynomial multiplicity_T_dilated(const WeightSystem& psi, const IntVec& mu, const MultiplicityOptions& opt = {});

// Multiplicity of the irreducible K-module of highest weight lambda in Sym(H); positive_roots in ambient coordinates.
Integer multiplicity_K(const WeightSystem& psi, const IntMat& positive_roots, const IntVec& lambda,
                       const MultiplicityOptions& opt = {});
QuasiPolynomial multiplicity_K_dilated(const WeightSystem& psi, const IntMat& positive_roots, const IntVec& lambda,
                                       const MultiplicityOptions& opt = {});

// t -> dh(t * ray); positive_roots empty for the torus measure.
UniPoly dh_volume(const WeightSystem& psi, const IntMat& positive_roots, const RatVec& ray,
                  const MultiplicityOptions& opt = {});

}  // namespace kroncalc
