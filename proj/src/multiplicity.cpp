#include <algorithm>
#include <numeric>
#include <optional>

#include "kroncalc/errors.hpp"
#include "kroncalc/residue.hpp"

namespace kroncalc {

namespace {

struct Prepared {
    ReducedSystem R;
    IntMat normals;
    IntMat denominators;  // reduced, with multiplicity
};

Prepared prepare(const WeightSystem& psi) {
    Prepared P{reduce_system(psi), {}, {}};
    if (P.R.positive_functional.empty())
        throw Error(ErrorKind::UnboundedCone, "weights of " + (psi.label.empty() ? std::string("the system") : psi.label) +
                                                  " do not lie in an open half-space");
    P.normals = admissible_hyperplanes(P.R);
    for (size_t i = 0; i < P.R.vectors.size(); ++i)
        for (long m = 0; m < P.R.multiplicity[i]; ++m) P.denominators.push_back(P.R.vectors[i]);
    return P;
}

bool in_span(const WeightSystem& psi, const IntVec& v) {
    IntMat m = psi.weights;
    m.push_back(v);
    return rank(m) == rank(psi.weights);
}

bool in_span(const WeightSystem& psi, const RatVec& v) {
    Integer den = 1;
    for (const auto& x : v) den = lcm(den, Integer(x.get_den()));
    IntVec iv;
    for (const auto& x : v) iv.push_back(Rational(x * den).get_num().get_si());
    return in_span(psi, iv);
}

// reduced lattice coordinates, or nullopt when the weight is off lattice ∩ span
std::optional<IntVec> reduce_weight(const WeightSystem& psi, const Prepared& P, const IntVec& w) {
    if (w.size() != static_cast<size_t>(P.R.ambient_dim)) throw Error(ErrorKind::Input, "weight has the wrong length");
    if (!psi.lattice.contains(w) || !in_span(psi, w)) return std::nullopt;
    return P.R.reduce_lattice(w, psi.lattice);
}

// v itself if regular, else v pushed slightly along the requested direction or a fallback one
// roots: reduced positive roots; a sum of them is added to every automatic direction so that
// deformations land on the dominant side of the walls
RatVec regular_point(const Prepared& P, const RatVec& v, const MultiplicityOptions& opt, const IntMat& roots = {}) {
    bool regular = true;
    for (const auto& X : P.normals)
        if (sgn(dot(X, v)) == 0) regular = false;
    if (regular) return v;
    std::vector<RatVec> dirs;
    if (!opt.direction.empty()) dirs.push_back(P.R.reduce(opt.direction));
    // sum of the weights lies in the interior of the cone; then skewed sums
    for (long skew = 0; skew < 8; ++skew) {
        RatVec d(P.R.rank);
        for (size_t i = 0; i < P.R.vectors.size(); ++i)
            for (long c = 0; c < P.R.rank; ++c)
                d[c] += Rational(1 + static_cast<long>(skew * i * i % 7), 1) * P.R.vectors[i][c];
        // the root sum only breaks ties on walls containing the weight sum
        Rational lo = 0, hi = 1;
        IntVec rs(P.R.rank, 0);
        for (const auto& a : roots)
            for (long c = 0; c < P.R.rank; ++c) rs[c] += a[c];
        for (const auto& X : P.normals) {
            Rational x = abs(dot(X, d));
            if (sgn(x) != 0 && (sgn(lo) == 0 || x < lo)) lo = x;
            hi = std::max(hi, Rational(std::labs(dot(X, rs)) + 1));
        }
        if (sgn(lo) == 0) lo = 1;
        for (long c = 0; c < P.R.rank; ++c) d[c] += lo / (2 * hi) * rs[c];
        dirs.push_back(d);
    }
    for (const auto& d : dirs) {
        try {
            return deform_point(v, d, P.normals);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::DirectionSingular) throw;
        }
    }
    throw Error(ErrorKind::DirectionSingular, "no deformation direction found");
}

std::vector<IntMat> bases_for(const Prepared& P, const RatVec& v) {
    std::vector<IntMat> out;
    for (const auto& b : adapted_os_bases(P.R, v, P.normals)) {
        IntMat m;
        for (long i : b) m.push_back(P.R.vectors[i]);
        out.push_back(m);
    }
    return out;
}

ResidueOutput run(const Prepared& P, ResidueKernel kernel, std::vector<IntMat> bases, bool dilated,
                  const MultiplicityOptions& opt) {
    auto idx = system_index_data(P.R, opt.cap, opt.q_override);
    ResidueInput in;
    in.rank = P.R.rank;
    in.q = idx.q;
    in.torsion = idx.torsion;
    in.dilated = dilated;
    in.jobs.push_back({std::move(kernel), std::move(bases)});
    return evaluate_residues(in, opt.engine);
}

IntMat reduce_roots(const WeightSystem& psi, const Prepared& P, const IntMat& roots) {
    IntMat out;
    for (const auto& a : roots) {
        auto r = reduce_weight(psi, P, a);
        if (!r) throw Error(ErrorKind::Input, "root is not in the lattice spanned by the weights");
        out.push_back(*r);
    }
    return out;
}

IntVec root_sum(const IntMat& roots, long r) {
    IntVec s(r, 0);
    for (const auto& a : roots)
        for (long c = 0; c < r; ++c) s[c] += a[c];
    return s;
}

}  // namespace

Integer multiplicity_T(const WeightSystem& psi, const IntVec& mu, const MultiplicityOptions& opt) {
    Prepared P = prepare(psi);
    auto v = reduce_weight(psi, P, mu);
    if (!v) return 0;
    auto bases = bases_for(P, regular_point(P, to_rat(*v), opt));
    if (bases.empty()) return 0;
    ResidueKernel k;
    k.a = *v;
    k.denominators = P.denominators;
    return assemble_count(run(P, k, bases, false, opt).value);
}

QuasiPolynomial multiplicity_T_dilated(const WeightSystem& psi, const IntVec& mu, const MultiplicityOptions& opt) {
    Prepared P = prepare(psi);
    auto v = reduce_weight(psi, P, mu);
    if (!v) throw Error(ErrorKind::Input, "dilation direction is not in the lattice spanned by the weights");
    auto bases = bases_for(P, regular_point(P, to_rat(*v), opt));
    if (bases.empty()) return QuasiPolynomial::constant(0);
    ResidueKernel k;
    k.a = IntVec(P.R.rank, 0);
    k.b = *v;
    k.denominators = P.denominators;
    return run(P, k, bases, true, opt).quasi.reduced();
}

Integer multiplicity_K(const WeightSystem& psi, const IntMat& positive_roots, const IntVec& lambda,
                       const MultiplicityOptions& opt) {
    Prepared P = prepare(psi);
    auto v = reduce_weight(psi, P, lambda);
    if (!v) return 0;
    ResidueKernel k;
    k.numerators = reduce_roots(psi, P, positive_roots);
    auto bases = bases_for(P, regular_point(P, to_rat(*v), opt, k.numerators));
    if (bases.empty()) return 0;
    IntVec s = root_sum(k.numerators, P.R.rank);
    k.a = *v;
    for (long c = 0; c < P.R.rank; ++c) k.a[c] += s[c];
    k.denominators = P.denominators;
    k.sign = k.numerators.size() % 2 ? -1 : 1;
    return assemble_count(run(P, k, bases, false, opt).value);
}

QuasiPolynomial multiplicity_K_dilated(const WeightSystem& psi, const IntMat& positive_roots, const IntVec& lambda,
                                       const MultiplicityOptions& opt) {
    Prepared P = prepare(psi);
    auto v = reduce_weight(psi, P, lambda);
    if (!v) throw Error(ErrorKind::Input, "dilation direction is not in the lattice spanned by the weights");
    ResidueKernel k;
    k.numerators = reduce_roots(psi, P, positive_roots);
    auto bases = bases_for(P, regular_point(P, to_rat(*v), opt, k.numerators));
    if (bases.empty()) return QuasiPolynomial::constant(0);
    k.a = root_sum(k.numerators, P.R.rank);
    k.b = *v;
    k.denominators = P.denominators;
    k.sign = k.numerators.size() % 2 ? -1 : 1;
    return run(P, k, bases, true, opt).quasi.reduced();
}

UniPoly dh_volume(const WeightSystem& psi, const IntMat& positive_roots, const RatVec& ray,
                  const MultiplicityOptions& opt) {
    Prepared P = prepare(psi);
    if (ray.size() != static_cast<size_t>(P.R.ambient_dim)) throw Error(ErrorKind::Input, "ray has the wrong length");
    if (!in_span(psi, ray)) return {};
    RatVec r = P.R.reduce(ray);
    Integer m = 1;
    for (const auto& x : r) m = lcm(m, Integer(x.get_den()));
    IntVec b;
    for (const auto& x : r) b.push_back(Rational(x * m).get_num().get_si());
    IntMat roots = reduce_roots(psi, P, positive_roots);
    auto bases = bases_for(P, regular_point(P, to_rat(b), opt, roots));
    if (bases.empty()) return {};
    ResidueKernel k;
    k.linear = true;
    // derivatives along the negative roots: one sign per root
    k.sign = roots.size() % 2 ? -1 : 1;
    k.a = IntVec(P.R.rank, 0);
    k.b = b;
    k.denominators = P.denominators;
    k.numerators = roots;
    ResidueInput in;
    in.rank = P.R.rank;
    in.q = 1;
    in.torsion = {IntVec(P.R.rank, 0)};
    in.dilated = true;
    in.jobs.push_back({k, bases});
    auto out = evaluate_residues(in, opt.engine);
    return out.quasi.coset(0).compose_affine(Rational(1) / Rational(m), 0);
}

}  // namespace kroncalc
