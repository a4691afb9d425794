#include "kroncalc/rep_theory.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <numeric>
#include <random>

#include "kroncalc/errors.hpp"
#include "kroncalc/os_bases.hpp"

namespace kroncalc {

UnitaryGroupData UnitaryGroupData::make(int n) {
    UnitaryGroupData d;
    d.n = n;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            IntVec a(n, 0);
            a[i] = 1;
            a[j] = -1;
            d.positive_roots.push_back(a);
        }
    for (int i = 0; i < n; ++i) d.rho.push_back(n - 1 - i);
    return d;
}

int perm_sign(const Perm& w) {
    int s = 1;
    for (size_t i = 0; i < w.size(); ++i)
        for (size_t j = i + 1; j < w.size(); ++j)
            if (w[i] > w[j]) s = -s;
    return s;
}

std::vector<std::pair<Perm, int>> symmetric_group(int n) {
    Perm w(n);
    std::iota(w.begin(), w.end(), 0);
    std::vector<std::pair<Perm, int>> out;
    do out.emplace_back(w, perm_sign(w));
    while (std::next_permutation(w.begin(), w.end()));
    return out;
}

IntVec RestrictedRoots::restrict_weight(const IntVec& g) const {
    IntVec out(kdim, 0);
    for (long p = 0; p < M; ++p)
        if (g[p] != 0)
            for (long c = 0; c < kdim; ++c) out[c] += g[p] * positions[p][c];
    return out;
}

RatVec RestrictedRoots::restrict_weight(const RatVec& g) const {
    RatVec out(kdim);
    for (long p = 0; p < M; ++p)
        if (sgn(g[p]) != 0)
            for (long c = 0; c < kdim; ++c)
                if (positions[p][c] != 0) out[c] += g[p] * positions[p][c];
    return out;
}

WeightSystem RestrictedRoots::system() const {
    std::string label = torus ? "torus" : "blocks";
    for (int n : blocks) label += " " + std::to_string(n);
    return {psi, Lattice::standard(kdim), label};
}

namespace {

void fill_roots(RestrictedRoots& rr) {
    for (long p = 0; p < rr.M; ++p) rr.embedded_X.push_back(dot(rr.X, rr.positions[p]));
    for (long p = 0; p + 1 < rr.M; ++p)
        if (rr.embedded_X[p] <= rr.embedded_X[p + 1]) throw Error(ErrorKind::NonregularX, "splitting element is not regular");
    for (long p = 0; p < rr.M; ++p)
        for (long q = p + 1; q < rr.M; ++q) {
            IntVec d(rr.kdim);
            for (long c = 0; c < rr.kdim; ++c) d[c] = rr.positions[p][c] - rr.positions[q][c];
            rr.psi.push_back(d);
            rr.pairs.emplace_back(static_cast<int>(p), static_cast<int>(q));
        }
    long off = 0;
    for (int n : rr.blocks) {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                IntVec a(rr.kdim, 0);
                a[off + i] = 1;
                a[off + j] = -1;
                rr.k_roots.push_back(a);
            }
        off += n;
    }
}

}  // namespace

RestrictedRoots restricted_roots(const std::vector<int>& blocks) {
    if (blocks.size() < 2) throw Error(ErrorKind::Input, "need at least two blocks");
    RestrictedRoots rr;
    rr.blocks = blocks;
    rr.M = 1;
    for (int n : blocks) {
        if (n < 1) throw Error(ErrorKind::Input, "block ranks must be positive");
        rr.M *= n;
        rr.kdim += n;
    }
    // first index fastest
    for (long p = 0; p < rr.M; ++p) {
        IntVec v(rr.kdim, 0);
        long x = p, off = 0;
        for (int n : blocks) {
            v[off + x % n] = 1;
            x /= n;
            off += n;
        }
        rr.positions.push_back(v);
    }
    // X_1 = (n_1, ..., 1), X_j = ((n_j - 1 - t) P_j + 1)_t with P_j the product of the earlier ranks
    long P = 1, off = 0;
    for (size_t j = 0; j < blocks.size(); ++j) {
        for (int t = 0; t < blocks[j]; ++t) rr.X.push_back(j == 0 ? blocks[0] - t : (blocks[j] - 1 - t) * P + 1);
        P *= blocks[j];
        off += blocks[j];
    }
    fill_roots(rr);
    return rr;
}

RestrictedRoots torus_roots(long M) {
    if (M < 1) throw Error(ErrorKind::Input, "rank must be positive");
    RestrictedRoots rr;
    rr.torus = true;
    rr.blocks.assign(M, 1);
    rr.M = rr.kdim = M;
    for (long p = 0; p < M; ++p) {
        IntVec v(M, 0);
        v[p] = 1;
        rr.positions.push_back(v);
        rr.X.push_back(M - p);
    }
    fill_roots(rr);
    return rr;
}

LeviData levi_data(const IntVec& lambda, long active, bool rectangular) {
    long M = static_cast<long>(lambda.size());
    for (long i = 0; i + 1 < M; ++i)
        if (lambda[i] < lambda[i + 1]) throw Error(ErrorKind::Input, "lambda is not dominant");
    if (active < 0 || rectangular) active = 0;
    LeviData L;
    long i = 0;
    for (; i < std::min(active, M); ++i) L.runs.push_back({static_cast<int>(i)});
    while (i < M) {
        long j = i;
        while (j + 1 < M && lambda[j + 1] == lambda[i]) ++j;
        std::vector<int> run;
        for (long a = i; a <= j; ++a) run.push_back(static_cast<int>(a));
        for (long a = i; a < j; ++a) {
            IntVec r(M, 0);
            r[a] = 1;
            r[a + 1] = -1;
            L.sigma_roots.push_back(r);
        }
        L.runs.push_back(run);
        i = j + 1;
    }
    std::vector<int> run_of(M);
    for (size_t k = 0; k < L.runs.size(); ++k)
        for (int a : L.runs[k]) run_of[a] = static_cast<int>(k);
    for (int a = 0; a < M; ++a)
        for (int b = a + 1; b < M; ++b)
            if (run_of[a] != run_of[b]) L.du_pairs.emplace_back(a, b);
    Integer c = 1;
    long used = 0;
    for (const auto& r : L.runs) {
        for (size_t k = 1; k <= r.size(); ++k) c = c * Integer(used + static_cast<long>(k)) / Integer(static_cast<long>(k));
        used += static_cast<long>(r.size());
    }
    L.coset_count = c;
    return L;
}

void for_each_coset(const LeviData& L, long M, const std::function<bool(const Perm&)>& f) {
    Perm w(M, -1);
    std::vector<char> used(M, 0);
    bool stop = false;
    // place run k into an increasing subset of the free positions
    std::function<void(size_t)> place_run;
    std::function<void(size_t, size_t, int)> place;
    place = [&](size_t k, size_t idx, int from) {
        if (stop) return;
        const auto& run = L.runs[k];
        if (idx == run.size()) {
            place_run(k + 1);
            return;
        }
        for (int p = from; p < M; ++p) {
            if (used[p]) continue;
            used[p] = 1;
            w[run[idx]] = p;
            place(k, idx + 1, p + 1);
            used[p] = 0;
            if (stop) return;
        }
    };
    place_run = [&](size_t k) {
        if (stop) return;
        if (k == L.runs.size()) {
            if (!f(w)) stop = true;
            return;
        }
        place(k, 0, 0);
    };
    place_run(0);
}

Polarized polarize(const Perm& w, const std::vector<std::pair<int, int>>& pairs, const RestrictedRoots& rr) {
    Polarized out;
    out.shift.assign(rr.kdim, 0);
    for (auto [a, b] : pairs) {
        IntVec d(rr.kdim);
        for (long c = 0; c < rr.kdim; ++c) d[c] = rr.positions[w[a]][c] - rr.positions[w[b]][c];
        long x = dot(rr.X, d);
        if (x == 0) throw Error(ErrorKind::NonregularX, "restricted root orthogonal to the splitting element");
        if (x < 0) {
            ++out.flips;
            for (long c = 0; c < rr.kdim; ++c) out.shift[c] += d[c];
            for (auto& y : d) y = -y;
        }
        out.psi.push_back(d);
    }
    return out;
}

InteriorPoint random_interior_point(const RestrictedRoots& rr, const LeviData& L, std::uint64_t seed,
                                    long denominator) {
    using Mat = Eigen::MatrixXcd;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(1.0, 2.0);
    std::normal_distribution<double> gauss;
    long M = rr.M;
    std::vector<double> vals(L.runs.size());
    for (auto& v : vals) v = uni(rng);
    std::sort(vals.rbegin(), vals.rend());
    Eigen::VectorXd xi(M);
    for (size_t k = 0; k < L.runs.size(); ++k)
        for (int a : L.runs[k]) xi[a] = vals[k];
    Mat A(M, M);
    for (long i = 0; i < M; ++i)
        for (long j = 0; j < M; ++j) A(i, j) = {gauss(rng), gauss(rng)};
    Mat Q = Eigen::HouseholderQR<Mat>(A).householderQ();
    Mat rho = Q * xi.cast<std::complex<double>>().asDiagonal() * Q.adjoint();
    auto round_to = [&](double x) { return Rational(static_cast<long>(std::llround(x * denominator)), denominator); };
    InteriorPoint e;
    Rational total = 0;
    for (long p = 0; p < M; ++p) {
        e.g_part.push_back(round_to(xi[p]));
        total += e.g_part.back();
    }
    // block coordinates of each basis vector
    std::vector<std::vector<int>> idx(M);
    for (long p = 0; p < M; ++p) {
        long off = 0;
        for (int n : rr.blocks) {
            for (int t = 0; t < n; ++t)
                if (rr.positions[p][off + t]) idx[p].push_back(t);
            off += n;
        }
    }
    for (size_t j = 0; j < rr.blocks.size(); ++j) {
        int n = rr.blocks[j];
        std::vector<double> ev;
        if (rr.torus) {
            ev.push_back(rho(j, j).real());
        } else {
            // partial trace onto block j
            Mat m = Mat::Zero(n, n);
            for (long p = 0; p < M; ++p)
                for (long q = 0; q < M; ++q) {
                    bool same = true;
                    for (size_t l = 0; l < rr.blocks.size() && same; ++l)
                        if (l != j && idx[p][l] != idx[q][l]) same = false;
                    if (same) m(idx[p][j], idx[q][j]) += rho(p, q);
                }
            Eigen::SelfAdjointEigenSolver<Mat> es(m);
            for (long t = 0; t < n; ++t) ev.push_back(es.eigenvalues()[t]);
            std::sort(ev.rbegin(), ev.rend());
        }
        Rational s = 0;
        for (double x : ev) {
            e.k_part.push_back(round_to(x));
            s += e.k_part.back();
        }
        if (!rr.torus) e.k_part.back() += total - s;
    }
    if (rr.torus) {
        Rational s = 0;
        for (const auto& x : e.k_part) s += x;
        e.k_part.back() += total - s;
    }
    return e;
}

namespace {

bool is_dominant_blocks(const IntVec& mu, const std::vector<int>& blocks) {
    long off = 0;
    for (int n : blocks) {
        for (int t = 0; t + 1 < n; ++t)
            if (mu[off + t] < mu[off + t + 1]) return false;
        off += n;
    }
    return true;
}

}  // namespace

BranchingResult branching_multiplicity(const RestrictedRoots& rr, const IntVec& lambda, const IntVec& mu,
                                       bool dilated, const BranchingOptions& opt) {
    if (static_cast<long>(lambda.size()) != rr.M) throw Error(ErrorKind::Input, "lambda must have M entries");
    if (static_cast<long>(mu.size()) != rr.kdim) throw Error(ErrorKind::Input, "mu has the wrong number of entries");
    if (!rr.torus && !is_dominant_blocks(mu, rr.blocks)) throw Error(ErrorKind::Input, "mu is not dominant");
    BranchingResult res;
    WeightSystem sys = rr.system();
    ReducedSystem R = reduce_system(sys);
    // central character: the point must lie in the span of the restricted roots
    {
        IntVec d = rr.restrict_weight(lambda);
        for (long c = 0; c < rr.kdim; ++c) d[c] -= mu[c];
        IntMat m = sys.weights;
        m.push_back(d);
        if (rank(m) != R.rank) {
            res.quasi = QuasiPolynomial(1);
            return res;
        }
    }
    // a one-dimensional representation of U(M): the answer is read off directly
    if (std::all_of(lambda.begin(), lambda.end(), [&](long x) { return x == lambda[0]; })) {
        IntVec d = rr.restrict_weight(lambda);
        long hit = d == mu ? 1 : 0;
        res.value = hit;
        res.quasi = QuasiPolynomial(1, {UniPoly({Rational(hit)})});
        return res;
    }
    // two blocks and lambda = c + (d,0,..,0) or c - (0,..,0,d): Sym^d or its dual, decomposed by Cauchy.
    // The orbit of such a face has marginals with equal spectra, so no interior direction exists.
    if (!rr.torus && rr.blocks.size() == 2) {
        long M = rr.M, c = 0;
        int kind = 0;
        if (std::all_of(lambda.begin() + 1, lambda.end(), [&](long x) { return x == lambda[1]; })) {
            kind = 1;
            c = lambda[1];
        } else if (std::all_of(lambda.begin(), lambda.end() - 1, [&](long x) { return x == lambda[0]; })) {
            kind = -1;
            c = lambda[0];
        }
        if (kind) {
            std::vector<IntVec> nu;
            long off = 0;
            for (int n : rr.blocks) {
                IntVec part(mu.begin() + off, mu.begin() + off + n);
                for (auto& x : part) x = kind * (x - c * (M / n));
                if (kind < 0) std::reverse(part.begin(), part.end());
                nu.push_back(part);
                off += n;
            }
            long n = std::max(rr.blocks[0], rr.blocks[1]);
            nu[0].resize(n, 0);
            nu[1].resize(n, 0);
            bool hit = nu[0] == nu[1] && nu[0].back() >= 0;
            res.value = hit ? 1 : 0;
            res.quasi = hit ? QuasiPolynomial::constant(1) : QuasiPolynomial(1);
            return res;
        }
    }
    IntMat normals = admissible_hyperplanes(R);
    OSArrangement arr(R, normals);
    auto idx = system_index_data(R, opt.cap, opt.q_override);
    long active = opt.active;
    if (active < 0) {
        active = rr.M;
        while (active > 0 && lambda[active - 1] == 0) --active;
    }
    LeviData L = levi_data(lambda, active, opt.rectangular);
    IntMat nums;
    for (const auto& a : rr.k_roots) nums.push_back(R.reduce_lattice(a, sys.lattice));

    ResidueInput in;
    in.rank = R.rank;
    in.q = idx.q;
    in.torsion = idx.torsion;
    in.dilated = dilated;
    res.q = idx.q;

    for (int attempt = 0;; ++attempt) {
        InteriorPoint eps = random_interior_point(rr, L, opt.seed + attempt);
        in.jobs.clear();
        res.cosets = res.valid_cosets = 0;
        bool singular = false;
        for_each_coset(L, rr.M, [&](const Perm& w) {
            ++res.cosets;
            IntVec wl(rr.M);
            RatVec we(rr.M);
            for (long a = 0; a < rr.M; ++a) {
                wl[w[a]] = lambda[a];
                we[w[a]] = eps.g_part[a];
            }
            IntVec vb = rr.restrict_weight(wl);
            for (long c = 0; c < rr.kdim; ++c) vb[c] -= mu[c];
            RatVec db = rr.restrict_weight(we);
            for (long c = 0; c < rr.kdim; ++c) db[c] -= eps.k_part[c];
            IntVec v = R.reduce_lattice(vb, sys.lattice);
            RatVec dv = R.reduce(db);
            Rational mx = 0;
            for (const auto& X : normals) {
                long s = dot(X, v);
                Rational e = dot(X, dv);
                if (s == 0 && sgn(e) == 0) {
                    singular = true;
                    return false;
                }
                mx = std::max(mx, Rational(abs(e)));
            }
            Rational t = Rational(1) / (2 * (mx + 1));
            RatVec vp = to_rat(v);
            for (long c = 0; c < R.rank; ++c) vp[c] += t * dv[c];
            if (opt.prefilter && !R.positive_functional.empty() && sgn(dot(R.positive_functional, vp)) < 0) return true;
            auto bases = arr.adapted(vp);
            if (bases.empty()) return true;
            ++res.valid_cosets;
            Polarized pol = polarize(w, L.du_pairs, rr);
            ResidueJob job;
            IntMat dens;
            for (const auto& d : pol.psi) dens.push_back(R.reduce_lattice(d, sys.lattice));
            // cancel K-root numerators against equal denominators
            for (const auto& b : nums) {
                auto it = std::find(dens.begin(), dens.end(), b);
                if (it != dens.end()) dens.erase(it);
                else job.kernel.numerators.push_back(b);
            }
            job.kernel.denominators = std::move(dens);
            job.kernel.sign = pol.flips % 2 ? -1 : 1;
            IntVec g = R.reduce_lattice(pol.shift, sys.lattice);
            if (dilated) {
                job.kernel.a = g;
                job.kernel.b = v;
            } else {
                job.kernel.a = v;
                for (long c = 0; c < R.rank; ++c) job.kernel.a[c] += g[c];
            }
            for (const auto& b : bases) {
                IntMat m;
                for (long i : b) m.push_back(R.vectors[i]);
                job.bases.push_back(std::move(m));
            }
            in.jobs.push_back(std::move(job));
            return true;
        });
        if (!singular) break;
        if (attempt >= 4) throw Error(ErrorKind::DirectionSingular, "interior point direction is singular for a coset");
    }
    if (in.jobs.empty()) {
        res.quasi = QuasiPolynomial(1);
        return res;
    }
    auto out = evaluate_residues(in, opt.engine);
    res.terms_total = out.terms_total;
    res.terms_evaluated = out.terms_evaluated;
    if (dilated) res.quasi = out.quasi;
    else res.value = assemble_count(out.value);
    return res;
}

namespace {

IntVec pad(const IntVec& p, long n) {
    IntVec out(n, 0);
    for (size_t i = 0; i < p.size() && static_cast<long>(i) < n; ++i) out[i] = p[i];
    return out;
}

long length_of(const IntVec& p) {
    long l = 0;
    for (size_t i = 0; i < p.size(); ++i)
        if (p[i] != 0) l = static_cast<long>(i) + 1;
    return l;
}

KroneckerResult constant_result(bool dilated, long v) {
    KroneckerResult r;
    r.dilated = dilated;
    r.value = v;
    r.quasi = v ? QuasiPolynomial::constant(v) : QuasiPolynomial(1);
    r.detail.value = v;
    r.detail.quasi = r.quasi;
    return r;
}

}  // namespace

KroneckerResult kronecker(const std::vector<int>& dims_in, const std::vector<IntVec>& parts_in, bool dilated,
                          const BranchingOptions& opt) {
    if (dims_in.empty() || dims_in.size() != parts_in.size())
        throw Error(ErrorKind::Input, "need one partition per factor");
    long content = -1;
    bool mismatch = false;
    for (size_t i = 0; i < dims_in.size(); ++i) {
        if (dims_in[i] < 1) throw Error(ErrorKind::Input, "dimensions must be positive");
        const auto& p = parts_in[i];
        long c = 0;
        for (size_t j = 0; j < p.size(); ++j) {
            if (p[j] < 0 || (j && p[j] > p[j - 1]))
                throw Error(ErrorKind::Input, "partitions must be weakly decreasing and nonnegative");
            c += p[j];
        }
        if (length_of(p) > dims_in[i])
            throw Error(ErrorKind::Input, "partition " + std::to_string(i + 1) + " has more rows than its dimension");
        if (content >= 0 && c != content) mismatch = true;
        content = c;
    }
    if (mismatch) return constant_result(dilated, 0);
    // a one-row partition is the trivial module of the symmetric group, so its factor drops out
    std::vector<int> dims;
    std::vector<IntVec> parts;
    for (size_t i = 0; i < dims_in.size(); ++i)
        if (length_of(parts_in[i]) > 1) {
            dims.push_back(dims_in[i]);
            parts.push_back(parts_in[i]);
        }
    if (dims.empty()) return constant_result(dilated, 1);
    if (dims.size() == 1) return constant_result(dilated, length_of(parts[0]) <= 1 ? 1 : 0);
    std::vector<size_t> order(dims.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return dims[a] > dims[b]; });
    std::vector<int> d;
    std::vector<IntVec> p;
    for (size_t i : order) {
        d.push_back(dims[i]);
        p.push_back(pad(parts[i], dims[i]));
    }
    if (d.size() == 2) {
        long n = std::max(d[0], d[1]);
        return constant_result(dilated, pad(p[0], n) == pad(p[1], n) ? 1 : 0);
    }
    std::vector<int> blocks(d.begin() + 1, d.end());
    long M = 1;
    for (int n : blocks) M *= n;
    if (length_of(p[0]) > M) return constant_result(dilated, 0);
    long n1 = std::min<long>(d[0], M);
    IntVec lambda = pad(p[0], M);
    IntVec mu;
    for (size_t i = 1; i < d.size(); ++i) mu.insert(mu.end(), p[i].begin(), p[i].end());
    BranchingOptions o = opt;
    if (o.active < 0) o.active = n1;
    if (!o.rectangular) {
        // one nonzero value: the larger Levi set of the rectangular case
        long distinct = 0;
        for (long i = 0; i < M; ++i)
            if (lambda[i] != 0 && (i == 0 || lambda[i] != lambda[i - 1])) ++distinct;
        o.rectangular = distinct <= 1;
    }
    KroneckerResult r;
    r.dilated = dilated;
    r.detail = branching_multiplicity(restricted_roots(blocks), lambda, mu, dilated, o);
    r.value = r.detail.value;
    r.quasi = r.detail.quasi;
    return r;
}

long expected_degree(const std::vector<int>& dims, const IntVec& facet_normal) {
    long N = 1, roots = 0, tdim = 0;
    for (int n : dims) {
        N *= n;
        roots += static_cast<long>(n) * (n - 1) / 2;
        tdim += n;
    }
    long s = static_cast<long>(dims.size());
    long eff = tdim - (s - 1);
    if (facet_normal.empty()) return N - roots - eff;
    if (static_cast<long>(facet_normal.size()) != tdim) throw Error(ErrorKind::Input, "facet normal has the wrong length");
    long psi0 = 0, roots0 = 0;
    for (long p = 0; p < N; ++p) {
        long x = p, off = 0, val = 0;
        for (int n : dims) {
            val += facet_normal[off + x % n];
            x /= n;
            off += n;
        }
        if (val == 0) ++psi0;
    }
    long off = 0;
    for (int n : dims) {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (facet_normal[off + i] == facet_normal[off + j]) ++roots0;
        off += n;
    }
    return psi0 - roots0 - (eff - 1);
}

}  // namespace kroncalc
