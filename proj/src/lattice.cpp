#include "kroncalc/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <map>
#include <numeric>
#include <set>
#include <unordered_set>

#include "kroncalc/errors.hpp"

namespace kroncalc {

namespace {

std::string vec_str(const IntVec& v) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "]";
}

struct VecHash {
    size_t operator()(const IntVec& v) const {
        size_t h = 1469598103934665603ULL;
        for (long x : v) h = (h ^ static_cast<size_t>(x)) * 1099511628211ULL;
        return h;
    }
};

}  // namespace

Lattice Lattice::standard(long n) {
    IntMat id(n, IntVec(n, 0));
    for (long i = 0; i < n; ++i) id[i][i] = 1;
    return generated_by(id);
}

Lattice Lattice::generated_by(const IntMat& gens) {
    Lattice L;
    if (gens.empty()) throw Error(ErrorKind::Input, "lattice needs at least one generator");
    L.n_ = static_cast<long>(gens[0].size());
    for (const auto& g : gens)
        if (static_cast<long>(g.size()) != L.n_) throw Error(ErrorKind::Input, "lattice generator length mismatch");
    L.basis_ = lattice_basis_of(gens);
    // pivot columns: the echelon form puts leading entries in increasing columns
    for (const auto& row : L.basis_) {
        for (long j = 0; j < L.n_; ++j)
            if (row[j] != 0) {
                L.pivots_.push_back(j);
                break;
            }
    }
    return L;
}

RatVec Lattice::coords(const RatVec& v) const {
    if (static_cast<long>(v.size()) != n_) throw Error(ErrorKind::Input, "vector length does not match the lattice");
    long r = rank();
    IntMat sq(r, IntVec(r));
    for (long i = 0; i < r; ++i)
        for (long j = 0; j < r; ++j) sq[i][j] = basis_[i][pivots_[j]];
    RatVec rhs(r);
    for (long j = 0; j < r; ++j) rhs[j] = v[pivots_[j]];
    RatVec x = solve_rows(sq, rhs);
    for (long j = 0; j < n_; ++j) {
        Rational s = 0;
        for (long i = 0; i < r; ++i) s += x[i] * basis_[i][j];
        if (s != v[j]) throw Error(ErrorKind::Input, "vector is not in the span of the lattice");
    }
    return x;
}

IntVec Lattice::coords(const IntVec& v) const {
    RatVec x = coords(to_rat(v));
    IntVec out;
    for (const auto& c : x) {
        if (c.get_den() != 1) throw Error(ErrorKind::Input, "weight " + vec_str(v) + " is not in the lattice");
        out.push_back(c.get_num().get_si());
    }
    return out;
}

bool Lattice::contains(const IntVec& v) const {
    try {
        coords(v);
        return true;
    } catch (const Error&) {
        return false;
    }
}

RatVec ReducedSystem::reduce(const RatVec& a) const {
    RatVec out(rank);
    for (long i = 0; i < rank; ++i)
        for (long j = 0; j < ambient_dim; ++j)
            if (sgn(coord_map[i][j]) != 0 && sgn(a[j]) != 0) out[i] += coord_map[i][j] * a[j];
    return out;
}

IntVec ReducedSystem::reduce_lattice(const IntVec& a, const Lattice& lat) const {
    if (!lat.contains(a)) throw Error(ErrorKind::Input, "weight " + vec_str(a) + " is not in the lattice");
    RatVec r = reduce(to_rat(a));
    // membership in the span: the coordinate map must reproduce the vector
    IntVec out;
    for (const auto& c : r) {
        if (c.get_den() != 1) throw Error(ErrorKind::Input, "weight " + vec_str(a) + " is not in the lattice");
        out.push_back(c.get_num().get_si());
    }
    return out;
}

long ReducedSystem::find(const IntVec& v) const {
    for (size_t i = 0; i < vectors.size(); ++i)
        if (vectors[i] == v) return static_cast<long>(i);
    return -1;
}

IntVec find_positive_functional(const IntMat& vectors, long max_iter) {
    if (vectors.empty()) return {};
    size_t n = vectors[0].size();
    IntVec X(n, 0);
    for (long it = 0; it < max_iter; ++it) {
        bool ok = true;
        for (const auto& v : vectors) {
            if (dot(X, v) <= 0) {
                for (size_t i = 0; i < n; ++i) X[i] += v[i];
                ok = false;
                break;
            }
        }
        if (ok) return X;
    }
    return {};
}

ReducedSystem reduce_system(const WeightSystem& sys) {
    ReducedSystem R;
    const Lattice& L = sys.lattice;
    R.ambient_dim = L.ambient_dim();
    if (sys.weights.empty()) throw Error(ErrorKind::Input, "empty weight system");
    IntMat lc;
    for (const auto& w : sys.weights) {
        if (static_cast<long>(w.size()) != R.ambient_dim) throw Error(ErrorKind::Input, "weight length mismatch");
        bool zero = std::all_of(w.begin(), w.end(), [](long x) { return x == 0; });
        if (zero) throw Error(ErrorKind::Input, "zero weight in the system");
        lc.push_back(L.coords(w));
    }
    long rk = 0;
    IntMat U = column_compression(lc, rk);
    R.rank = rk;
    // coordinate map: ambient -> lattice coords (via pivots) -> * U -> first rk entries
    long lr = L.rank();
    RatMat to_lat(lr, RatVec(R.ambient_dim));
    for (long j = 0; j < R.ambient_dim; ++j) {
        RatVec e(R.ambient_dim);
        e[j] = 1;
        // the unit vector is usually not in the span; use the pivot solve extension
        RatVec rhs;
        IntMat sq(lr, IntVec(lr));
        std::vector<long> piv;
        for (const auto& row : L.basis())
            for (long c = 0; c < R.ambient_dim; ++c)
                if (row[c] != 0) {
                    piv.push_back(c);
                    break;
                }
        for (long a = 0; a < lr; ++a)
            for (long b = 0; b < lr; ++b) sq[a][b] = L.basis()[a][piv[b]];
        for (long b = 0; b < lr; ++b) rhs.push_back(e[piv[b]]);
        RatVec x = solve_rows(sq, rhs);
        for (long a = 0; a < lr; ++a) to_lat[a][j] = x[a];
    }
    R.coord_map.assign(rk, RatVec(R.ambient_dim));
    for (long i = 0; i < rk; ++i)
        for (long j = 0; j < R.ambient_dim; ++j)
            for (long a = 0; a < lr; ++a)
                if (U[a][i] != 0) R.coord_map[i][j] += to_lat[a][j] * U[a][i];
    std::map<IntVec, long> seen;
    for (const auto& x : lc) {
        IntVec y(rk, 0);
        for (long i = 0; i < rk; ++i)
            for (long a = 0; a < lr; ++a) y[i] += x[a] * U[a][i];
        auto it = seen.find(y);
        if (it == seen.end()) {
            seen.emplace(y, static_cast<long>(R.vectors.size()));
            R.index_of.push_back(static_cast<long>(R.vectors.size()));
            R.vectors.push_back(y);
            R.multiplicity.push_back(1);
        } else {
            R.index_of.push_back(it->second);
            ++R.multiplicity[it->second];
        }
    }
    R.positive_functional = find_positive_functional(R.vectors);
    return R;
}

std::vector<Integer> elementary_divisors(const IntMat& vectors, const Lattice& lattice) {
    IntMat lc;
    for (const auto& v : vectors) lc.push_back(lattice.coords(v));
    if (rank(lc) < lattice.rank())
        throw Error(ErrorKind::RankDeficient, "vectors do not span the lattice rank");
    auto d = smith_diagonal(lc);
    std::sort(d.begin(), d.end());
    return d;
}

namespace {

template <class F>
void for_each_subset(long n, long k, F&& f) {
    if (k > n) return;
    std::vector<long> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        f(idx);
        long i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) return;
        ++idx[i];
        for (long j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

long mod(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace

IndexData system_index_data(const ReducedSystem& sys, long cap, long q_override) {
    IndexData out;
    long r = sys.rank;
    long n = static_cast<long>(sys.vectors.size());
    if (q_override > 0) {
        out.q = q_override;
        out.full_grid = true;
        double sz = std::pow(static_cast<double>(q_override), static_cast<double>(r));
        if (sz > static_cast<double>(cap)) throw Error(ErrorKind::EnumerationCapExceeded, "grid (Z/q)^r too large");
        IntVec th(r, 0);
        while (true) {
            out.torsion.push_back(th);
            long i = 0;
            while (i < r && ++th[i] == q_override) th[i++] = 0;
            if (i == r) break;
        }
        return out;
    }
    struct Big {
        IntMat adj;
        long det;
        long g;  // gcd of det and the adjugate entries
    };
    std::vector<Big> bigs;
    long q = 1;
    IntMat B(r, IntVec(r));
    for_each_subset(n, r, [&](const std::vector<long>& idx) {
        if (++out.determinant_evaluations > cap)
            throw Error(ErrorKind::EnumerationCapExceeded,
                        "more than " + std::to_string(cap) + " determinant evaluations; supply q manually");
        for (long i = 0; i < r; ++i) B[i] = sys.vectors[idx[i]];
        long d = det_long(B);
        if (d == 0 || std::labs(d) == 1) return;
        IntMat adj = adjugate(B);
        long g = std::labs(d);
        for (const auto& row : adj)
            for (long x : row) g = std::gcd(g, std::labs(x));
        long ds = std::labs(d) / g;
        q = std::lcm(q, ds);
        if (ds > 1) bigs.push_back({std::move(adj), d, g});
    });
    out.q = q;
    std::unordered_set<IntVec, VecHash> U;
    U.insert(IntVec(r, 0));
    for (const auto& b : bigs) {
        // generators: columns of adj/det, scaled by q
        std::vector<IntVec> gens;
        for (long j = 0; j < r; ++j) {
            IntVec g(r);
            for (long i = 0; i < r; ++i) g[i] = mod(b.adj[i][j] / b.g * (q * b.g / std::labs(b.det)) * (b.det < 0 ? -1 : 1), q);
            gens.push_back(g);
        }
        std::vector<IntVec> group{IntVec(r, 0)};
        std::unordered_set<IntVec, VecHash> seen{IntVec(r, 0)};
        for (size_t k = 0; k < group.size(); ++k) {
            for (const auto& g : gens) {
                IntVec x(r);
                for (long i = 0; i < r; ++i) x[i] = mod(group[k][i] + g[i], q);
                if (seen.insert(x).second) group.push_back(x);
            }
        }
        for (auto& x : group) U.insert(std::move(x));
    }
    out.torsion.assign(U.begin(), U.end());
    std::sort(out.torsion.begin(), out.torsion.end());
    return out;
}

long system_index(const WeightSystem& sys, long cap) { return system_index_data(reduce_system(sys), cap).q; }

std::uint64_t arrangement_key(const ReducedSystem& sys) {
    IntMat v = sys.vectors;
    std::sort(v.begin(), v.end());
    std::string s = "v1;" + std::to_string(sys.rank) + ";";
    for (const auto& x : v) s += vec_str(x) + ";";
    for (const auto& row : sys.coord_map)
        for (const auto& c : row) s += to_string(c) + ",";
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) h = (h ^ c) * 1099511628211ULL;
    return h;
}

namespace {

std::filesystem::path cache_file(const ReducedSystem& sys) {
    const char* dir = std::getenv("KRONCALC_CACHE_DIR");
    if (!dir || !*dir) return {};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(arrangement_key(sys)));
    return std::filesystem::path(dir) / (std::string("arrangement-") + buf + ".json");
}

}  // namespace

IntMat admissible_hyperplanes(const ReducedSystem& sys, bool use_cache) {
    long r = sys.rank;
    std::filesystem::path path = use_cache ? cache_file(sys) : std::filesystem::path();
    if (!path.empty() && std::filesystem::exists(path)) {
        try {
            std::ifstream in(path);
            auto j = nlohmann::json::parse(in);
            if (j.at("version") == 1 && j.at("rank") == r) return j.at("normals").get<IntMat>();
        } catch (const std::exception&) {
            // unreadable cache entry: recompute and overwrite
        }
    }
    std::set<IntVec> H;
    if (r == 1) {
        H.insert(IntVec{1});
    } else {
        long n = static_cast<long>(sys.vectors.size());
        IntMat rows(r - 1);
        for_each_subset(n, r - 1, [&](const std::vector<long>& idx) {
            for (long i = 0; i < r - 1; ++i) rows[i] = sys.vectors[idx[i]];
            IntVec X = primitive_normal(rows, r);
            if (std::any_of(X.begin(), X.end(), [](long x) { return x != 0; })) H.insert(X);
        });
    }
    IntMat out(H.begin(), H.end());
    if (!path.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
        std::ofstream o(path);
        if (o) o << nlohmann::json{{"version", 1}, {"rank", r}, {"normals", out}}.dump();
    }
    return out;
}

IntMat admissible_hyperplanes(const WeightSystem& sys) {
    ReducedSystem R = reduce_system(sys);
    IntMat out;
    for (const auto& X : ambient_normals(R, admissible_hyperplanes(R))) out.push_back(make_primitive(X));
    std::sort(out.begin(), out.end());
    return out;
}

IntMat ambient_normals(const ReducedSystem& sys, const IntMat& normals) {
    IntMat out;
    for (const auto& X : normals) {
        RatVec v(sys.ambient_dim);
        for (long c = 0; c < sys.ambient_dim; ++c)
            for (long i = 0; i < sys.rank; ++i) v[c] += X[i] * sys.coord_map[i][c];
        Integer den = 1;
        for (const auto& x : v) den = lcm(den, Integer(x.get_den()));
        IntVec iv;
        for (const auto& x : v) iv.push_back(Rational(x * den).get_num().get_si());
        // positive rescaling keeps every sign; only strip the content
        long g = 0;
        for (long x : iv) g = std::gcd(g, std::labs(x));
        if (g > 1)
            for (auto& x : iv) x /= g;
        out.push_back(iv);
    }
    return out;
}

Tope tope_of(const RatVec& v, const IntMat& normals) {
    Tope t;
    t.witness = v;
    std::string bad;
    for (const auto& X : normals) {
        int s = sgn(dot(X, v));
        if (s == 0) bad += (bad.empty() ? "" : " ") + vec_str(X);
        t.signs.push_back(s);
    }
    if (!bad.empty()) throw Error(ErrorKind::NotRegular, "point lies on " + bad);
    return t;
}

std::vector<BranchingHyperplane> branching_family(const IntMat& normals, const std::vector<std::vector<int>>& perms,
                                                  const IntMat& positions, const ReducedSystem& sys, long cap) {
    if (static_cast<long>(normals.size() * perms.size()) > cap)
        throw Error(ErrorKind::CapExceeded, "branching family larger than the cap");
    long M = static_cast<long>(positions.size());
    std::set<std::vector<Rational>> seen;
    std::vector<BranchingHyperplane> out;
    for (const auto& w : perms) {
        for (const auto& X : normals) {
            std::vector<Rational> key;
            for (long p = 0; p < M; ++p) key.push_back(dot(X, sys.reduce(to_rat(positions[w[p]]))));
            for (long c = 0; c < sys.ambient_dim; ++c) {
                Rational s = 0;
                for (long i = 0; i < sys.rank; ++i) s -= X[i] * sys.coord_map[i][c];
                key.push_back(s);
            }
            // up to sign
            for (const auto& k : key) {
                if (sgn(k) == 0) continue;
                if (sgn(k) < 0)
                    for (auto& y : key) y = -y;
                break;
            }
            if (seen.insert(key).second) out.push_back({X, w});
        }
    }
    return out;
}

Rational branching_pairing(const BranchingHyperplane& h, const RatVec& xi, const RatVec& nu, const IntMat& positions,
                           const ReducedSystem& sys) {
    RatVec amb(nu.size());
    for (size_t p = 0; p < positions.size(); ++p)
        for (size_t c = 0; c < amb.size(); ++c)
            if (positions[h.w[p]][c]) amb[c] += xi[p] * positions[h.w[p]][c];
    for (size_t c = 0; c < amb.size(); ++c) amb[c] -= nu[c];
    return dot(h.X, sys.reduce(amb));
}

Deformed deform_to_regular(const RatVec& xi, const RatVec& nu, const std::vector<BranchingHyperplane>& family,
                           const RatVec& e1, const RatVec& e2, const IntMat& positions, const ReducedSystem& sys) {
    std::vector<Rational> base, dir;
    Rational minnz = -1, maxd = 0;
    bool singular = false;
    for (const auto& h : family) {
        Rational b = branching_pairing(h, xi, nu, positions, sys);
        Rational d = branching_pairing(h, e1, e2, positions, sys);
        if (sgn(b) == 0) {
            singular = true;
            if (sgn(d) == 0) throw Error(ErrorKind::DirectionSingular, "direction lies on a vanishing family member");
        } else if (minnz < 0 || abs(b) < minnz) {
            minnz = abs(b);
        }
        if (abs(d) > maxd) maxd = abs(d);
        base.push_back(b);
        dir.push_back(d);
    }
    Deformed out;
    out.t = 0;
    out.xi = xi;
    out.nu = nu;
    if (singular) {
        Rational lim = minnz < 0 ? Rational(1) : Rational(minnz);
        out.t = lim / (2 * (1 + maxd));
        for (size_t i = 0; i < xi.size(); ++i) out.xi[i] += out.t * e1[i];
        for (size_t i = 0; i < nu.size(); ++i) out.nu[i] += out.t * e2[i];
    }
    for (size_t i = 0; i < base.size(); ++i) out.signs.push_back(sgn(base[i] + out.t * dir[i]));
    return out;
}

RatVec deform_point(const RatVec& v, const RatVec& d, const IntMat& normals) {
    Rational minnz = -1, maxd = 0;
    bool singular = false;
    for (const auto& X : normals) {
        Rational b = dot(X, v), c = dot(X, d);
        if (sgn(b) == 0) {
            singular = true;
            if (sgn(c) == 0) throw Error(ErrorKind::DirectionSingular, "direction lies on hyperplane " + vec_str(X));
        } else if (minnz < 0 || abs(b) < minnz) {
            minnz = abs(b);
        }
        if (abs(c) > maxd) maxd = abs(c);
    }
    if (!singular) return v;
    Rational lim = minnz < 0 ? Rational(1) : Rational(minnz);
    Rational t = lim / (2 * (1 + maxd));
    RatVec out = v;
    for (size_t i = 0; i < v.size(); ++i) out[i] += t * d[i];
    return out;
}

}  // namespace kroncalc
