#include "kroncalc/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "kroncalc/errors.hpp"
#include "kroncalc/lattice.hpp"

namespace kroncalc {

size_t PartitionCounter::Hash::operator()(const IntVec& v) const {
    size_t h = 1469598103934665603ULL;
    for (long x : v) h = (h ^ static_cast<size_t>(x)) * 1099511628211ULL;
    return h;
}

PartitionCounter::PartitionCounter(IntMat vectors, IntVec functional) : psi_(std::move(vectors)), X_(std::move(functional)) {
    for (const auto& v : psi_)
        if (std::all_of(v.begin(), v.end(), [](long x) { return x == 0; }))
            throw Error(ErrorKind::Input, "zero vector in a partition function");
    if (X_.empty()) X_ = find_positive_functional(psi_);
    if (!psi_.empty() && X_.empty()) throw Error(ErrorKind::UnboundedCone, "the cone of the vectors is not pointed");
    for (const auto& v : psi_)
        if (dot(X_, v) <= 0) throw Error(ErrorKind::UnboundedCone, "functional is not positive on every vector");
    size_t n = psi_.size();
    size_t d = psi_.empty() ? 0 : psi_[0].size();
    sign_.assign(n + 1, std::vector<signed char>(d, 0));
    for (size_t i = n; i-- > 0;) {
        for (size_t c = 0; c < d; ++c) {
            signed char s = sign_[i + 1][c];
            long x = psi_[i][c];
            signed char t = x > 0 ? 1 : x < 0 ? -1 : 0;
            if (t == 0) sign_[i][c] = s;
            else if (s == 0 || s == t) sign_[i][c] = t;
            else sign_[i][c] = 2;
        }
    }
    memo_.resize(n + 1);
}

bool PartitionCounter::feasible(size_t i, const IntVec& v) const {
    for (size_t c = 0; c < v.size(); ++c) {
        signed char s = sign_[i][c];
        if (s == 0 && v[c] != 0) return false;
        if (s == 1 && v[c] < 0) return false;
        if (s == -1 && v[c] > 0) return false;
    }
    return true;
}

Integer PartitionCounter::rec(size_t i, const IntVec& v) {
    if (i == psi_.size()) return std::all_of(v.begin(), v.end(), [](long x) { return x == 0; }) ? 1 : 0;
    auto it = memo_[i].find(v);
    if (it != memo_[i].end()) return it->second;
    Integer total = 0;
    IntVec w = v;
    while (dot(X_, w) >= 0) {
        if (feasible(i + 1, w)) total += rec(i + 1, w);
        for (size_t c = 0; c < w.size(); ++c) w[c] -= psi_[i][c];
    }
    memo_[i].emplace(v, total);
    return total;
}

Integer PartitionCounter::count(const IntVec& mu) {
    if (psi_.empty()) return std::all_of(mu.begin(), mu.end(), [](long x) { return x == 0; }) ? 1 : 0;
    if (mu.size() != psi_[0].size()) throw Error(ErrorKind::Input, "weight length mismatch");
    if (dot(X_, mu) < 0 || !feasible(0, mu)) return 0;
    return rec(0, mu);
}

Integer partition_count_dp(const IntMat& psi, const IntVec& mu) { return PartitionCounter(psi).count(mu); }

std::vector<std::pair<IntVec, int>> reflection_orbit(const IntVec& v, const IntMat& roots) {
    std::map<IntVec, int> seen{{v, 1}};
    std::vector<IntVec> queue{v};
    for (size_t k = 0; k < queue.size(); ++k) {
        IntVec x = queue[k];
        int s = seen[x];
        for (const auto& a : roots) {
            long aa = dot(a, a);
            long xa = dot(x, a);
            if ((2 * xa) % aa != 0) throw Error(ErrorKind::Input, "reflection does not preserve the lattice");
            long c = 2 * xa / aa;
            IntVec y = x;
            for (size_t i = 0; i < y.size(); ++i) y[i] -= c * a[i];
            if (seen.emplace(y, -s).second) queue.push_back(y);
        }
    }
    return {seen.begin(), seen.end()};
}

Integer multiplicity_K_bruteforce(const IntMat& psi, const IntMat& positive_roots, const IntVec& rho,
                                  const IntVec& lambda) {
    PartitionCounter P(psi);
    Integer total = 0;
    for (const auto& [wr, s] : reflection_orbit(rho, positive_roots)) {
        IntVec mu = lambda;
        for (size_t i = 0; i < mu.size(); ++i) mu[i] += rho[i] - wr[i];
        total += s * P.count(mu);
    }
    if (total < 0) throw Error(ErrorKind::NegativeMultiplicity, "alternating sum is negative");
    return total;
}

namespace {

IntMat block_roots(const std::vector<int>& dims) {
    int tot = std::accumulate(dims.begin(), dims.end(), 0);
    IntMat out;
    int off = 0;
    for (int n : dims) {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                IntVec a(tot, 0);
                a[off + i] = 1;
                a[off + j] = -1;
                out.push_back(a);
            }
        off += n;
    }
    return out;
}

IntVec block_rho(const std::vector<int>& dims) {
    IntVec out;
    for (int n : dims)
        for (int i = 0; i < n; ++i) out.push_back(n - 1 - i);
    return out;
}

// weight of the p-th product basis vector, first index fastest
IntMat tensor_weights(const std::vector<int>& dims) {
    long M = 1;
    int tot = 0;
    for (int d : dims) M *= d, tot += d;
    IntMat out;
    for (long p = 0; p < M; ++p) {
        IntVec v(tot, 0);
        long x = p;
        int off = 0;
        for (int d : dims) {
            v[off + x % d] = 1;
            x /= d;
            off += d;
        }
        out.push_back(v);
    }
    return out;
}

}  // namespace

Integer kronecker_bruteforce(const std::vector<int>& dims, const std::vector<IntVec>& partitions, long cap) {
    if (dims.size() != partitions.size() || dims.empty()) throw Error(ErrorKind::Input, "one partition per factor");
    long content = -1;
    IntVec lambda;
    for (size_t i = 0; i < dims.size(); ++i) {
        const auto& p = partitions[i];
        long c = 0;
        for (size_t j = 0; j < p.size(); ++j) {
            if (p[j] < 0 || (j && p[j] > p[j - 1])) throw Error(ErrorKind::Input, "partition must be weakly decreasing and nonnegative");
            c += p[j];
            if (p[j] > 0 && static_cast<int>(j) >= dims[i]) return 0;
        }
        if (content >= 0 && c != content) return 0;
        content = c;
        for (int j = 0; j < dims[i]; ++j) lambda.push_back(j < static_cast<int>(p.size()) ? p[j] : 0);
    }
    if (content > cap)
        throw Error(ErrorKind::CapExceeded, "content " + std::to_string(content) + " above the oracle cap " + std::to_string(cap));
    IntMat psi = tensor_weights(dims);
    IntVec ones(lambda.size(), 1);
    PartitionCounter P(psi, ones);
    IntVec rho = block_rho(dims);
    Integer total = 0;
    for (const auto& [wr, s] : reflection_orbit(rho, block_roots(dims))) {
        IntVec mu = lambda;
        for (size_t i = 0; i < mu.size(); ++i) mu[i] += rho[i] - wr[i];
        total += s * P.count(mu);
    }
    if (total < 0) throw Error(ErrorKind::NegativeMultiplicity, "alternating sum is negative");
    return total;
}

Integer kostant_branching_bruteforce(int M, const std::vector<int>& block_ranks, const IntVec& lambda,
                                     const IntVec& mu, int max_rank) {
    if (M > max_rank) throw Error(ErrorKind::CapExceeded, "rank above the oracle cap");
    if (static_cast<int>(lambda.size()) != M) throw Error(ErrorKind::Input, "lambda must have M entries");
    bool torus = static_cast<int>(block_ranks.size()) == M &&
                 std::all_of(block_ranks.begin(), block_ranks.end(), [](int n) { return n == 1; });
    long prod = 1;
    for (int n : block_ranks) prod *= n;
    if (!torus && prod != M) throw Error(ErrorKind::Input, "block ranks must multiply to M");
    // restriction of the G-coordinates: row p is the K-weight of basis vector p
    IntMat pos;
    std::vector<int> kdims;
    if (torus) {
        for (int p = 0; p < M; ++p) {
            IntVec v(M, 0);
            v[p] = 1;
            pos.push_back(v);
        }
        kdims.assign(M, 1);
    } else {
        pos = tensor_weights(block_ranks);
        kdims = block_ranks;
    }
    size_t kd = pos[0].size();
    if (mu.size() != kd) throw Error(ErrorKind::Input, "mu has the wrong length");
    auto restrict_ = [&](const IntVec& nu) {
        IntVec out(kd, 0);
        for (int p = 0; p < M; ++p)
            for (size_t c = 0; c < kd; ++c) out[c] += nu[p] * pos[p][c];
        return out;
    };
    // generic functional: base-(M+1) weighting across blocks
    IntVec X(kd, 0);
    {
        long scale = 1;
        size_t off = 0;
        for (int n : kdims) {
            for (int i = 0; i < n; ++i) X[off + i] = (n - i) * scale;
            off += n;
            scale *= (M + 1);
        }
        if (torus)
            for (int p = 0; p < M; ++p) X[p] = M - p;
    }
    IntMat psi;
    IntVec g(kd, 0);
    int flips = 0;
    for (int p = 0; p < M; ++p)
        for (int q = p + 1; q < M; ++q) {
            IntVec a(M, 0);
            a[p] = 1;
            a[q] = -1;
            IntVec r = restrict_(a);
            long x = dot(X, r);
            if (x == 0) throw Error(ErrorKind::NonregularX, "restricted root orthogonal to the functional");
            if (x < 0) {
                ++flips;
                for (size_t c = 0; c < kd; ++c) g[c] += r[c];
                for (auto& y : r) y = -y;
            }
            psi.push_back(r);
        }
    PartitionCounter P(psi, X);
    IntVec rhoG(M);
    for (int i = 0; i < M; ++i) rhoG[i] = M - 1 - i;
    IntVec lr = lambda;
    for (int i = 0; i < M; ++i) lr[i] += rhoG[i];
    IntMat rootsG;
    for (int p = 0; p < M; ++p)
        for (int q = p + 1; q < M; ++q) {
            IntVec a(M, 0);
            a[p] = 1;
            a[q] = -1;
            rootsG.push_back(a);
        }
    auto orbitG = reflection_orbit(lr, rootsG);
    std::vector<std::pair<IntVec, int>> orbitK{{IntVec(kd, 0), 1}};
    IntVec rhoK = block_rho(kdims);
    if (!torus) {
        orbitK.clear();
        for (const auto& [wr, s] : reflection_orbit(rhoK, block_roots(kdims))) {
            IntVec d(kd);
            for (size_t c = 0; c < kd; ++c) d[c] = rhoK[c] - wr[c];
            orbitK.emplace_back(d, s);
        }
    }
    Integer total = 0;
    for (const auto& [wl, s] : orbitG) {
        IntVec nu = wl;
        for (int i = 0; i < M; ++i) nu[i] -= rhoG[i];
        IntVec base = restrict_(nu);
        for (size_t c = 0; c < kd; ++c) base[c] += g[c] - mu[c];
        for (const auto& [d, t] : orbitK) {
            IntVec arg = base;
            for (size_t c = 0; c < kd; ++c) arg[c] -= d[c];
            total += s * t * P.count(arg);
        }
    }
    if (flips % 2) total = -total;
    if (total < 0) throw Error(ErrorKind::NegativeMultiplicity, "alternating sum is negative");
    return total;
}

}  // namespace kroncalc
