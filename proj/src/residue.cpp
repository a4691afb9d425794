#include "kroncalc/residue.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <thread>

#include "kroncalc/errors.hpp"
#include "kroncalc/laurent.hpp"
#include "kroncalc/modular.hpp"

namespace kroncalc {

namespace {

long mod(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

// ---------------------------------------------------------------- fields

struct ExactField {
    using T = Cyclotomic;
    long Q;
    T zero() const { return Cyclotomic(Q); }
    T one() const { return Cyclotomic(Q, Rational(1)); }
    T rat(const Rational& r) const { return Cyclotomic(Q, r); }
    T zeta(long j) const { return Cyclotomic::zeta_power(Q, j); }
    T inv(const T& x) const { return x.inverse(); }
    T mul(const T& a, const T& b) const { return a * b; }
    T add(const T& a, const T& b) const { return a + b; }
    T sub(const T& a, const T& b) const { return a - b; }
    void mul_add(T& acc, const T& a, const T& b) const {
        if (!a.is_zero() && !b.is_zero()) acc += a * b;
    }
    bool is_zero(const T& x) const { return x.is_zero(); }
};

template <int K>
struct ModField {
    using T = std::array<std::uint64_t, K>;
    std::array<Montgomery, K> m;
    long Q;
    std::vector<T> zetas;

    ModField(const std::vector<std::uint64_t>& primes, long q) : Q(q) {
        for (int i = 0; i < K; ++i) m[i] = Montgomery(primes[i]);
        zetas.resize(Q);
        for (int i = 0; i < K; ++i) {
            std::uint64_t w = primitive_root_of_unity(Q, primes[i]), x = 1;
            for (long j = 0; j < Q; ++j) {
                zetas[j][i] = m[i].to_mont(x);
                x = static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * w % primes[i]);
            }
        }
    }
    T zero() const { return T{}; }
    T one() const {
        T t;
        for (int i = 0; i < K; ++i) t[i] = m[i].to_mont(1);
        return t;
    }
    T rat(const Rational& r) const {
        T t;
        for (int i = 0; i < K; ++i) {
            std::uint64_t p = m[i].p;
            std::uint64_t n = mpz_fdiv_ui(r.get_num_mpz_t(), p);
            std::uint64_t d = mpz_fdiv_ui(r.get_den_mpz_t(), p);
            t[i] = m[i].mul(m[i].to_mont(n), m[i].inv(m[i].to_mont(d)));
        }
        return t;
    }
    T zeta(long j) const { return zetas[mod(j, Q)]; }
    T inv(const T& x) const {
        T t;
        for (int i = 0; i < K; ++i) t[i] = m[i].inv(x[i]);
        return t;
    }
    T mul(const T& a, const T& b) const {
        T t;
        for (int i = 0; i < K; ++i) t[i] = m[i].mul(a[i], b[i]);
        return t;
    }
    T add(const T& a, const T& b) const {
        T t;
        for (int i = 0; i < K; ++i) t[i] = m[i].add(a[i], b[i]);
        return t;
    }
    T sub(const T& a, const T& b) const {
        T t;
        for (int i = 0; i < K; ++i) t[i] = m[i].sub(a[i], b[i]);
        return t;
    }
    void mul_add(T& acc, const T& a, const T& b) const {
        for (int i = 0; i < K; ++i) acc[i] = m[i].add(acc[i], m[i].mul(a[i], b[i]));
    }
    bool is_zero(const T& x) const {
        for (int i = 0; i < K; ++i)
            if (x[i]) return false;
        return true;
    }
    std::uint64_t lane(const T& x, int i) const { return m[i].from_mont(x[i]); }
};

constexpr int kLanes = 3;
using Mod3 = ModField<kLanes>;

// ---------------------------------------------------------------- monomials

// Monomials in r variables indexed by degree blocks; index = offset[n] + colex rank.
class MonoSpace {
public:
    explicit MonoSpace(int r) : r_(r) {
        offset_.push_back(0);
        grow(0);
    }
    int r() const { return r_; }
    int degree() const { return deg_; }
    long begin(int n) const { return offset_[n]; }
    long end(int n) const { return offset_[n + 1]; }
    const int* exps(long i) const { return &exps_[i * r_]; }
    const int* prefix(long i) const { return &prefix_[i * r_]; }
    const int* suffix(long i) const { return &suffix_[i * r_]; }
    long pred(long i) const { return pred_[i]; }
    int pred_var(long i) const { return pred_var_[i]; }

    void grow(int D) {
        if (D <= deg_) return;
        binom_.assign(D + r_ + 2, std::vector<long>(r_ + 1, 0));
        for (int n = 0; n < D + r_ + 2; ++n) {
            binom_[n][0] = 1;
            for (int k = 1; k <= std::min(n, r_); ++k)
                binom_[n][k] = binom_[n - 1][k - 1] + (k <= n - 1 ? binom_[n - 1][k] : 0);
        }
        for (int n = deg_ + 1; n <= D; ++n) {
            long cnt = binom_[n + r_ - 1][r_ - 1];
            long base = offset_[n];
            offset_.push_back(base + cnt);
            exps_.resize((base + cnt) * r_);
            prefix_.resize((base + cnt) * r_);
            suffix_.resize((base + cnt) * r_);
            pred_.resize(base + cnt);
            pred_var_.resize(base + cnt);
            std::vector<int> e(r_, 0);
            enumerate(n, 0, n, e);
        }
        deg_ = D;
    }

    // index of the product of monomials i and j
    long product(long i, long j) const {
        const int* pi = prefix(i);
        const int* pj = prefix(j);
        int n = pi[r_ - 1] + pj[r_ - 1];
        long rk = 0;
        for (int k = 0; k + 1 < r_; ++k) rk += binom_[pi[k] + pj[k] + k][k + 1];
        return offset_[n] + rk;
    }

    long index_of(const int* e) const {
        int n = 0;
        long rk = 0;
        for (int k = 0; k + 1 < r_; ++k) {
            n += e[k];
            rk += binom_[n + k][k + 1];
        }
        n += e[r_ - 1];
        return offset_[n] + rk;
    }

private:
    int r_;
    int deg_ = -1;
    std::vector<long> offset_;
    std::vector<int> exps_, prefix_, suffix_, pred_var_;
    std::vector<long> pred_;
    std::vector<std::vector<long>> binom_;

    void enumerate(int n, int v, int left, std::vector<int>& e) {
        if (v == r_ - 1) {
            e[v] = left;
            place(n, e);
            return;
        }
        for (int x = left; x >= 0; --x) {
            e[v] = x;
            enumerate(n, v + 1, left - x, e);
        }
        e[v] = 0;
    }

    void place(int n, const std::vector<int>& e) {
        if (offset_.size() < static_cast<size_t>(n + 2)) return;
        long rk = 0;
        int s = 0;
        for (int k = 0; k + 1 < r_; ++k) {
            s += e[k];
            rk += binom_[s + k][k + 1];
        }
        long i = offset_[n] + rk;
        s = 0;
        for (int k = 0; k < r_; ++k) {
            exps_[i * r_ + k] = e[k];
            s += e[k];
            prefix_[i * r_ + k] = s;
        }
        int t = 0;
        for (int k = r_ - 1; k >= 0; --k) {
            t += e[k];
            suffix_[i * r_ + k] = t;
        }
        int v = r_ - 1;
        while (v >= 0 && e[v] == 0) --v;
        pred_var_[i] = v;
        if (v >= 0) {
            std::vector<int> f = e;
            --f[v];
            long rp = 0;
            int sp = 0;
            for (int k = 0; k + 1 < r_; ++k) {
                sp += f[k];
                rp += binom_[sp + k][k + 1];
            }
            pred_[i] = offset_[n - 1] + rp;
        } else {
            pred_[i] = -1;
        }
    }
};

// ---------------------------------------------------------------- term evaluation

struct Factor {
    bool den;
    RatVec c;       // coordinates in the basis
    int lead;       // first nonzero coordinate
    int form;       // index into the distinct forms
    IntVec vec;     // reduced lattice vector
};

template <class F>
struct TermResult {
    bool evaluated = false;
    int D = -1;
    typename F::T value;                        // plain mode, phase included
    std::vector<typename F::T> poly;            // dilated mode, phase excluded
    long phase_a = 0, phase_b = 0;              // exponents of zeta for a and b
};

template <class F>
class TermContext {
public:
    using T = typename F::T;

    TermContext(const F& f, MonoSpace& space, const IntMat& sigma, const ResidueKernel& k, long q)
        : f_(f), space_(space), kernel_(k), q_(q), r_(static_cast<int>(sigma.size())) {
        for (const auto& row : sigma)
            if (static_cast<int>(row.size()) != r_) throw Error(ErrorKind::Input, "basis is not square");
        Integer d = det(sigma);
        if (d == 0) throw Error(ErrorKind::SingularCoordinateChange, "basis vectors are dependent");
        absdet_ = abs(d);
        sigma_ = sigma;
        auto add = [&](const IntVec& v, bool den) {
            Factor fac;
            fac.den = den;
            fac.vec = v;
            fac.c = solve_rows(sigma, to_rat(v));
            fac.lead = -1;
            for (int j = 0; j < r_; ++j)
                if (sgn(fac.c[j]) != 0) {
                    fac.lead = j;
                    break;
                }
            if (fac.lead < 0) throw Error(ErrorKind::Input, "zero vector in a residue kernel");
            auto it = std::find(forms_.begin(), forms_.end(), fac.c);
            fac.form = static_cast<int>(it - forms_.begin());
            if (it == forms_.end()) forms_.push_back(fac.c);
            factors_.push_back(std::move(fac));
        };
        for (const auto& v : k.denominators) add(v, true);
        for (const auto& v : k.numerators) add(v, false);
        ca_ = k.a.empty() ? RatVec(r_) : solve_rows(sigma, to_rat(k.a));
        if (!k.b.empty()) cb_ = solve_rows(sigma, to_rat(k.b));
        for (const auto& fac : factors_) {
            std::vector<T> cf;
            for (const auto& x : fac.c) cf.push_back(f_.rat(x));
            cfield_.push_back(cf);
            lead_inv_.push_back(f_.inv(cf[fac.lead]));
        }
        form_w_.resize(forms_.size());
        for (const auto& x : ca_) ca_f_.push_back(f_.rat(x));
        for (const auto& x : cb_) cb_f_.push_back(f_.rat(x));
        inv_det_ = f_.rat(Rational(1) / Rational(absdet_));
    }

    const std::vector<Factor>& factors() const { return factors_; }

    TermResult<F> eval(const IntVec& theta, bool prune) {
        TermResult<F> res;
        int nf = static_cast<int>(factors_.size());
        std::vector<long> j(nf, 0);
        std::vector<int> e(nf, 0);
        int esum = 0;
        std::string mask(nf, '0');
        for (int i = 0; i < nf; ++i) {
            const auto& fac = factors_[i];
            j[i] = kernel_.linear ? 0 : mod(-dot(fac.vec, theta), q_);
            if (j[i] == 0) {
                e[i] = fac.den ? -1 : 1;
                mask[i] = '1';
            }
            esum += e[i];
        }
        int D = -esum - r_;
        res.D = D;
        if (D < 0) return res;
        if (prune) {
            for (int lvl = 0; lvl < r_; ++lvl) {
                bool hit = false;
                for (int i = 0; i < nf && !hit; ++i) hit = e[i] == -1 && factors_[i].lead == lvl;
                if (!hit) return res;
            }
        }
        std::vector<int> rho(r_, 0);
        for (int i = 0; i < nf; ++i)
            if (e[i])
                for (int l = 0; l <= factors_[i].lead; ++l) rho[l] += e[i];
        std::vector<int> Tb(r_);
        for (int l = 0; l < r_; ++l) {
            Tb[l] = -1 - rho[l] - (r_ - 1 - l);
            if (Tb[l] < 0) return res;
        }
        space_.grow(D);
        const Box& H = box(mask, e, Tb);
        std::vector<T> A = analytic(j, D);

        T pref = f_.mul(inv_det_, kernel_.sign < 0 ? f_.rat(Rational(-1)) : f_.one());
        for (int i = 0; i < nf; ++i) {
            if (e[i] == 1) pref = f_.mul(pref, cfield_[i][factors_[i].lead]);
            else if (e[i] == -1) pref = f_.mul(pref, lead_inv_[i]);
            else {
                T h0 = f_.sub(f_.one(), f_.zeta(j[i]));
                pref = f_.mul(pref, factors_[i].den ? f_.inv(h0) : h0);
            }
        }
        res.evaluated = true;
        res.phase_a = kernel_.a.empty() ? 0 : mod(dot(kernel_.a, theta), q_);
        res.phase_b = kernel_.b.empty() ? 0 : mod(dot(kernel_.b, theta), q_);
        if (kernel_.b.empty()) {
            T v = contract(A, H, D, -1);
            res.value = f_.mul(f_.mul(v, pref), f_.zeta(res.phase_a));
        } else {
            const auto& Eb = expo(cb_f_, D);
            res.poly.assign(D + 1, f_.zero());
            for (int d = 0; d <= D; ++d) {
                T acc = f_.zero();
                for (long i = space_.begin(d); i < space_.end(d); ++i) {
                    if (f_.is_zero(Eb[i])) continue;
                    f_.mul_add(acc, Eb[i], contract(A, H, D - d, i));
                }
                res.poly[d] = f_.mul(acc, pref);
            }
        }
        return res;
    }

private:
    struct Box {
        std::vector<int> dims;  // per variable 1..r-1
        std::vector<long> stride;
        std::vector<T> data;
    };

    const F& f_;
    MonoSpace& space_;
    const ResidueKernel& kernel_;
    long q_;
    int r_;
    IntMat sigma_;
    Integer absdet_;
    std::vector<Factor> factors_;
    std::vector<RatVec> forms_;
    std::vector<std::vector<T>> cfield_;
    std::vector<T> lead_inv_;
    RatVec ca_, cb_;
    std::vector<T> ca_f_, cb_f_;
    T inv_det_;
    std::vector<std::vector<T>> form_w_;  // (c.y)^n coefficients n!/beta! c^beta
    std::map<std::string, Box> boxes_;
    std::map<std::pair<int, long>, std::vector<T>> logs_;
    std::vector<T> eb_cache_;
    int eb_deg_ = -1;
    std::vector<T> inv_n_;

    const T& inv_n(int n) {
        while (static_cast<int>(inv_n_.size()) <= n) {
            int m = static_cast<int>(inv_n_.size());
            inv_n_.push_back(m == 0 ? f_.zero() : f_.rat(Rational(1, m)));
        }
        return inv_n_[n];
    }

    // c^beta / beta! for all monomials up to degree D
    std::vector<T> expo_of(const std::vector<T>& c, int D) {
        std::vector<T> out(space_.end(D));
        out[0] = f_.one();
        for (long i = 1; i < space_.end(D); ++i) {
            int v = space_.pred_var(i);
            int ev = space_.exps(i)[v];
            out[i] = f_.mul(f_.mul(out[space_.pred(i)], c[v]), inv_n(ev));
        }
        return out;
    }

    const std::vector<T>& expo(const std::vector<T>& c, int D) {
        if (eb_deg_ < D) {
            eb_cache_ = expo_of(c, D);
            eb_deg_ = D;
        }
        return eb_cache_;
    }

    const std::vector<T>& form_weights(int form, int D) {
        auto& w = form_w_[form];
        if (static_cast<long>(w.size()) < space_.end(D)) {
            std::vector<T> c;
            for (const auto& x : forms_[form]) c.push_back(f_.rat(x));
            w = expo_of(c, D);
            T fact = f_.one();
            for (int n = 1; n <= D; ++n) {
                fact = f_.mul(fact, f_.rat(Rational(n)));
                for (long i = space_.begin(n); i < space_.end(n); ++i) w[i] = f_.mul(w[i], fact);
            }
        }
        return w;
    }

    // log of the normalized unit series of a factor, coefficients 0..D
    const std::vector<T>& log_series(bool den, long j, int D) {
        auto key = std::make_pair(den ? 1 : 0, j);
        auto it = logs_.find(key);
        if (it != logs_.end() && static_cast<int>(it->second.size()) > D) return it->second;
        std::vector<T> h(D + 1);
        // factorial reciprocals with alternating sign: (-1)^n / n!
        std::vector<Rational> alt(D + 2);
        alt[0] = 1;
        for (int n = 1; n <= D + 1; ++n) alt[n] = -alt[n - 1] / n;
        if (j == 0) {
            // (1 - e^{-x}) / x = sum_n -(-1)^{n+1}/(n+1)! x^n
            for (int n = 0; n <= D; ++n) h[n] = f_.rat(-alt[n + 1]);
        } else {
            // (1 - w e^{-x}) / (1 - w)
            T w = f_.zeta(j);
            T inv0 = f_.inv(f_.sub(f_.one(), w));
            h[0] = f_.one();
            for (int n = 1; n <= D; ++n) h[n] = f_.mul(f_.mul(w, f_.rat(-alt[n])), inv0);
        }
        std::vector<T> L(D + 1, f_.zero());
        for (int n = 1; n <= D; ++n) {
            T acc = f_.zero();
            for (int k = 1; k < n; ++k) f_.mul_add(acc, f_.mul(L[k], f_.rat(Rational(k))), h[n - k]);
            L[n] = f_.sub(h[n], f_.mul(acc, inv_n(n)));
        }
        if (den)
            for (auto& x : L) x = f_.sub(f_.zero(), x);
        return logs_[key] = std::move(L);
    }

    // coefficients of exp(<a,y>) prod g_f(l_f(y)) up to degree D
    std::vector<T> analytic(const std::vector<long>& j, int D) {
        long N = space_.end(D);
        std::vector<T> G(N, f_.zero());
        for (int v = 0; v < r_ && D >= 1; ++v) {
            std::vector<int> ev(r_, 0);
            ev[v] = 1;
            G[space_.index_of(ev.data())] = ca_f_[v];
        }
        if (!kernel_.linear) {
            std::vector<std::vector<T>> lam(forms_.size());
            for (size_t i = 0; i < factors_.size(); ++i) {
                const auto& L = log_series(factors_[i].den, j[i], D);
                auto& acc = lam[factors_[i].form];
                if (acc.empty()) acc.assign(D + 1, f_.zero());
                for (int n = 1; n <= D; ++n) acc[n] = f_.add(acc[n], L[n]);
            }
            for (size_t c = 0; c < forms_.size(); ++c) {
                if (lam[c].empty()) continue;
                const auto& w = form_weights(static_cast<int>(c), D);
                for (int n = 1; n <= D; ++n) {
                    if (f_.is_zero(lam[c][n])) continue;
                    for (long i = space_.begin(n); i < space_.end(n); ++i) f_.mul_add(G[i], lam[c][n], w[i]);
                }
            }
        }
        // A = exp(G): n A_n = sum_j j G_j A_{n-j}
        std::vector<T> A(N, f_.zero());
        A[0] = f_.one();
        for (int n = 1; n <= D; ++n) {
            for (int jd = 1; jd <= n; ++jd) {
                T jj = f_.rat(Rational(jd));
                for (long g = space_.begin(jd); g < space_.end(jd); ++g) {
                    if (f_.is_zero(G[g])) continue;
                    T jg = f_.mul(G[g], jj);
                    for (long a = space_.begin(n - jd); a < space_.end(n - jd); ++a) {
                        if (f_.is_zero(A[a])) continue;
                        f_.mul_add(A[space_.product(g, a)], jg, A[a]);
                    }
                }
            }
            const T& in = inv_n(n);
            for (long i = space_.begin(n); i < space_.end(n); ++i) A[i] = f_.mul(A[i], in);
        }
        return A;
    }

    // prod (1 + u_f)^{e_f} on the box 0 <= t_l <= T_l, variables 1..r-1
    const Box& box(const std::string& mask, const std::vector<int>& e, const std::vector<int>& Tb) {
        auto it = boxes_.find(mask);
        if (it != boxes_.end()) return it->second;
        Box B;
        long size = 1;
        B.dims.assign(r_, 1);
        B.stride.assign(r_, 0);
        for (int l = r_ - 1; l >= 1; --l) {
            B.dims[l] = Tb[l] + 1;
            B.stride[l] = size;
            size *= B.dims[l];
        }
        B.data.assign(size, f_.zero());
        B.data[0] = f_.one();
        std::vector<int> idx(r_);
        for (size_t i = 0; i < factors_.size(); ++i) {
            if (e[i] == 0) continue;
            int m = factors_[i].lead;
            // u = sum_{j>m} (c_j / c_m) x_{m+1} ... x_j
            std::vector<std::pair<long, T>> u;
            for (int jv = m + 1; jv < r_; ++jv) {
                if (sgn(factors_[i].c[jv]) == 0) continue;
                bool fits = true;
                long off = 0;
                for (int l = m + 1; l <= jv; ++l) {
                    if (B.dims[l] < 2) fits = false;
                    off += B.stride[l];
                }
                if (!fits) continue;
                u.emplace_back(off, f_.mul(cfield_[i][jv], lead_inv_[i]));
            }
            if (u.empty()) continue;
            // exponent vectors of u: ones on m+1..j; valid shift needs t_l >= 1 there
            auto shift_ok = [&](long pos, int jv) {
                for (int l = m + 1; l <= jv; ++l)
                    if ((pos / B.stride[l]) % B.dims[l] < 1) return false;
                return true;
            };
            std::vector<int> jlist;
            for (int jv = m + 1; jv < r_; ++jv) {
                if (sgn(factors_[i].c[jv]) == 0) continue;
                bool fits = true;
                for (int l = m + 1; l <= jv; ++l)
                    if (B.dims[l] < 2) fits = false;
                if (fits) jlist.push_back(jv);
            }
            if (e[i] == 1) {
                // multiply by (1 + u): descending positions keep sources untouched
                for (long pos = size - 1; pos >= 0; --pos)
                    for (size_t t = 0; t < u.size(); ++t)
                        if (shift_ok(pos, jlist[t])) f_.mul_add(B.data[pos], u[t].second, B.data[pos - u[t].first]);
            } else {
                // divide by (1 + u): ascending positions see already-divided sources
                for (long pos = 0; pos < size; ++pos)
                    for (size_t t = 0; t < u.size(); ++t)
                        if (shift_ok(pos, jlist[t]))
                            B.data[pos] = f_.sub(B.data[pos], f_.mul(u[t].second, B.data[pos - u[t].first]));
            }
        }
        return boxes_.emplace(mask, std::move(B)).first->second;
    }

    // sum over |beta| = deg of A[beta] * H[T - s(beta) - s(extra)]
    T contract(const std::vector<T>& A, const Box& H, int deg, long extra) {
        T acc = f_.zero();
        if (deg < 0) return acc;
        const int* se = extra >= 0 ? space_.suffix(extra) : nullptr;
        for (long i = space_.begin(deg); i < space_.end(deg); ++i) {
            if (f_.is_zero(A[i])) continue;
            const int* s = space_.suffix(i);
            long pos = 0;
            bool ok = true;
            for (int l = 1; l < r_; ++l) {
                int t = H.dims[l] - 1 - s[l] - (se ? se[l] : 0);
                if (t < 0) {
                    ok = false;
                    break;
                }
                pos += t * H.stride[l];
            }
            if (ok) f_.mul_add(acc, A[i], H.data[pos]);
        }
        return acc;
    }
};

// ---------------------------------------------------------------- driver

template <class F>
struct Accum {
    std::vector<typename F::T> slots;  // plain: 1 slot; dilated: q*(deg+1), coset-major with fixed stride
};

int thread_count(const EngineOptions& opt) {
    if (opt.threads > 0) return opt.threads;
    if (const char* s = std::getenv("KRONCALC_THREADS")) {
        int n = std::atoi(s);
        if (n > 0) return n;
    }
    return 1;
}

struct WorkItem {
    size_t job;
    size_t basis;
};

std::string vec_str(const IntVec& v) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "]";
}

// Runs every term; slots layout: plain -> [value]; dilated -> cosets * (maxdeg + 1).
template <class F>
std::vector<typename F::T> run_terms(const F& f, const ResidueInput& in, const EngineOptions& opt, int maxdeg,
                                     long& total, long& evaluated) {
    using T = typename F::T;
    std::vector<WorkItem> items;
    for (size_t jb = 0; jb < in.jobs.size(); ++jb)
        for (size_t b = 0; b < in.jobs[jb].bases.size(); ++b) items.push_back({jb, b});
    long slots = in.dilated ? in.q * (maxdeg + 1) : 1;
    int nt = std::max(1, std::min<int>(thread_count(opt), static_cast<int>(items.size())));
    std::vector<std::vector<T>> acc(nt, std::vector<T>(slots, f.zero()));
    std::vector<long> tot(nt, 0), ev(nt, 0);
    std::vector<std::exception_ptr> errs(nt);
    std::mutex diag_mu;
    std::vector<IntVec> linear_theta{IntVec(in.rank, 0)};
    auto worker = [&](int id) {
        try {
            MonoSpace space(static_cast<int>(in.rank));
            for (size_t it = id; it < items.size(); it += nt) {
                const auto& job = in.jobs[items[it].job];
                const auto& sigma = job.bases[items[it].basis];
                TermContext<F> ctx(f, space, sigma, job.kernel, in.q);
                const auto& thetas = job.kernel.linear ? linear_theta : in.torsion;
                for (const auto& th : thetas) {
                    ++tot[id];
                    auto r = ctx.eval(th, opt.prune);
                    if (opt.diagnostics) {
                        std::lock_guard<std::mutex> lk(diag_mu);
                        *opt.diagnostics << "term job=" << items[it].job << " basis=" << items[it].basis
                                         << " theta=" << vec_str(th) << " D=" << r.D
                                         << (r.evaluated ? " evaluated" : " skipped") << "\n";
                    }
                    if (!r.evaluated) continue;
                    ++ev[id];
                    if (!in.dilated) {
                        acc[id][0] = f.add(acc[id][0], r.value);
                        continue;
                    }
                    if (static_cast<int>(r.poly.size()) > maxdeg + 1)
                        throw Error(ErrorKind::TruncationInsufficient, "dilated degree above the precomputed bound");
                    for (long c = 0; c < in.q; ++c) {
                        T ph = f.zeta(r.phase_a + c * r.phase_b);
                        for (size_t d = 0; d < r.poly.size(); ++d)
                            f.mul_add(acc[id][c * (maxdeg + 1) + d], r.poly[d], ph);
                    }
                }
            }
        } catch (...) {
            errs[id] = std::current_exception();
        }
    };
    if (nt == 1) {
        worker(0);
    } else {
        std::vector<std::thread> th;
        for (int i = 0; i < nt; ++i) th.emplace_back(worker, i);
        for (auto& t : th) t.join();
    }
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    for (int i = 1; i < nt; ++i)
        for (long s = 0; s < slots; ++s) acc[0][s] = f.add(acc[0][s], acc[i][s]);
    for (int i = 0; i < nt; ++i) total += tot[i], evaluated += ev[i];
    return acc[0];
}

int max_degree(const ResidueInput& in) {
    int m = 0;
    for (const auto& j : in.jobs) {
        int d = static_cast<int>(j.kernel.denominators.size()) - static_cast<int>(in.rank);
        if (j.kernel.linear) d -= static_cast<int>(j.kernel.numerators.size());
        m = std::max(m, d);
    }
    return m;
}

ResidueOutput package(const ResidueInput& in, int maxdeg, const std::vector<Rational>& vals) {
    ResidueOutput out;
    if (!in.dilated) {
        out.value = vals[0];
        return out;
    }
    std::vector<UniPoly> cos;
    for (long c = 0; c < in.q; ++c)
        cos.emplace_back(std::vector<Rational>(vals.begin() + c * (maxdeg + 1), vals.begin() + (c + 1) * (maxdeg + 1)));
    out.quasi = QuasiPolynomial(in.q, cos);
    return out;
}

}  // namespace

ResidueOutput evaluate_residues(const ResidueInput& in, const EngineOptions& opt) {
    if (in.q < 1) throw Error(ErrorKind::Input, "index must be positive");
    int maxdeg = in.dilated ? max_degree(in) : 0;
    long total = 0, evaluated = 0;
    if (opt.field == FieldKind::Exact) {
        ExactField f{in.q};
        auto slots = run_terms(f, in, opt, maxdeg, total, evaluated);
        std::vector<Rational> vals;
        for (const auto& s : slots) vals.push_back(cyclotomic_to_rational(s));
        auto out = package(in, maxdeg, vals);
        out.terms_total = total;
        out.terms_evaluated = evaluated;
        return out;
    }
    std::vector<std::uint64_t> primes;
    std::vector<std::vector<std::uint64_t>> lanes;  // per slot
    for (int round = 0; round < 4; ++round) {
        auto ps = select_primes(in.q, kLanes, round * kLanes);
        Mod3 f(ps, in.q);
        long t = 0, e = 0;
        auto slots = run_terms(f, in, opt, maxdeg, t, e);
        total = t;
        evaluated = e;
        if (lanes.empty()) lanes.resize(slots.size());
        for (size_t s = 0; s < slots.size(); ++s)
            for (int i = 0; i < kLanes; ++i) lanes[s].push_back(f.lane(slots[s], i));
        primes.insert(primes.end(), ps.begin(), ps.end());
        // reconstruct from all but the last prime, check against the last
        std::vector<std::uint64_t> head(primes.begin(), primes.end() - 1);
        Integer m = 1;
        for (auto p : head) m *= Integer(std::to_string(p));
        std::uint64_t last = primes.back();
        std::vector<Rational> vals;
        bool ok = true;
        for (size_t s = 0; s < lanes.size() && ok; ++s) {
            std::vector<std::uint64_t> res(lanes[s].begin(), lanes[s].end() - 1);
            auto r = rational_reconstruct(crt(res, head), m);
            if (!r) {
                ok = false;
                break;
            }
            std::uint64_t n = mpz_fdiv_ui(r->get_num_mpz_t(), last);
            std::uint64_t d = mpz_fdiv_ui(r->get_den_mpz_t(), last);
            if (static_cast<std::uint64_t>(static_cast<unsigned __int128>(d) * lanes[s].back() % last) != n) ok = false;
            vals.push_back(*r);
        }
        if (ok) {
            auto out = package(in, maxdeg, vals);
            out.terms_total = total;
            out.terms_evaluated = evaluated;
            out.primes_used = static_cast<int>(primes.size());
            return out;
        }
    }
    throw Error(ErrorKind::ReconstructionFailed, "rational reconstruction failed with " +
                                                     std::to_string(primes.size()) + " primes");
}

Cyclotomic iterated_residue(const IntMat& sigma, const ResidueKernel& kernel, const IntVec& theta, long q,
                            bool prune) {
    ExactField f{q};
    MonoSpace space(static_cast<int>(sigma.size()));
    ResidueKernel k = kernel;
    k.b.clear();
    TermContext<ExactField> ctx(f, space, sigma, k, q);
    auto r = ctx.eval(theta, prune);
    return r.evaluated ? r.value : f.zero();
}

std::vector<std::vector<Cyclotomic>> iterated_residue_dilated(const IntMat& sigma, const ResidueKernel& kernel,
                                                              const IntVec& theta, long q) {
    ExactField f{q};
    MonoSpace space(static_cast<int>(sigma.size()));
    TermContext<ExactField> ctx(f, space, sigma, kernel, q);
    auto r = ctx.eval(theta, true);
    std::vector<std::vector<Cyclotomic>> out(q);
    if (!r.evaluated) return out;
    for (long c = 0; c < q; ++c) {
        Cyclotomic ph = f.zeta(r.phase_a + c * r.phase_b);
        for (const auto& x : r.poly) out[c].push_back(x * ph);
    }
    return out;
}

Cyclotomic iterated_residue_reference(const IntMat& sigma, const ResidueKernel& kernel, const IntVec& theta,
                                      long q) {
    int r = static_cast<int>(sigma.size());
    if (det(sigma) == 0) throw Error(ErrorKind::SingularCoordinateChange, "basis vectors are dependent");
    ExactField f{q};
    using Exp = NestedLaurentSeries::Exponent;
    // y_j = x_0 ... x_j ; a linear form becomes sum_j c_j x_0..x_j
    auto form_series = [&](const RatVec& c, int trunc) {
        NestedLaurentSeries s(r, q, trunc);
        for (int jv = 0; jv < r; ++jv) {
            if (sgn(c[jv]) == 0) continue;
            Exp e(r, 0);
            for (int l = 0; l <= jv; ++l) e[l] = 1;
            s.add_term(e, f.rat(c[jv]));
        }
        return s;
    };
    auto exp_series = [&](const NestedLaurentSeries& l, const Cyclotomic& scale, int trunc) {
        // sum_n (scale * l)^n / n!, l without constant term
        NestedLaurentSeries out = NestedLaurentSeries::constant(r, f.one(), trunc);
        NestedLaurentSeries pw = out;
        NestedLaurentSeries sl(r, q, trunc);
        for (const auto& [e, c] : l.terms()) sl.add_term(e, c * scale);
        for (int n = 1; n <= trunc; ++n) {
            pw = pw * sl;
            NestedLaurentSeries t(r, q, trunc);
            for (const auto& [e, c] : pw.terms()) t.add_term(e, c * (Rational(1) / factorial(n)));
            out = out + t;
        }
        return out;
    };
    std::vector<std::function<NestedLaurentSeries(int)>> parts;
    Exp shift(r, 0);
    auto add_factor = [&](const IntVec& v, bool den) {
        RatVec c = solve_rows(sigma, to_rat(v));
        int lead = 0;
        while (lead < r && sgn(c[lead]) == 0) ++lead;
        if (lead == r) throw Error(ErrorKind::Input, "zero vector in a residue kernel");
        long jph = kernel.linear ? 0 : mod(-dot(v, theta), q);
        Cyclotomic w = f.zeta(jph);
        bool trivial = jph == 0;
        int sg = den ? -1 : 1;
        if (trivial)
            for (int l = 0; l <= lead; ++l) shift[l] += sg;
        parts.push_back([=, &form_series, &exp_series](int N) {
                             int extra = trivial ? lead + 1 : 0;
                             NestedLaurentSeries l = form_series(c, N + extra);
                             NestedLaurentSeries s(r, q, N);
                             if (kernel.linear) {
                                 for (const auto& [e, x] : l.terms()) {
                                     Exp e2 = e;
                                     for (int t = 0; t <= lead; ++t) --e2[t];
                                     s.add_term(e2, x);
                                 }
                             } else {
                                 // 1 - w e^{-l}
                                 NestedLaurentSeries E = exp_series(l, f.rat(-1), N + extra);
                                 NestedLaurentSeries S = NestedLaurentSeries::constant(r, f.one(), N + extra);
                                 for (const auto& [e, x] : E.terms()) S.add_term(e, x * w * Rational(-1));
                                 for (const auto& [e, x] : S.terms()) {
                                     Exp e2 = e;
                                     if (trivial)
                                         for (int t = 0; t <= lead; ++t) --e2[t];
                                     bool neg = std::any_of(e2.begin(), e2.end(), [](int y) { return y < 0; });
                                     if (neg) {
                                         if (!x.is_zero()) throw Error(ErrorKind::OracleMismatch, "non-divisible factor");
                                         continue;
                                     }
                                     s.add_term(e2, x);
                                 }
                             }
                             return den ? s.invert_unit() : s;
                         });
    };
    for (const auto& v : kernel.denominators) add_factor(v, true);
    for (const auto& v : kernel.numerators) add_factor(v, false);
    Exp target(r);
    int N = 0;
    for (int i = 0; i < r; ++i) {
        target[i] = -(r - i) - shift[i];
        if (target[i] < 0) return f.zero();
        N += target[i];
    }
    NestedLaurentSeries total = NestedLaurentSeries::constant(r, f.one(), N);
    RatVec ca = kernel.a.empty() ? RatVec(r) : solve_rows(sigma, to_rat(kernel.a));
    total = total * exp_series(form_series(ca, N), f.one(), N);
    for (auto& p : parts) total = total * p(N);
    Cyclotomic v = total.coeff(target);
    v *= Rational(1) / Rational(abs(det(sigma)));
    if (kernel.sign < 0) v = -v;
    long pa = kernel.a.empty() ? 0 : mod(dot(kernel.a, theta), q);
    return v * f.zeta(pa);
}

Integer assemble_count(const Rational& v) {
    if (v.get_den() != 1) throw Error(ErrorKind::NotRational, "multiplicity " + to_string(v) + " is not an integer");
    if (v < 0) throw Error(ErrorKind::NegativeMultiplicity, "multiplicity " + to_string(v) + " is negative");
    return v.get_num();
}

QuasiPolynomial assemble(long q, const std::vector<std::vector<Cyclotomic>>& cosets) {
    std::vector<UniPoly> out;
    for (long c = 0; c < q; ++c) {
        std::vector<Rational> co;
        if (c < static_cast<long>(cosets.size()))
            for (const auto& x : cosets[c]) co.push_back(cyclotomic_to_rational(x));
        out.emplace_back(co);
    }
    return QuasiPolynomial(q, out);
}

}  // namespace kroncalc
