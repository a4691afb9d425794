#include "kroncalc/quasipoly.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>

#include "kroncalc/cyclotomic.hpp"
#include "kroncalc/errors.hpp"
#include "kroncalc/modular.hpp"

namespace kroncalc {

QuasiPolynomial::QuasiPolynomial(long period) : cosets_(period) {
    if (period < 1) throw Error(ErrorKind::Input, "period must be positive");
}

QuasiPolynomial::QuasiPolynomial(long period, std::vector<UniPoly> cosets) : cosets_(std::move(cosets)) {
    if (period < 1 || static_cast<long>(cosets_.size()) != period)
        throw Error(ErrorKind::Input, "coset count must equal the period");
}

QuasiPolynomial QuasiPolynomial::constant(const Rational& c) {
    return QuasiPolynomial(1, {UniPoly::constant(c)});
}

long QuasiPolynomial::degree() const {
    long d = -1;
    for (const auto& p : cosets_) d = std::max(d, p.degree());
    return d;
}

bool QuasiPolynomial::is_zero() const {
    return std::all_of(cosets_.begin(), cosets_.end(), [](const UniPoly& p) { return p.is_zero(); });
}

Rational QuasiPolynomial::operator()(long k) const {
    long q = period();
    long r = ((k % q) + q) % q;
    return cosets_[r](Rational(k));
}

Rational quasipoly_evaluate(const QuasiPolynomial& p, long k) {
    if (k < 0) throw Error(ErrorKind::Input, "quasi-polynomial evaluated at negative k");
    return p(k);
}

QuasiPolynomial QuasiPolynomial::with_period(long Q) const {
    long q = period();
    if (Q % q) throw Error(ErrorKind::Input, "new period must be a multiple of the old one");
    std::vector<UniPoly> v(Q);
    for (long r = 0; r < Q; ++r) v[r] = cosets_[r % q];
    return QuasiPolynomial(Q, std::move(v));
}

QuasiPolynomial QuasiPolynomial::reduced() const {
    long q = period();
    for (long d = 1; d <= q; ++d) {
        if (q % d) continue;
        bool ok = true;
        for (long r = d; r < q && ok; ++r) ok = cosets_[r] == cosets_[r % d];
        if (ok) return QuasiPolynomial(d, std::vector<UniPoly>(cosets_.begin(), cosets_.begin() + d));
    }
    return *this;
}

QuasiPolynomial& QuasiPolynomial::operator+=(const QuasiPolynomial& o) {
    long L = std::lcm(period(), o.period());
    if (L != period()) *this = with_period(L);
    for (long r = 0; r < L; ++r) cosets_[r] += o.cosets_[r % o.period()];
    return *this;
}

QuasiPolynomial& QuasiPolynomial::operator*=(const Rational& r) {
    for (auto& p : cosets_) p *= r;
    return *this;
}

bool QuasiPolynomial::operator==(const QuasiPolynomial& o) const {
    long L = std::lcm(period(), o.period());
    auto a = with_period(L), b = o.with_period(L);
    return a.cosets_ == b.cosets_;
}

namespace {

std::string k_power(long j) {
    if (j == 0) return "";
    if (j == 1) return "k";
    return "k^" + std::to_string(j);
}

void push_term(std::vector<std::pair<int, std::string>>& out, const Rational& c, const std::string& tail) {
    if (sgn(c) == 0) return;
    Rational a = abs(c);
    std::string body;
    if (a != 1 || tail.empty()) body = to_string(a);
    if (!tail.empty()) body += (body.empty() ? "" : " ") + tail;
    out.emplace_back(sgn(c), body);
}

}  // namespace

std::string QuasiPolynomial::to_string() const {
    QuasiPolynomial p = reduced();
    long q = p.period();
    if (q > 2) return p.coset_table();
    long deg = p.degree();
    std::vector<std::pair<int, std::string>> terms;
    for (long j = deg; j >= 0; --j) {
        Rational f0 = p.cosets_[0].coeff(j);
        Rational f1 = q == 2 ? p.cosets_[1].coeff(j) : f0;
        Rational A = (f0 + f1) / 2, B = (f0 - f1) / 2;
        if (j == 0) {
            push_term(terms, A, "");
            push_term(terms, B, "(-1)^k");
        } else if (sgn(B) == 0) {
            push_term(terms, A, k_power(j));
        } else if (sgn(A) == 0) {
            push_term(terms, B, "(-1)^k " + k_power(j));
        } else {
            std::string inner = kroncalc::to_string(A) + (sgn(B) < 0 ? " - " : " + ") +
                                kroncalc::to_string(Rational(abs(B))) + " (-1)^k";
            terms.emplace_back(1, "(" + inner + ") " + k_power(j));
        }
    }
    if (terms.empty()) return "0";
    std::string s;
    for (size_t i = 0; i < terms.size(); ++i) {
        if (i == 0)
            s += (terms[i].first < 0 ? "-" : "") + terms[i].second;
        else
            s += (terms[i].first < 0 ? " - " : " + ") + terms[i].second;
    }
    return s;
}

std::string QuasiPolynomial::coset_table() const {
    std::string s = "period " + std::to_string(period()) + ":";
    for (long r = 0; r < period(); ++r) s += "\n  k = " + std::to_string(r) + " mod " + std::to_string(period()) + ": " + cosets_[r].to_string();
    return s;
}

QuasiPolynomial quasipoly_interpolate(const std::vector<std::pair<long, Rational>>& samples, long q, long R) {
    if (q < 1 || R < 0) throw Error(ErrorKind::Input, "interpolate: need q >= 1 and R >= 0");
    std::vector<std::map<long, Rational>> by(q);
    for (const auto& [k, v] : samples) {
        long r = ((k % q) + q) % q;
        auto it = by[r].find(k);
        if (it != by[r].end() && it->second != v)
            throw Error(ErrorKind::InconsistentSamples, "two values at k=" + std::to_string(k));
        by[r][k] = v;
    }
    std::vector<UniPoly> cos(q);
    for (long r = 0; r < q; ++r) {
        if (static_cast<long>(by[r].size()) < R + 1)
            throw Error(ErrorKind::UnderdeterminedCoset, "coset " + std::to_string(r) + " has " +
                                                             std::to_string(by[r].size()) + " samples, need " +
                                                             std::to_string(R + 1));
        std::vector<Rational> xs, ys;
        for (const auto& [k, v] : by[r]) {
            if (static_cast<long>(xs.size()) == R + 1) break;
            xs.emplace_back(k);
            ys.push_back(v);
        }
        cos[r] = interpolate(xs, ys);
        for (const auto& [k, v] : by[r])
            if (cos[r](Rational(k)) != v)
                throw Error(ErrorKind::InconsistentSamples, "sample at k=" + std::to_string(k) + " does not fit");
    }
    return QuasiPolynomial(q, std::move(cos));
}

namespace {

using QPoly = std::vector<Rational>;

void trim(QPoly& p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

QPoly mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i) {
        if (sgn(a[i]) == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

QPoly one_minus_t(long a) {
    QPoly p(a + 1);
    p[0] = 1;
    p[a] = -1;
    return p;
}

QPoly cyclo(long d) {
    QPoly p;
    for (const auto& c : cyclotomic_polynomial(d)) p.emplace_back(c);
    return p;
}

// exact division by a monic integer polynomial; false if a remainder is left
bool divide_exact(QPoly& num, const QPoly& den) {
    QPoly n = num;
    trim(n);
    size_t dn = den.size() - 1;
    if (n.empty()) return true;
    if (n.size() <= dn) return false;
    QPoly quo(n.size() - dn);
    Rational lead = den.back();
    for (size_t i = n.size(); i-- > dn;) {
        Rational c = n[i] / lead;
        quo[i - dn] = c;
        if (sgn(c) == 0) continue;
        for (size_t j = 0; j <= dn; ++j) n[i - dn + j] -= c * den[j];
    }
    for (size_t i = 0; i < dn; ++i)
        if (sgn(n[i]) != 0) return false;
    trim(quo);
    num = std::move(quo);
    return true;
}

std::vector<long> divisors(long n) {
    std::vector<long> d;
    for (long i = 1; i <= n; ++i)
        if (n % i == 0) d.push_back(i);
    return d;
}

}  // namespace

HilbertSeries::HilbertSeries(std::vector<Rational> numerator, std::vector<long> denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
    trim(num_);
    for (long a : den_)
        if (a < 1) throw Error(ErrorKind::Input, "denominator exponents must be positive");
    std::sort(den_.begin(), den_.end());
}

std::vector<Rational> HilbertSeries::taylor(long n_terms) const {
    std::vector<Rational> s(n_terms);
    for (size_t i = 0; i < num_.size() && static_cast<long>(i) < n_terms; ++i) s[i] = num_[i];
    for (long a : den_) {
        // divide by (1 - t^a)
        for (long i = a; i < n_terms; ++i) s[i] += s[i - a];
    }
    return s;
}

HilbertSeries HilbertSeries::with_denominator(std::vector<long> dens) const {
    // num * prod(1 - t^b, b in dens) / prod(1 - t^a, a in den_)
    QPoly n = num_;
    for (long b : dens) n = mul(n, one_minus_t(b));
    std::map<long, long> need;
    for (long a : den_)
        for (long d : divisors(a)) ++need[d];
    for (auto& [d, m] : need) {
        QPoly c = cyclo(d);
        for (long i = 0; i < m; ++i)
            if (!divide_exact(n, c))
                throw Error(ErrorKind::Input, "requested denominator does not clear the series denominator");
    }
    // 1 - t^a = -prod Phi_d
    if (den_.size() % 2)
        for (auto& x : n) x = -x;
    return HilbertSeries(std::move(n), std::move(dens));
}

namespace {

// n / (1 - t^a) when exact
bool divide_binomial(QPoly& n, long a) {
    trim(n);
    long len = static_cast<long>(n.size());
    if (len == 0) return true;
    if (len <= a) return false;
    QPoly s(len - a);
    for (long i = 0; i < len; ++i) {
        Rational v = n[i];
        if (i >= a) v += s[i - a];
        if (i < len - a)
            s[i] = std::move(v);
        else if (sgn(v) != 0)
            return false;
    }
    n = std::move(s);
    return true;
}

// coefficients of n over Z/p; nullopt if a denominator vanishes mod p
std::optional<std::vector<std::uint64_t>> reduce_mod(const QPoly& n, std::uint64_t p) {
    std::vector<std::uint64_t> c(n.size());
    mpz_class P(std::to_string(p)), r;
    for (size_t i = 0; i < n.size(); ++i) {
        mpz_class num = n[i].get_num() % P, den = n[i].get_den() % P;
        if (num < 0) num += P;
        if (mpz_invert(r.get_mpz_t(), den.get_mpz_t(), P.get_mpz_t()) == 0) return std::nullopt;
        r = (r * num) % P;
        c[i] = std::stoull(r.get_str());
    }
    return c;
}

// multiplicity of the root z of c over Z/p, at most cap
long root_multiplicity_mod(std::vector<std::uint64_t> c, std::uint64_t z, std::uint64_t p, long cap) {
    long m = 0;
    while (m < cap && c.size() > 1) {
        // synthetic division by (t - z)
        std::vector<std::uint64_t> quo(c.size() - 1);
        std::uint64_t acc = 0;
        for (size_t i = c.size(); i-- > 0;) {
            acc = static_cast<std::uint64_t>((static_cast<unsigned __int128>(acc) * z + c[i]) % p);
            if (i > 0) quo[i - 1] = acc;
        }
        if (acc != 0) break;
        c = std::move(quo);
        ++m;
    }
    return m;
}

}  // namespace

HilbertSeries HilbertSeries::factored() const {
    // pole orders at the roots of unity, read off modulo a prime; the exact division below checks them
    std::map<long, long> pole;
    long L = 1;
    for (long a : den_) {
        L = lcm_long(L, a);
        for (long d : divisors(a)) ++pole[d];
    }
    if (!den_.empty() && !num_.empty()) {
        std::uint64_t p = select_primes(L, 1)[0];
        auto c = reduce_mod(num_, p);
        bool ok = c.has_value();
        if (ok)
            for (auto& [d, m] : pole) m -= root_multiplicity_mod(*c, primitive_root_of_unity(d, p), p, m);
        if (ok) {
            std::vector<long> chosen;
            while (true) {
                long best = 0;
                for (auto& [d, m] : pole)
                    if (m > 0) best = std::max(best, d);
                if (best == 0) break;
                chosen.push_back(best);
                for (long d : divisors(best)) {
                    auto it = pole.find(d);
                    if (it != pole.end() && it->second > 0) --it->second;
                }
            }
            QPoly n = num_;
            for (long b : chosen) {
                n.resize(n.size() + b);
                for (size_t i = n.size(); i-- > static_cast<size_t>(b);) n[i] -= n[i - b];
            }
            for (long a : den_) ok = ok && divide_binomial(n, a);
            if (ok) return HilbertSeries(std::move(n), std::move(chosen));
        }
    }
    return factored_by_trial_division();
}

HilbertSeries HilbertSeries::factored_by_trial_division() const {
    std::map<long, long> mult;
    for (long a : den_)
        for (long d : divisors(a)) ++mult[d];
    QPoly n = num_;
    for (auto& [d, m] : mult) {
        QPoly c = cyclo(d);
        while (m > 0) {
            QPoly t = n;
            if (!divide_exact(t, c)) break;
            n = std::move(t);
            --m;
        }
    }
    std::vector<long> chosen;
    while (true) {
        long best = 0;
        for (auto& [d, m] : mult)
            if (m > 0) best = std::max(best, d);
        if (best == 0) break;
        chosen.push_back(best);
        for (long d : divisors(best)) {
            auto it = mult.find(d);
            if (it != mult.end() && it->second > 0) --it->second;
        }
    }
    return with_denominator(chosen);
}

bool HilbertSeries::numerator_is_integral() const {
    return std::all_of(num_.begin(), num_.end(), [](const Rational& x) { return x.get_den() == 1; });
}

std::string HilbertSeries::to_string() const {
    std::string top;
    for (size_t i = 0; i < num_.size(); ++i) {
        const Rational& c = num_[i];
        if (sgn(c) == 0) continue;
        Rational a = abs(c);
        std::string mono = i == 0 ? "" : (i == 1 ? "t" : "t^" + std::to_string(i));
        std::string body = (a != 1 || mono.empty()) ? kroncalc::to_string(a) : "";
        if (!mono.empty()) body += body.empty() ? mono : "*" + mono;
        if (top.empty())
            top = (sgn(c) < 0 ? "-" : "") + body;
        else
            top += (sgn(c) < 0 ? " - " : " + ") + body;
    }
    if (top.empty()) return "0";
    if (den_.empty()) return top;
    std::map<long, long> cnt;
    for (long a : den_) ++cnt[a];
    std::string bot;
    for (auto& [a, m] : cnt) {
        bot += "(1 - t" + (a == 1 ? std::string() : "^" + std::to_string(a)) + ")";
        if (m > 1) bot += "^" + std::to_string(m);
    }
    bool simple_top = top.find(' ') == std::string::npos;
    return (simple_top ? top : "(" + top + ")") + "/(" + bot + ")";
}

HilbertSeries quasipoly_to_generating_series(const QuasiPolynomial& p, bool factor) {
    long q = p.period();
    long R = std::max<long>(p.degree(), 0);
    if (p.is_zero()) return HilbertSeries({}, {});
    // per coset: sum_j P_f(j) s^j = N_f(s) / (1 - s)^{R+1}
    QPoly total;
    QPoly base{1};
    for (long i = 0; i <= R; ++i) base = mul(base, one_minus_t(1));
    for (long f = 0; f < q; ++f) {
        UniPoly Pf = p.coset(f).compose_affine(Rational(q), Rational(f));
        QPoly vals(R + 1);
        for (long j = 0; j <= R; ++j) vals[j] = Pf(Rational(j));
        QPoly Nf = mul(vals, base);
        Nf.resize(R + 1);
        // t^f * N_f(t^q)
        QPoly term(f + q * R + 1);
        for (long j = 0; j <= R; ++j) term[f + q * j] = Nf[j];
        if (term.size() > total.size()) total.resize(term.size());
        for (size_t i = 0; i < term.size(); ++i) total[i] += term[i];
    }
    HilbertSeries hs(std::move(total), std::vector<long>(R + 1, q));
    return factor ? hs.factored() : hs;
}

}  // namespace kroncalc
