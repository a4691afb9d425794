#include "kroncalc/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <numeric>

#include "kroncalc/errors.hpp"

namespace kroncalc {

namespace {

std::vector<Integer> poly_divide_exact(std::vector<Integer> num, const std::vector<Integer>& den) {
    // den monic
    size_t dn = den.size() - 1;
    std::vector<Integer> quo(num.size() - dn, 0);
    for (size_t i = num.size(); i-- > dn;) {
        Integer c = num[i];
        quo[i - dn] = c;
        if (c == 0) continue;
        for (size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
    }
    return quo;
}

}  // namespace

const std::vector<Integer>& cyclotomic_polynomial(long q) {
    static std::mutex mu;
    static std::map<long, std::vector<Integer>> cache;
    if (q < 1) throw Error(ErrorKind::Input, "cyclotomic order must be positive");
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(q);
        if (it != cache.end()) return it->second;
    }
    std::vector<Integer> p(q + 1, 0);
    p[0] = -1;
    p[q] = 1;
    for (long d = 1; d < q; ++d) {
        if (q % d) continue;
        p = poly_divide_exact(p, cyclotomic_polynomial(d));
    }
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(q, std::move(p)).first->second;
}

long euler_phi(long q) {
    long r = q;
    long n = q;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        while (n % p == 0) n /= p;
        r -= r / p;
    }
    if (n > 1) r -= r / n;
    return r;
}

Cyclotomic::Cyclotomic(long order) : order_(order), c_(euler_phi(order)) {}

Cyclotomic::Cyclotomic(long order, const Rational& c) : Cyclotomic(order) { c_[0] = c; }

Cyclotomic::Cyclotomic(long order, std::vector<Rational> coeffs) : order_(order) {
    c_ = reduce(order, std::move(coeffs));
}

std::vector<Rational> Cyclotomic::reduce(long q, std::vector<Rational> v) {
    const auto& phi = cyclotomic_polynomial(q);
    size_t n = phi.size() - 1;
    for (size_t i = v.size(); i-- > n;) {
        if (sgn(v[i]) == 0) continue;
        Rational c = v[i];
        for (size_t j = 0; j < n; ++j) {
            if (phi[j] != 0) v[i - n + j] -= c * phi[j];
        }
        v[i] = 0;
    }
    v.resize(n);
    return v;
}

Cyclotomic Cyclotomic::zeta_power(long order, long j) {
    j %= order;
    if (j < 0) j += order;
    std::vector<Rational> v(j + 1);
    v[j] = 1;
    return Cyclotomic(order, std::move(v));
}

bool Cyclotomic::is_zero() const {
    for (const auto& x : c_)
        if (sgn(x) != 0) return false;
    return true;
}

bool Cyclotomic::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (sgn(c_[i]) != 0) return false;
    return true;
}

Cyclotomic Cyclotomic::lift(long Q) const {
    if (Q % order_) throw Error(ErrorKind::Input, "lift target must be a multiple of the order");
    long f = Q / order_;
    std::vector<Rational> v(f * (c_.size() - 1) + 1);
    for (size_t i = 0; i < c_.size(); ++i) v[f * i] = c_[i];
    return Cyclotomic(Q, std::move(v));
}

Cyclotomic Cyclotomic::conj() const {
    std::vector<Rational> v(order_);
    for (size_t i = 0; i < c_.size(); ++i) v[(order_ - static_cast<long>(i)) % order_] += c_[i];
    return Cyclotomic(order_, std::move(v));
}

Cyclotomic Cyclotomic::inverse() const {
    if (is_zero()) throw Error(ErrorKind::NonUnitInversion, "inverse of zero cyclotomic");
    if (is_rational()) return Cyclotomic(order_, Rational(1) / c_[0]);
    // product of the non-identity Galois conjugates is norm/x
    Cyclotomic prod(order_, Rational(1));
    for (long a = 2; a < order_; ++a) {
        if (std::gcd(a, order_) != 1) continue;
        std::vector<Rational> v(order_);
        for (size_t i = 0; i < c_.size(); ++i) v[(a * static_cast<long>(i)) % order_] += c_[i];
        prod *= Cyclotomic(order_, std::move(v));
    }
    Cyclotomic norm = prod * *this;
    if (!norm.is_rational()) throw Error(ErrorKind::NotRational, "norm is not rational");
    return prod * (Rational(1) / norm.c_[0]);
}

void Cyclotomic::check_same(const Cyclotomic& o) const {
    if (o.order_ != order_) throw Error(ErrorKind::Input, "cyclotomic order mismatch");
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
    check_same(o);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) {
    check_same(o);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
    check_same(o);
    if (c_.size() == 1) {
        c_[0] *= o.c_[0];
        return *this;
    }
    std::vector<Rational> v(2 * c_.size() - 1);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (sgn(c_[i]) == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) {
            if (sgn(o.c_[j]) == 0) continue;
            v[i + j] += c_[i] * o.c_[j];
        }
    }
    c_ = reduce(order_, std::move(v));
    return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Rational& r) {
    for (auto& x : c_) x *= r;
    return *this;
}

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic r(*this);
    for (auto& x : r.c_) x = -x;
    return r;
}

bool Cyclotomic::operator==(const Cyclotomic& o) const { return order_ == o.order_ && c_ == o.c_; }

std::string Cyclotomic::to_string() const {
    std::string s;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (sgn(c_[i]) == 0) continue;
        if (!s.empty()) s += " + ";
        s += "(" + kroncalc::to_string(c_[i]) + ")";
        if (i > 0) s += "*z" + std::to_string(order_) + "^" + std::to_string(i);
    }
    return s.empty() ? "0" : s;
}

Rational cyclotomic_to_rational(const Cyclotomic& c) {
    if (!c.is_rational()) throw Error(ErrorKind::NotRational, c.to_string());
    return c.constant();
}

}  // namespace kroncalc
