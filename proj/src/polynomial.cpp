#include "kroncalc/polynomial.hpp"

#include "kroncalc/errors.hpp"

namespace kroncalc {

UniPoly::UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

UniPoly UniPoly::constant(const Rational& c) { return UniPoly({c}); }

UniPoly UniPoly::monomial(long deg, const Rational& c) {
    std::vector<Rational> v(deg + 1);
    v[deg] = c;
    return UniPoly(std::move(v));
}

void UniPoly::trim() {
    while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

Rational UniPoly::coeff(long i) const {
    if (i < 0 || i >= static_cast<long>(c_.size())) return 0;
    return c_[i];
}

Rational UniPoly::operator()(const Rational& x) const {
    Rational r = 0;
    for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
    return r;
}

UniPoly& UniPoly::operator+=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

UniPoly& UniPoly::operator*=(const Rational& r) {
    for (auto& x : c_) x *= r;
    trim();
    return *this;
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return UniPoly();
    std::vector<Rational> v(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i)
        for (size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    return UniPoly(std::move(v));
}

UniPoly UniPoly::compose_affine(const Rational& a, const Rational& b) const {
    UniPoly r;
    UniPoly lin({b, a});
    for (size_t i = c_.size(); i-- > 0;) {
        r = r * lin;
        r += UniPoly::constant(c_[i]);
    }
    return r;
}

std::string UniPoly::to_string(const std::string& var) const {
    if (c_.empty()) return "0";
    std::string s;
    for (size_t i = c_.size(); i-- > 0;) {
        const Rational& c = c_[i];
        if (sgn(c) == 0) continue;
        Rational a = abs(c);
        if (s.empty()) {
            if (sgn(c) < 0) s += "-";
        } else {
            s += sgn(c) < 0 ? " - " : " + ";
        }
        std::string mono;
        if (i >= 1) mono = var + (i > 1 ? "^" + std::to_string(i) : "");
        if (i == 0 || a != 1) {
            s += kroncalc::to_string(a);
            if (!mono.empty()) s += " ";
        }
        s += mono;
    }
    return s;
}

UniPoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
    size_t n = xs.size();
    if (ys.size() != n) throw Error(ErrorKind::Input, "interpolate: size mismatch");
    // Newton divided differences
    std::vector<Rational> dd(ys);
    for (size_t j = 1; j < n; ++j) {
        for (size_t i = n - 1; i >= j; --i) {
            Rational den = xs[i] - xs[i - j];
            if (sgn(den) == 0) throw Error(ErrorKind::Input, "interpolate: repeated abscissa");
            dd[i] = (dd[i] - dd[i - 1]) / den;
            if (i == j) break;
        }
    }
    UniPoly r;
    for (size_t i = n; i-- > 0;) {
        r = r * UniPoly({-xs[i], 1});
        r += UniPoly::constant(dd[i]);
    }
    return r;
}

}  // namespace kroncalc
