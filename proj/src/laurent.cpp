#include "kroncalc/laurent.hpp"

#include <algorithm>

#include "kroncalc/errors.hpp"

namespace kroncalc {

NestedLaurentSeries::NestedLaurentSeries(int nvars, long order, int truncation, std::vector<int> pole_caps)
    : nvars_(nvars), order_(order), trunc_(truncation), caps_(std::move(pole_caps)) {
    if (caps_.empty()) caps_.assign(nvars_, 0);
    if (static_cast<int>(caps_.size()) != nvars_) throw Error(ErrorKind::Input, "pole cap size mismatch");
}

NestedLaurentSeries NestedLaurentSeries::constant(int nvars, const Cyclotomic& c, int truncation) {
    NestedLaurentSeries s(nvars, c.order(), truncation);
    s.add_term(Exponent(nvars, 0), c);
    return s;
}

NestedLaurentSeries NestedLaurentSeries::monomial(const Exponent& e, const Cyclotomic& c, int truncation) {
    std::vector<int> caps(e.size());
    for (size_t i = 0; i < e.size(); ++i) caps[i] = std::min(0, e[i]);
    NestedLaurentSeries s(static_cast<int>(e.size()), c.order(), truncation, caps);
    s.add_term(e, c);
    return s;
}

int NestedLaurentSeries::total(const Exponent& e) {
    int t = 0;
    for (int x : e) t += x;
    return t;
}

Cyclotomic NestedLaurentSeries::coeff(const Exponent& e) const {
    if (total(e) > trunc_)
        throw Error(ErrorKind::TruncationInsufficient,
                    "coefficient of total degree " + std::to_string(total(e)) + " beyond truncation " +
                        std::to_string(trunc_));
    auto it = terms_.find(e);
    return it == terms_.end() ? Cyclotomic(order_) : it->second;
}

void NestedLaurentSeries::add_term(const Exponent& e, const Cyclotomic& c) {
    if (static_cast<int>(e.size()) != nvars_) throw Error(ErrorKind::Input, "exponent size mismatch");
    for (int i = 0; i < nvars_; ++i)
        if (e[i] < caps_[i]) throw Error(ErrorKind::Input, "term violates pole cap");
    if (total(e) > trunc_ || c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

NestedLaurentSeries NestedLaurentSeries::operator+(const NestedLaurentSeries& o) const {
    std::vector<int> caps(nvars_);
    for (int i = 0; i < nvars_; ++i) caps[i] = std::min(caps_[i], o.caps_[i]);
    NestedLaurentSeries r(nvars_, order_, std::min(trunc_, o.trunc_), caps);
    for (const auto& [e, c] : terms_) r.add_term(e, c);
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

NestedLaurentSeries NestedLaurentSeries::operator*(const NestedLaurentSeries& o) const {
    if (o.nvars_ != nvars_ || o.order_ != order_) throw Error(ErrorKind::Input, "series shape mismatch");
    std::vector<int> caps(nvars_);
    int capsum_a = 0, capsum_b = 0;
    for (int i = 0; i < nvars_; ++i) {
        caps[i] = caps_[i] + o.caps_[i];
        capsum_a += caps_[i];
        capsum_b += o.caps_[i];
    }
    // a term of a is known through trunc_a; the product is exact through
    // min(trunc_a + lowest total of b, trunc_b + lowest total of a)
    int trunc = std::min(trunc_ + capsum_b, o.trunc_ + capsum_a);
    NestedLaurentSeries r(nvars_, order_, trunc, caps);
    Exponent e(nvars_);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            for (int i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
            if (total(e) > trunc) continue;
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

NestedLaurentSeries NestedLaurentSeries::invert_unit() const {
    Exponent zero(nvars_, 0);
    for (const auto& [e, c] : terms_)
        for (int x : e)
            if (x < 0) throw Error(ErrorKind::NonUnitInversion, "series has a polar part");
    auto it = terms_.find(zero);
    if (it == terms_.end()) throw Error(ErrorKind::NonUnitInversion, "zero constant term");
    Cyclotomic c0inv = it->second.inverse();
    // 1/(c0 (1 + r)) = c0^{-1} sum (-r)^n
    NestedLaurentSeries mr(nvars_, order_, trunc_);
    for (const auto& [e, c] : terms_)
        if (e != zero) mr.add_term(e, -(c * c0inv));
    NestedLaurentSeries acc = constant(nvars_, Cyclotomic(order_, Rational(1)), trunc_);
    NestedLaurentSeries power = acc;
    for (int n = 1; n <= trunc_; ++n) {
        power = power * mr;
        if (power.terms_.empty()) break;
        acc = acc + power;
    }
    NestedLaurentSeries out(nvars_, order_, trunc_);
    for (const auto& [e, c] : acc.terms_) out.add_term(e, c * c0inv);
    return out;
}

std::string NestedLaurentSeries::to_string() const {
    std::string s;
    for (const auto& [e, c] : terms_) {
        if (!s.empty()) s += " + ";
        s += "(" + c.to_string() + ")";
        for (int i = 0; i < nvars_; ++i)
            if (e[i] != 0) s += "*x" + std::to_string(i + 1) + "^" + std::to_string(e[i]);
    }
    return s.empty() ? "0" : s;
}

NestedLaurentSeries laurent_series_arith(const NestedLaurentSeries& a, const NestedLaurentSeries& b, char op) {
    if (op == '+') return a + b;
    if (op == '*') return a * b;
    throw Error(ErrorKind::Input, std::string("unknown series op ") + op);
}

NestedLaurentSeries laurent_invert_unit(const NestedLaurentSeries& a) { return a.invert_unit(); }

}  // namespace kroncalc
