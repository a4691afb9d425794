#pragma once

#include <string>
#include <vector>

#include "kroncalc/rational.hpp"

namespace kroncalc {

// Dense univariate polynomial with rational coefficients, ascending degree.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<Rational> coeffs);
    static UniPoly constant(const Rational& c);
    static UniPoly monomial(long deg, const Rational& c = 1);

    const std::vector<Rational>& coeffs() const { return c_; }
    // -1 for the zero polynomial
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    Rational coeff(long i) const;

    Rational operator()(const Rational& x) const;

    UniPoly& operator+=(const UniPoly& o);
    UniPoly& operator-=(const UniPoly& o);
    UniPoly& operator*=(const Rational& r);
    friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
    friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
    friend UniPoly operator*(UniPoly a, const Rational& r) { return a *= r; }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
    bool operator==(const UniPoly& o) const { return c_ == o.c_; }

    // p(a*x + b)
    UniPoly compose_affine(const Rational& a, const Rational& b) const;

    std::string to_string(const std::string& var = "k") const;

private:
    std::vector<Rational> c_;
    void trim();
};

// Unique polynomial of degree < xs.size() through the points; xs distinct.
UniPoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys);

}  // namespace kroncalc
