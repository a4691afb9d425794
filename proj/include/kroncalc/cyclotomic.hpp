#pragma once

#include <string>
#include <vector>

#include "kroncalc/rational.hpp"

namespace kroncalc {

// Integer coefficients of the q-th cyclotomic polynomial, ascending degree.
const std::vector<Integer>& cyclotomic_polynomial(long q);
long euler_phi(long q);

// Element of Q(zeta_q) in the power basis 1, zeta, ..., zeta^{phi(q)-1}.
class Cyclotomic {
public:
    Cyclotomic() : Cyclotomic(1) {}
    explicit Cyclotomic(long order);
    Cyclotomic(long order, const Rational& c);
    Cyclotomic(long order, std::vector<Rational> coeffs);

    // zeta_q^j for any integer j
    static Cyclotomic zeta_power(long order, long j);

    long order() const { return order_; }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_rational() const;
    Rational constant() const { return c_[0]; }

    // embed into Q(zeta_Q), Q a multiple of order()
    Cyclotomic lift(long Q) const;
    // zeta -> zeta^{-1}
    Cyclotomic conj() const;
    Cyclotomic inverse() const;

    Cyclotomic& operator+=(const Cyclotomic& o);
    Cyclotomic& operator-=(const Cyclotomic& o);
    Cyclotomic& operator*=(const Cyclotomic& o);
    Cyclotomic& operator*=(const Rational& r);
    friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
    friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
    friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
    friend Cyclotomic operator*(Cyclotomic a, const Rational& r) { return a *= r; }
    Cyclotomic operator-() const;
    bool operator==(const Cyclotomic& o) const;

    std::string to_string() const;

private:
    long order_;
    std::vector<Rational> c_;
    void check_same(const Cyclotomic& o) const;
    // reduce an arbitrary-length coefficient vector mod Phi_q
    static std::vector<Rational> reduce(long q, std::vector<Rational> v);
};

// throws NotRational
Rational cyclotomic_to_rational(const Cyclotomic& c);

}  // namespace kroncalc
