#pragma once

#include <string>
#include <utility>
#include <vector>

#include "kroncalc/polynomial.hpp"

namespace kroncalc {

class HilbertSeries;

// k -> cosets[k mod period](k)
class QuasiPolynomial {
public:
    QuasiPolynomial() : QuasiPolynomial(1) {}
    explicit QuasiPolynomial(long period);
    QuasiPolynomial(long period, std::vector<UniPoly> cosets);
    static QuasiPolynomial constant(const Rational& c);

    long period() const { return static_cast<long>(cosets_.size()); }
    const std::vector<UniPoly>& cosets() const { return cosets_; }
    const UniPoly& coset(long r) const { return cosets_[r]; }
    UniPoly& coset(long r) { return cosets_[r]; }
    long degree() const;
    bool is_zero() const;

    Rational operator()(long k) const;

    // same function, period multiplied up to Q
    QuasiPolynomial with_period(long Q) const;
    // same function, smallest period dividing the current one
    QuasiPolynomial reduced() const;

    QuasiPolynomial& operator+=(const QuasiPolynomial& o);
    QuasiPolynomial& operator*=(const Rational& r);
    friend QuasiPolynomial operator+(QuasiPolynomial a, const QuasiPolynomial& b) { return a += b; }
    friend QuasiPolynomial operator*(QuasiPolynomial a, const Rational& r) { return a *= r; }
    // equal as functions on k >= 0
    bool operator==(const QuasiPolynomial& o) const;

    // polynomial + (-1)^k form when the period allows it, else the coset table
    std::string to_string() const;
    std::string coset_table() const;

private:
    std::vector<UniPoly> cosets_;
};

Rational quasipoly_evaluate(const QuasiPolynomial& p, long k);

// throws UnderdeterminedCoset / InconsistentSamples
QuasiPolynomial quasipoly_interpolate(const std::vector<std::pair<long, Rational>>& samples, long q,
                                      long R);

HilbertSeries quasipoly_to_generating_series(const QuasiPolynomial& p, bool factor = true);

// numerator(t) / prod (1 - t^a)
class HilbertSeries {
public:
    HilbertSeries() = default;
    HilbertSeries(std::vector<Rational> numerator, std::vector<long> denominator);

    const std::vector<Rational>& numerator() const { return num_; }
    const std::vector<long>& denominator() const { return den_; }

    std::vector<Rational> taylor(long n_terms) const;
    // same rational function with denominator prod (1 - t^a), a in dens; throws if not possible
    HilbertSeries with_denominator(std::vector<long> dens) const;
    // cancel common cyclotomic factors and pick a small product of (1 - t^a)
    HilbertSeries factored() const;
    // same result, by dividing out cyclotomic factors one at a time (slow for large periods)
    HilbertSeries factored_by_trial_division() const;

    bool numerator_is_integral() const;
    std::string to_string() const;

private:
    std::vector<Rational> num_;
    std::vector<long> den_;
};

}  // namespace kroncalc
