#pragma once

#include <map>
#include <string>
#include <vector>

#include "kroncalc/cyclotomic.hpp"

namespace kroncalc {

// Sparse multivariate Laurent series with Cyclotomic coefficients, truncated in total degree.
// Variables are ordered outermost first.
class NestedLaurentSeries {
public:
    using Exponent = std::vector<int>;

    NestedLaurentSeries(int nvars, long order, int truncation, std::vector<int> pole_caps = {});

    static NestedLaurentSeries constant(int nvars, const Cyclotomic& c, int truncation);
    static NestedLaurentSeries monomial(const Exponent& e, const Cyclotomic& c, int truncation);

    int nvars() const { return nvars_; }
    long field_order() const { return order_; }
    int truncation() const { return trunc_; }
    const std::vector<int>& pole_caps() const { return caps_; }
    const std::map<Exponent, Cyclotomic>& terms() const { return terms_; }

    // throws TruncationInsufficient beyond the stored order
    Cyclotomic coeff(const Exponent& e) const;
    void add_term(const Exponent& e, const Cyclotomic& c);

    NestedLaurentSeries operator+(const NestedLaurentSeries& o) const;
    NestedLaurentSeries operator*(const NestedLaurentSeries& o) const;
    NestedLaurentSeries invert_unit() const;

    std::string to_string() const;

private:
    int nvars_;
    long order_;
    int trunc_;
    std::vector<int> caps_;
    std::map<Exponent, Cyclotomic> terms_;

    static int total(const Exponent& e);
};

NestedLaurentSeries laurent_series_arith(const NestedLaurentSeries& a, const NestedLaurentSeries& b, char op);
NestedLaurentSeries laurent_invert_unit(const NestedLaurentSeries& a);

}  // namespace kroncalc
