#include <random>

#include "gtest/gtest.h"
#include "kroncalc/cyclotomic.hpp"
#include "kroncalc/errors.hpp"
#include "kroncalc/json_io.hpp"
#include "kroncalc/laurent.hpp"
#include "kroncalc/quasipoly.hpp"

using namespace kroncalc;

namespace {

Rational R(long n, long d = 1) { return make_rational(n, d); }

QuasiPolynomial parity_pattern() {
    return QuasiPolynomial(2, {UniPoly::constant(1), UniPoly()});
}

QuasiPolynomial from_series(const HilbertSeries& h, long q, long deg) {
    auto coeffs = h.taylor(q * (deg + 1) + q);
    std::vector<std::pair<long, Rational>> s;
    for (long k = 0; k < static_cast<long>(coeffs.size()); ++k) s.emplace_back(k, coeffs[k]);
    return quasipoly_interpolate(s, q, deg);
}

}  // namespace

TEST(rational, parse_and_print) {
    EXPECT_EQ(parse_rational("6/4"), R(3, 2));
    EXPECT_EQ(parse_rational("-7"), R(-7));
    EXPECT_EQ(to_string(R(-3, 6)), "-1/2");
    EXPECT_THROW(parse_rational("1/0"), Error);
    EXPECT_THROW(parse_rational("x"), Error);
}

TEST(quasipoly, evaluate_parity_pattern) {
    auto p = parity_pattern();
    EXPECT_EQ(quasipoly_evaluate(p, 4), 1);
    EXPECT_EQ(quasipoly_evaluate(p, 5), 0);
}

TEST(quasipoly, evaluate_zero) { EXPECT_EQ(quasipoly_evaluate(QuasiPolynomial(3), 7), 0); }

TEST(quasipoly, quthrit_invariants_at_six) {
    // t^6 in 1/((1-t^2)(1-t^3)(1-t^4)): 2+2+2, 3+3, 2+4
    HilbertSeries h({R(1)}, {2, 3, 4});
    auto p = from_series(h, 12, 2);
    EXPECT_EQ(quasipoly_evaluate(p, 6), 3);
}

TEST(quasipoly, generating_series_parity) {
    auto h = quasipoly_to_generating_series(parity_pattern());
    EXPECT_EQ(h.denominator(), std::vector<long>({2}));
    EXPECT_EQ(h.numerator(), std::vector<Rational>({R(1)}));
}

TEST(quasipoly, generating_series_constant) {
    auto h = quasipoly_to_generating_series(QuasiPolynomial::constant(1));
    EXPECT_EQ(h.denominator(), std::vector<long>({1}));
    EXPECT_EQ(h.numerator(), std::vector<Rational>({R(1)}));
}

TEST(quasipoly, generating_series_quthrit) {
    HilbertSeries h({R(1)}, {2, 3, 4});
    auto p = from_series(h, 12, 2);
    auto g = quasipoly_to_generating_series(p);
    EXPECT_EQ(g.taylor(61), h.taylor(61));
    EXPECT_EQ(g.denominator(), std::vector<long>({2, 3, 4}));
    EXPECT_EQ(g.numerator(), std::vector<Rational>({R(1)}));
}

TEST(quasipoly, interpolate_parity) {
    auto p = quasipoly_interpolate({{0, R(1)}, {2, R(1)}, {1, R(0)}, {3, R(0)}}, 2, 0);
    EXPECT_EQ(p, parity_pattern());
}

TEST(quasipoly, interpolate_linear) {
    auto p = quasipoly_interpolate({{0, R(1)}, {1, R(18)}, {2, R(35)}}, 1, 1);
    EXPECT_EQ(p.coset(0), UniPoly({R(1), R(17)}));
    EXPECT_EQ(p.to_string(), "17 k + 1");
}

TEST(quasipoly, interpolate_quadratic_with_sign) {
    // 1/4 k^2 + 1/2 k + 5/8 + 3/8 (-1)^k on k = 0..5
    std::vector<std::pair<long, Rational>> s;
    for (long k = 0; k <= 5; ++k) {
        Rational v = R(k * k, 4) + R(k, 2) + R(5, 8) + (k % 2 ? R(-3, 8) : R(3, 8));
        s.emplace_back(k, v);
    }
    auto p = quasipoly_interpolate(s, 2, 2);
    EXPECT_EQ(p.to_string(), "1/4 k^2 + 1/2 k + 5/8 + 3/8 (-1)^k");
}

TEST(quasipoly, interpolate_errors) {
    EXPECT_THROW(
        {
            try {
                quasipoly_interpolate({{0, R(1)}, {2, R(1)}, {1, R(0)}}, 2, 1);
            } catch (const Error& e) {
                EXPECT_EQ(e.kind(), ErrorKind::UnderdeterminedCoset);
                throw;
            }
        },
        Error);
    EXPECT_THROW(
        {
            try {
                quasipoly_interpolate({{0, R(1)}, {1, R(2)}, {2, R(5)}}, 1, 1);
            } catch (const Error& e) {
                EXPECT_EQ(e.kind(), ErrorKind::InconsistentSamples);
                throw;
            }
        },
        Error);
}

TEST(quasipoly, mixed_period_sum) {
    auto a = parity_pattern();
    QuasiPolynomial b(3, {UniPoly::constant(1), UniPoly::constant(2), UniPoly::constant(3)});
    auto c = a + b;
    EXPECT_EQ(c.period(), 6);
    for (long k = 0; k < 20; ++k) EXPECT_EQ(c(k), a(k) + b(k));
}

TEST(quasipoly, reduced_period) {
    auto p = parity_pattern().with_period(12);
    EXPECT_EQ(p.reduced().period(), 2);
}

TEST(quasipoly, generating_series_roundtrip_random) {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        long q = 1 + rng() % 6, deg = rng() % 4;
        std::vector<UniPoly> cos;
        for (long r = 0; r < q; ++r) {
            std::vector<Rational> c;
            for (long i = 0; i <= deg; ++i) c.push_back(R(static_cast<long>(rng() % 21) - 10, 1 + rng() % 5));
            cos.emplace_back(c);
        }
        QuasiPolynomial p(q, cos);
        auto h = quasipoly_to_generating_series(p);
        long n = 5 * q * (deg + 1);
        auto t = h.taylor(n + 1);
        for (long k = 0; k <= n; ++k) ASSERT_EQ(t[k], p(k)) << "q=" << q << " k=" << k;
        auto raw = quasipoly_to_generating_series(p, false);
        EXPECT_EQ(raw.taylor(n + 1), t);
        auto slow = raw.factored_by_trial_division();
        EXPECT_EQ(h.numerator(), slow.numerator());
        EXPECT_EQ(h.denominator(), slow.denominator());
    }
}

TEST(quasipoly, json_roundtrip) {
    QuasiPolynomial p(2, {UniPoly({R(5, 8) + R(3, 8), R(1, 2), R(1, 4)}), UniPoly({R(1, 4), R(1, 2), R(1, 4)})});
    auto j = to_json(p);
    EXPECT_EQ(j["period"], 2);
    EXPECT_EQ(j["cosets"][0][0], "1");
    EXPECT_EQ(quasipoly_from_json(json::parse(j.dump())), p);
    HilbertSeries h({R(1), R(0), R(0), R(0), R(0), R(0), R(0), R(0), R(0), R(1)}, {1, 2, 2, 3, 4});
    EXPECT_EQ(hilbert_from_json(json::parse(to_json(h).dump())).taylor(40), h.taylor(40));
}

TEST(hilbert, with_denominator) {
    HilbertSeries h({R(1)}, {2});
    auto g = h.with_denominator({2, 2});
    EXPECT_EQ(g.numerator(), std::vector<Rational>({R(1), R(0), R(-1)}));
    EXPECT_EQ(g.taylor(30), h.taylor(30));
    EXPECT_THROW(h.with_denominator({3}), Error);
    EXPECT_EQ(h.to_string(), "1/((1 - t^2))");
}

TEST(cyclotomic, to_rational) {
    // zeta_4^2 + 2 = 1
    auto c = Cyclotomic::zeta_power(4, 2) + Cyclotomic(4, R(2));
    EXPECT_EQ(cyclotomic_to_rational(c), 1);
    auto d = Cyclotomic::zeta_power(3, 1) + Cyclotomic::zeta_power(3, 2);
    EXPECT_EQ(cyclotomic_to_rational(d), -1);
    try {
        cyclotomic_to_rational(Cyclotomic::zeta_power(3, 1));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotRational);
    }
}

TEST(cyclotomic, field_identities) {
    for (long q : {1, 2, 3, 4, 5, 6, 8, 9, 12, 15, 60}) {
        auto z = Cyclotomic::zeta_power(q, 1);
        Cyclotomic p(q, R(1));
        for (long i = 0; i < q; ++i) p *= z;
        EXPECT_EQ(p, Cyclotomic(q, R(1))) << q;
        // Phi_q(zeta) = 0
        Cyclotomic acc(q);
        const auto& phi = cyclotomic_polynomial(q);
        for (size_t i = 0; i < phi.size(); ++i) acc += Cyclotomic::zeta_power(q, static_cast<long>(i)) * Rational(phi[i]);
        EXPECT_TRUE(acc.is_zero()) << q;
        EXPECT_EQ(static_cast<long>(phi.size()) - 1, euler_phi(q));
    }
}

TEST(cyclotomic, conjugation_and_inverse) {
    std::mt19937 rng(3);
    for (long q : {3, 5, 8, 12}) {
        for (int t = 0; t < 10; ++t) {
            std::vector<Rational> a, b;
            for (long i = 0; i < q; ++i) {
                a.push_back(R(static_cast<long>(rng() % 9) - 4, 1 + rng() % 3));
                b.push_back(R(static_cast<long>(rng() % 9) - 4));
            }
            Cyclotomic x(q, a), y(q, b);
            EXPECT_EQ((x * y).conj(), x.conj() * y.conj());
            EXPECT_EQ((x + y).conj(), x.conj() + y.conj());
            if (!x.is_zero()) EXPECT_EQ(x * x.inverse(), Cyclotomic(q, R(1)));
        }
    }
    EXPECT_EQ(Cyclotomic::zeta_power(4, 1).lift(12), Cyclotomic::zeta_power(12, 3));
}

TEST(laurent, pole_times_zero) {
    Cyclotomic one(1, R(1));
    auto a = NestedLaurentSeries::monomial({-1}, one, 4);
    auto b = NestedLaurentSeries::monomial({1}, one, 4);
    auto c = laurent_series_arith(a, b, '*');
    EXPECT_EQ(c.terms().size(), 1u);
    EXPECT_EQ(c.coeff({0}), one);
}

TEST(laurent, invert_geometric) {
    Cyclotomic one(1, R(1));
    NestedLaurentSeries a(1, 1, 3);
    a.add_term({0}, one);
    a.add_term({1}, Cyclotomic(1, R(-1)));
    auto inv = laurent_invert_unit(a);
    for (int i = 0; i <= 3; ++i) EXPECT_EQ(inv.coeff({i}), one);
    EXPECT_THROW(inv.coeff({4}), Error);
    NestedLaurentSeries polar(1, 1, 3, {-1});
    polar.add_term({-1}, one);
    EXPECT_THROW(laurent_invert_unit(polar), Error);
}

TEST(laurent, todd_series) {
    // (1 - e^{-x})/x = sum (-1)^n x^n/(n+1)!, inverted
    int order = 6;
    NestedLaurentSeries h(1, 1, order);
    Integer f = 1;
    for (int n = 0; n <= order; ++n) {
        f *= (n + 1);
        h.add_term({n}, Cyclotomic(1, Rational((n % 2 ? -1 : 1), f)));
    }
    auto todd = h.invert_unit();
    EXPECT_EQ(todd.coeff({0}).constant(), R(1));
    EXPECT_EQ(todd.coeff({1}).constant(), R(1, 2));
    EXPECT_EQ(todd.coeff({2}).constant(), R(1, 12));
    EXPECT_EQ(todd.coeff({3}).constant(), R(0));
    EXPECT_EQ(todd.coeff({4}).constant(), R(-1, 720));
}

TEST(laurent, multiplication_associative_commutative) {
    std::mt19937 rng(11);
    auto rand_series = [&](int trunc) {
        NestedLaurentSeries s(3, 3, trunc, {-1, -1, 0});
        for (int t = 0; t < 6; ++t) {
            std::vector<int> e{static_cast<int>(rng() % 3) - 1, static_cast<int>(rng() % 3) - 1,
                               static_cast<int>(rng() % 3)};
            std::vector<Rational> c{R(static_cast<long>(rng() % 7) - 3), R(static_cast<long>(rng() % 5) - 2)};
            s.add_term(e, Cyclotomic(3, c));
        }
        return s;
    };
    for (int t = 0; t < 10; ++t) {
        auto a = rand_series(6), b = rand_series(6), c = rand_series(6);
        auto ab = a * b, ba = b * a;
        EXPECT_EQ(ab.terms(), ba.terms());
        auto l = (a * b) * c, r = a * (b * c);
        int trunc = std::min(l.truncation(), r.truncation());
        for (const auto& [e, v] : l.terms()) {
            int tot = e[0] + e[1] + e[2];
            if (tot <= trunc) EXPECT_EQ(v, r.coeff(e));
        }
    }
}
