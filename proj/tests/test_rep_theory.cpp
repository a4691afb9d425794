#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "kroncalc/errors.hpp"
#include "kroncalc/oracle.hpp"
#include "kroncalc/rep_theory.hpp"

using namespace kroncalc;

namespace {

// partitions of d with at most n parts, padded to n
std::vector<IntVec> partitions(long d, int n) {
    std::vector<IntVec> out;
    IntVec cur;
    std::function<void(long, long)> rec = [&](long rest, long maxp) {
        if (static_cast<int>(cur.size()) == n) {
            if (rest == 0) out.push_back(cur);
            return;
        }
        for (long x = std::min(rest, maxp); x >= 0; --x) {
            cur.push_back(x);
            rec(rest - x, x);
            cur.pop_back();
        }
    };
    rec(d, d);
    return out;
}

}  // namespace

TEST(RepTheory, UnitaryGroup) {
    auto g = UnitaryGroupData::make(4);
    EXPECT_EQ(g.positive_roots.size(), 6u);
    EXPECT_EQ(g.rho, (IntVec{3, 2, 1, 0}));
    auto S = symmetric_group(4);
    EXPECT_EQ(S.size(), 24u);
    int sum = 0;
    for (const auto& [w, s] : S) sum += s;
    EXPECT_EQ(sum, 0);
    // sign is multiplicative
    for (size_t i = 0; i < S.size(); i += 5)
        for (size_t j = 0; j < S.size(); j += 7) {
            Perm c(4);
            for (int a = 0; a < 4; ++a) c[a] = S[i].first[S[j].first[a]];
            EXPECT_EQ(perm_sign(c), S[i].second * S[j].second);
        }
}

TEST(RepTheory, RestrictedRoots) {
    auto r23 = restricted_roots({2, 3});
    EXPECT_EQ(r23.embedded_X, (IntVec{7, 6, 5, 4, 3, 2}));
    auto r22 = restricted_roots({2, 2});
    EXPECT_EQ(r22.psi.size(), 6u);
    auto r33 = restricted_roots({3, 3});
    EXPECT_EQ(r33.psi.size(), 36u);
    std::set<IntVec> distinct(r33.psi.begin(), r33.psi.end());
    EXPECT_EQ(distinct.size(), 24u);
    for (const auto* rr : {&r23, &r22, &r33})
        for (const auto& v : rr->psi) {
            EXPECT_GT(dot(rr->X, v), 0);
            EXPECT_FALSE(std::all_of(v.begin(), v.end(), [](long x) { return x == 0; }));
        }
    auto r333 = restricted_roots({3, 3, 3});
    EXPECT_EQ(r333.M, 27);
    for (long p = 0; p + 1 < r333.M; ++p) EXPECT_GT(r333.embedded_X[p], r333.embedded_X[p + 1]);
}

TEST(RepTheory, LeviData) {
    IntVec lam{1, 1, 1, 0, 0, 0, 0, 0, 0};
    auto full = levi_data(lam, 3, true);
    EXPECT_EQ(full.runs.size(), 2u);
    EXPECT_EQ(full.coset_count, 84);
    auto part = levi_data(lam, 3, false);
    EXPECT_EQ(part.coset_count, 504);
    auto reg = levi_data({4, 3, 2, 1}, 4, false);
    EXPECT_TRUE(reg.sigma_roots.empty());
    EXPECT_EQ(reg.coset_count, 24);
    auto rect = levi_data({2, 2, 2}, 0, true);
    EXPECT_EQ(rect.coset_count, 1);
    EXPECT_TRUE(rect.du_pairs.empty());
    for (const auto* L : {&full, &part, &reg}) {
        long M = 0;
        for (const auto& r : L->runs) M += static_cast<long>(r.size());
        long n = 0;
        std::set<Perm> seen;
        for_each_coset(*L, M, [&](const Perm& w) {
            ++n;
            seen.insert(w);
            for (const auto& r : L->runs)
                for (size_t i = 0; i + 1 < r.size(); ++i) EXPECT_LT(w[r[i]], w[r[i + 1]]);
            return true;
        });
        EXPECT_EQ(Integer(n), L->coset_count);
        EXPECT_EQ(seen.size(), static_cast<size_t>(n));
    }
    EXPECT_THROW(levi_data({0, 1}, 2, false), Error);
}

TEST(RepTheory, Polarize) {
    auto t2 = torus_roots(2);
    auto id = polarize({0, 1}, {{0, 1}}, t2);
    EXPECT_EQ(id.flips, 0);
    EXPECT_EQ(id.shift, (IntVec{0, 0}));
    auto sw = polarize({1, 0}, {{0, 1}}, t2);
    EXPECT_EQ(sw.flips, 1);
    EXPECT_EQ(sw.shift, (IntVec{-1, 1}));
    EXPECT_EQ(sw.psi, (IntMat{{1, -1}}));
    auto r22 = restricted_roots({2, 2});
    Perm w{2, 0, 3, 1};
    auto pol = polarize(w, r22.pairs, r22);
    int neg = 0;
    for (auto [a, b] : r22.pairs) {
        IntVec d(r22.kdim);
        for (long c = 0; c < r22.kdim; ++c) d[c] = r22.positions[w[a]][c] - r22.positions[w[b]][c];
        if (dot(r22.X, d) < 0) ++neg;
    }
    EXPECT_EQ(pol.flips, neg);
    EXPECT_GT(neg, 0);
    for (const auto& v : pol.psi) EXPECT_GT(dot(r22.X, v), 0);
}

TEST(RepTheory, InteriorPoint) {
    auto rr = restricted_roots({3, 3});
    auto L = levi_data({2, 1, 0, 0, 0, 0, 0, 0, 0}, 3, false);
    auto e = random_interior_point(rr, L, 7);
    Rational total = 0;
    for (const auto& x : e.g_part) total += x;
    for (size_t i = 0; i + 1 < e.g_part.size(); ++i) EXPECT_GE(e.g_part[i], e.g_part[i + 1]);
    for (int a = 3; a < 9; ++a) EXPECT_EQ(e.g_part[a], e.g_part[3]);
    for (int j = 0; j < 2; ++j) {
        Rational s = 0;
        for (int t = 0; t < 3; ++t) s += e.k_part[3 * j + t];
        EXPECT_EQ(s, total);
        EXPECT_GT(e.k_part[3 * j], e.k_part[3 * j + 1]);
    }
    // same seed, same point
    EXPECT_EQ(random_interior_point(rr, L, 7).k_part, e.k_part);
}

TEST(RepTheory, BranchingSmall) {
    auto r22 = restricted_roots({2, 2});
    EXPECT_EQ(branching_multiplicity(r22, {2, 1, 0, 0}, {2, 1, 2, 1}, false).value, 1);
    EXPECT_EQ(branching_multiplicity(r22, {2, 1, 0, 0}, {2, 2, 2, 1}, false).value, 0);
    auto t2 = torus_roots(2);
    EXPECT_EQ(branching_multiplicity(t2, {2, 0}, {1, 1}, false).value, 1);
    EXPECT_EQ(branching_multiplicity(t2, {1, 0}, {0, 2}, false).value, 0);
    auto dil = branching_multiplicity(r22, {2, 1, 0, 0}, {2, 1, 2, 1}, true);
    for (long k = 1; k <= 4; ++k)
        EXPECT_EQ(dil.quasi(k), Rational(kostant_branching_bruteforce(4, {2, 2}, {2 * k, k, 0, 0}, {2 * k, k, 2 * k, k})));
}

TEST(RepTheory, BranchingMatchesOracle) {
    auto r22 = restricted_roots({2, 2});
    for (long d = 0; d <= 5; ++d)
        for (const auto& lam : partitions(d, 4))
            for (const auto& a : partitions(d, 2))
                for (const auto& b : partitions(d, 2)) {
                    IntVec mu{a[0], a[1], b[0], b[1]};
                    EXPECT_EQ(branching_multiplicity(r22, lam, mu, false).value,
                              kostant_branching_bruteforce(4, {2, 2}, lam, mu));
                }
    auto t3 = torus_roots(3);
    for (long d = 0; d <= 4; ++d)
        for (const auto& lam : partitions(d, 3))
            for (long x = 0; x <= d; ++x)
                for (long y = 0; x + y <= d; ++y) {
                    IntVec mu{x, y, d - x - y};
                    EXPECT_EQ(branching_multiplicity(t3, lam, mu, false).value,
                              kostant_branching_bruteforce(3, {1, 1, 1}, lam, mu));
                }
}

TEST(RepTheory, PrefilterNeverDropsTerms) {
    auto rr = restricted_roots({2, 2});
    BranchingOptions off;
    off.prefilter = false;
    for (const auto& lam : partitions(4, 4))
        for (const auto& a : partitions(4, 2)) {
            IntVec mu{a[0], a[1], 3, 1};
            auto x = branching_multiplicity(rr, lam, mu, false);
            auto y = branching_multiplicity(rr, lam, mu, false, off);
            EXPECT_EQ(x.value, y.value);
            EXPECT_LE(x.valid_cosets, y.valid_cosets);
        }
}

TEST(RepTheory, KroneckerSmallValues) {
    EXPECT_EQ(kronecker({2, 2, 2}, {{1, 1}, {1, 1}, {1, 1}}, false).value, 0);
    EXPECT_EQ(kronecker({2, 2, 2}, {{2, 2}, {2, 2}, {2, 2}}, false).value, 1);
    EXPECT_EQ(kronecker({2, 2, 2}, {{2, 1}, {2, 1}, {2, 1}}, false).value, 1);
    EXPECT_EQ(kronecker({2, 2}, {{2, 1}, {3, 0}}, false).value, 0);
    EXPECT_EQ(kronecker({2, 2}, {{2, 1}, {2, 1}}, false).value, 1);
    EXPECT_EQ(kronecker({2, 3}, {{2, 1}, {2, 1, 0}}, false).value, 1);
    EXPECT_EQ(kronecker({2, 2, 2}, {{2, 1}, {2, 1}, {2}}, false).value, 0);
    EXPECT_THROW(kronecker({2, 2, 2}, {{1, 1, 1}, {3}, {3}}, false), Error);
    // a U(1) factor only sees the content
    EXPECT_EQ(kronecker({2, 2, 2, 1}, {{2, 1}, {2, 1}, {2, 1}, {3}}, false).value, 1);
}

TEST(RepTheory, KroneckerMatchesOracleGrid) {
    for (auto dims : {std::vector<int>{2, 2, 2}, std::vector<int>{3, 2, 2}}) {
        for (long d = 0; d <= 6; ++d) {
            auto p0 = partitions(d, dims[0]), p1 = partitions(d, dims[1]), p2 = partitions(d, dims[2]);
            for (const auto& a : p0)
                for (const auto& b : p1)
                    for (const auto& c : p2) {
                        if (b > c && dims[1] == dims[2]) continue;
                        EXPECT_EQ(kronecker(dims, {a, b, c}, false).value, kronecker_bruteforce(dims, {a, b, c}));
                    }
        }
    }
}

TEST(RepTheory, KroneckerSymmetry) {
    std::vector<IntVec> p{{3, 2, 1}, {4, 2}, {3, 3}};
    Integer g = kronecker({3, 2, 2}, p, false).value;
    EXPECT_EQ(kronecker({2, 3, 2}, {p[1], p[0], p[2]}, false).value, g);
    EXPECT_EQ(kronecker({2, 2, 3}, {p[2], p[1], p[0]}, false).value, g);
    EXPECT_EQ(g, kronecker_bruteforce({3, 2, 2}, p));
}

TEST(RepTheory, Stabilization) {
    // U(5) and U(4) give the same coefficient when the first partition has at most 4 rows
    std::vector<IntVec> p{{3, 2, 1}, {4, 2}, {3, 3}};
    EXPECT_EQ(kronecker({5, 2, 2}, p, false).value, kronecker({4, 2, 2}, p, false).value);
    std::vector<IntVec> q{{2, 1, 1, 1}, {3, 2}, {4, 1}};
    EXPECT_EQ(kronecker({5, 2, 2}, q, false).value, kronecker({4, 2, 2}, q, false).value);
    EXPECT_EQ(kronecker({5, 2, 2}, {{1, 1, 1, 1, 1}, {3, 2}, {3, 2}}, false).value, 0);
}

TEST(RepTheory, DilatedBasics) {
    auto d = kronecker({2, 2, 2}, {{1, 1}, {1, 1}, {1, 1}}, true);
    EXPECT_EQ(d.quasi(0), 1);
    for (long k = 0; k < 10; ++k) EXPECT_EQ(d.quasi(k), k % 2 ? 0 : 1);
    auto e = kronecker({4, 2, 2}, {{5, 3, 2, 1}, {6, 5}, {6, 5}}, true);
    std::vector<UniPoly> c{UniPoly({Rational(1), Rational(1, 2), Rational(1, 4)}),
                           UniPoly({Rational(1, 4), Rational(1, 2), Rational(1, 4)})};
    EXPECT_EQ(e.quasi, QuasiPolynomial(2, c));
    EXPECT_TRUE(kronecker({2, 2, 2}, {{2, 1}, {3}, {2, 1}}, true).quasi.is_zero() == false);
    EXPECT_TRUE(kronecker({2, 2, 2}, {{2, 1}, {4}, {2, 1}}, true).quasi.is_zero());
}

TEST(RepTheory, RhoConventionIsInvisible) {
    IntMat psi{{1, 0, 1, 0}, {0, 1, 1, 0}, {1, 0, 0, 1}, {0, 1, 0, 1}};
    IntMat roots{{1, -1, 0, 0}, {0, 0, 1, -1}};
    for (IntVec lam : {IntVec{2, 1, 2, 1}, IntVec{3, 0, 2, 1}})
        EXPECT_EQ(multiplicity_K_bruteforce(psi, roots, {1, 0, 1, 0}, lam),
                  multiplicity_K_bruteforce(psi, roots, {4, 3, -2, -3}, lam));
}

TEST(RepTheory, ExpectedDegree) {
    EXPECT_EQ(expected_degree({2, 2, 2}), 1);
    EXPECT_EQ(expected_degree({3, 3, 3}), 11);
    EXPECT_EQ(expected_degree({6, 3, 2}), 8);
    EXPECT_EQ(expected_degree({2, 2, 2, 2}), 7);
}
