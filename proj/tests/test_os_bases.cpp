#include <gtest/gtest.h>

#include <random>

#include "kroncalc/errors.hpp"
#include "kroncalc/os_bases.hpp"

using namespace kroncalc;

namespace {

struct Setup {
    ReducedSystem R;
    IntMat A;
};

Setup make(const IntMat& w, const Lattice& lat) {
    Setup s{reduce_system({w, lat, ""}), {}};
    s.A = admissible_hyperplanes(s.R, false);
    return s;
}

Setup make(const IntMat& w) { return make(w, Lattice::generated_by(w)); }

std::vector<OrderedBasis> filter_by_cone(const ReducedSystem& R, const RatVec& v) {
    std::vector<OrderedBasis> out;
    for (const auto& b : os_bases_bruteforce(R)) {
        RatVec c = cone_coefficients(R, b, v);
        if (std::all_of(c.begin(), c.end(), [](const Rational& x) { return sgn(x) > 0; })) out.push_back(b);
    }
    return out;
}

// Restricted differences e_p - e_q (p<q) of the product basis of C^a ⊗ C^b, as weights of U(a) x U(b).
IntMat tensor_roots(const std::vector<int>& dims) {
    std::vector<IntVec> pos;
    long M = 1, tot = 0;
    for (int d : dims) M *= d, tot += d;
    for (long p = 0; p < M; ++p) {
        IntVec v(tot, 0);
        long x = p, off = 0;
        for (int d : dims) {
            v[off + x % d] = 1;
            x /= d;
            off += d;
        }
        pos.push_back(v);
    }
    IntMat out;
    for (long p = 0; p < M; ++p)
        for (long q = p + 1; q < M; ++q) {
            IntVec v(tot);
            for (long c = 0; c < tot; ++c) v[c] = pos[p][c] - pos[q][c];
            if (std::any_of(v.begin(), v.end(), [](long y) { return y != 0; })) out.push_back(v);
        }
    return out;
}

}  // namespace

TEST(OSBases, ToySystem) {
    auto s = make({{2, 0}, {1, 1}, {0, 2}});
    auto all = os_bases(s.R, s.A);
    EXPECT_EQ(all, (std::vector<OrderedBasis>{{0, 1}, {0, 2}}));
    EXPECT_EQ(all, os_bases_bruteforce(s.R));
    EXPECT_EQ(adapted_os_bases(s.R, s.R.reduce({1, 3}), s.A), (std::vector<OrderedBasis>{{0, 2}}));
    EXPECT_EQ(adapted_os_bases(s.R, s.R.reduce({3, 1}), s.A), (std::vector<OrderedBasis>{{0, 1}, {0, 2}}));
    EXPECT_TRUE(adapted_os_bases(s.R, s.R.reduce({-1, -1}), s.A).empty());
    EXPECT_THROW(adapted_os_bases(s.R, s.R.reduce({1, 1}), s.A), Error);
}

TEST(OSBases, StandardBasis) {
    auto s = make({{1, 0}, {0, 1}}, Lattice::standard(2));
    EXPECT_EQ(os_bases(s.R, s.A), (std::vector<OrderedBasis>{{0, 1}}));
    EXPECT_EQ(adapted_os_bases(s.R, s.R.reduce({1, 2}), s.A), (std::vector<OrderedBasis>{{0, 1}}));
}

TEST(OSBases, A2) {
    auto s = make({{1, -1, 0}, {0, 1, -1}, {1, 0, -1}});
    EXPECT_EQ(os_bases(s.R, s.A).size(), 2u);
    EXPECT_EQ(os_bases(s.R, s.A), os_bases_bruteforce(s.R));
}

TEST(OSBases, RecursionMatchesDefinitionOnTensorSystems) {
    for (auto dims : {std::vector<int>{2, 2}, std::vector<int>{3, 2}, std::vector<int>{2, 2, 2}}) {
        IntMat w = tensor_roots(dims);
        auto s = make(w);
        EXPECT_EQ(os_bases(s.R, s.A), os_bases_bruteforce(s.R));
    }
}

TEST(OSBases, AdaptedMatchesConeFilter) {
    std::mt19937 rng(11);
    for (auto dims : {std::vector<int>{2, 2}, std::vector<int>{3, 2}, std::vector<int>{2, 2, 2}}) {
        auto s = make(tensor_roots(dims));
        for (int trial = 0; trial < 40; ++trial) {
            RatVec v(s.R.rank);
            for (auto& x : v) x = Rational(static_cast<long>(rng() % 41) - 12, 1 + rng() % 7);
            std::vector<OrderedBasis> got;
            try {
                got = adapted_os_bases(s.R, v, s.A);
            } catch (const Error& e) {
                EXPECT_EQ(e.kind(), ErrorKind::NotRegular);
                continue;
            }
            EXPECT_EQ(got, filter_by_cone(s.R, v));
        }
    }
}

TEST(OSBases, AdaptedDependsOnlyOnTope) {
    auto s = make(tensor_roots({3, 2}));
    std::mt19937 rng(5);
    std::map<std::vector<int>, std::vector<OrderedBasis>> seen;
    long hits = 0;
    for (int trial = 0; trial < 300; ++trial) {
        RatVec v(s.R.rank);
        for (auto& x : v) x = static_cast<long>(rng() % 15) - 3;
        Tope t;
        try {
            t = tope_of(v, s.A);
        } catch (const Error&) {
            continue;
        }
        auto got = adapted_os_bases(s.R, v, s.A);
        auto it = seen.find(t.signs);
        if (it == seen.end()) seen.emplace(t.signs, got);
        else {
            ++hits;
            EXPECT_EQ(it->second, got);
        }
    }
    EXPECT_GT(hits, 0);
}
