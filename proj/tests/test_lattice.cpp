#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "kroncalc/errors.hpp"
#include "kroncalc/lattice.hpp"

using namespace kroncalc;

namespace {

WeightSystem toy() {
    IntMat w{{2, 0}, {1, 1}, {0, 2}};
    return {w, Lattice::generated_by(w), "toy"};
}

WeightSystem a2() {
    IntMat w{{1, -1, 0}, {0, 1, -1}, {1, 0, -1}};
    return {w, Lattice::generated_by(w), "A2"};
}

std::vector<long> as_longs(const std::vector<Integer>& v) {
    std::vector<long> out;
    for (const auto& x : v) out.push_back(x.get_si());
    return out;
}

}  // namespace

TEST(Lattice, MembershipAndCoords) {
    Lattice even = Lattice::generated_by({{1, 1}, {1, -1}});
    EXPECT_TRUE(even.contains({2, 0}));
    EXPECT_TRUE(even.contains({3, 1}));
    EXPECT_FALSE(even.contains({1, 0}));
    EXPECT_THROW(even.coords(IntVec{1, 0}), Error);
    IntVec c = even.coords(IntVec{3, 1});
    IntVec back(2, 0);
    for (long i = 0; i < even.rank(); ++i)
        for (long j = 0; j < 2; ++j) back[j] += c[i] * even.basis()[i][j];
    EXPECT_EQ(back, (IntVec{3, 1}));
}

TEST(Lattice, ElementaryDivisors) {
    EXPECT_EQ(as_longs(elementary_divisors({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, Lattice::standard(3))),
              (std::vector<long>{1, 1, 1}));
    EXPECT_EQ(as_longs(elementary_divisors({{2, 0}, {0, 2}}, Lattice::standard(2))), (std::vector<long>{2, 2}));
    Lattice even = Lattice::generated_by({{1, 1}, {1, -1}});
    EXPECT_EQ(as_longs(elementary_divisors({{2, 0}, {0, 2}}, even)), (std::vector<long>{1, 2}));
    try {
        elementary_divisors({{1, 1}}, Lattice::standard(2));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::RankDeficient);
    }
}

TEST(Lattice, SystemIndex) {
    EXPECT_EQ(system_index(toy()), 2);
    WeightSystem std3{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, Lattice::standard(3), "e"};
    EXPECT_EQ(system_index(std3), 1);
    EXPECT_EQ(system_index(a2()), 1);
}

TEST(Lattice, SystemIndexCap) {
    auto R = reduce_system(toy());
    try {
        system_index_data(R, 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::EnumerationCapExceeded);
    }
    auto full = system_index_data(R, 1000, 3);
    EXPECT_EQ(full.q, 3);
    EXPECT_TRUE(full.full_grid);
    EXPECT_EQ(full.torsion.size(), 9u);
}

TEST(Lattice, TorsionUnionContainsSolutions) {
    // every stored point theta satisfies <beta, theta> integral for all vectors of some basis
    auto R = reduce_system(toy());
    auto d = system_index_data(R);
    EXPECT_EQ(d.q, 2);
    EXPECT_EQ(d.torsion.size(), 2u);
    for (const auto& th : d.torsion) {
        bool found = false;
        for (size_t i = 0; i < R.vectors.size() && !found; ++i)
            for (size_t j = i + 1; j < R.vectors.size() && !found; ++j) {
                if (det_long({R.vectors[i], R.vectors[j]}) == 0) continue;
                found = dot(R.vectors[i], th) % d.q == 0 && dot(R.vectors[j], th) % d.q == 0;
            }
        EXPECT_TRUE(found);
    }
}

TEST(Lattice, IndexInvariantUnderPermutationAndBasisChange) {
    std::mt19937 rng(7);
    IntMat w{{1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {1, 0, 2}, {0, 3, 1}, {1, 1, 1}, {2, 0, 1}};
    long q0 = system_index({w, Lattice::standard(3), ""});
    EXPECT_GT(q0, 1);
    for (int trial = 0; trial < 10; ++trial) {
        IntMat p = w;
        std::shuffle(p.begin(), p.end(), rng);
        EXPECT_EQ(system_index({p, Lattice::standard(3), ""}), q0);
        // random unimodular U: product of elementary operations
        IntMat U{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
        for (int s = 0; s < 6; ++s) {
            int a = rng() % 3, b = (a + 1 + rng() % 2) % 3;
            long f = static_cast<long>(rng() % 5) - 2;
            for (int c = 0; c < 3; ++c) U[c][a] += f * U[c][b];
        }
        IntMat m;
        for (const auto& v : p) {
            IntVec x(3, 0);
            for (int c = 0; c < 3; ++c)
                for (int k = 0; k < 3; ++k) x[c] += v[k] * U[k][c];
            m.push_back(x);
        }
        EXPECT_EQ(system_index({m, Lattice::standard(3), ""}), q0);
    }
}

TEST(Lattice, DegenerateSystemUsesSpan) {
    // weights in a plane of Z^3: the induced lattice is Z^3 ∩ span
    IntMat w{{1, -1, 0}, {0, 1, -1}, {2, 0, -2}};
    WeightSystem s{w, Lattice::standard(3), ""};
    auto R = reduce_system(s);
    EXPECT_EQ(R.rank, 2);
    EXPECT_EQ(system_index(s), 2);
}

TEST(Lattice, AdmissibleHyperplanes) {
    EXPECT_EQ(admissible_hyperplanes(toy()), (IntMat{{0, 1}, {1, -1}, {1, 0}}));
    EXPECT_EQ(admissible_hyperplanes(WeightSystem{{{1, 0}, {0, 1}}, Lattice::standard(2), ""}),
              (IntMat{{0, 1}, {1, 0}}));
    auto R = reduce_system(a2());
    auto H = admissible_hyperplanes(R, false);
    EXPECT_EQ(H.size(), 3u);
}

TEST(Lattice, HyperplanesContainEnoughVectors) {
    IntMat w{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {0, 1, 1}, {1, 1, 1}, {1, 2, 1}};
    auto R = reduce_system({w, Lattice::standard(3), ""});
    auto H = admissible_hyperplanes(R, false);
    for (size_t a = 0; a < H.size(); ++a) {
        IntMat on;
        for (const auto& v : R.vectors)
            if (dot(H[a], v) == 0) on.push_back(v);
        EXPECT_EQ(rank(on), R.rank - 1);
        for (size_t b = a + 1; b < H.size(); ++b) EXPECT_NE(rank(IntMat{H[a], H[b]}), 1);
    }
}

TEST(Lattice, HyperplaneDiskCache) {
    auto dir = testing::TempDir() + "/kc_cache_test";
    setenv("KRONCALC_CACHE_DIR", dir.c_str(), 1);
    auto R = reduce_system(toy());
    auto first = admissible_hyperplanes(R, true);
    auto second = admissible_hyperplanes(R, true);
    unsetenv("KRONCALC_CACHE_DIR");
    EXPECT_EQ(first, second);
    EXPECT_EQ(first, admissible_hyperplanes(R, false));
}

TEST(Lattice, Topes) {
    IntMat H = admissible_hyperplanes(toy());
    EXPECT_EQ(tope_of({3, 1}, H).signs, (std::vector<int>{1, 1, 1}));
    EXPECT_EQ(tope_of({1, 3}, H).signs, (std::vector<int>{1, -1, 1}));
    try {
        tope_of({1, 1}, H);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotRegular);
        EXPECT_NE(std::string(e.what()).find("[1,-1]"), std::string::npos);
    }
    Tope t = tope_of({Rational(5, 2), Rational(1, 3)}, H);
    EXPECT_EQ(tope_of(t.witness, H), t);
}

TEST(Lattice, DeformPointKeepsSigns) {
    IntMat H = admissible_hyperplanes(toy());
    RatVec v{1, 1};
    RatVec d{Rational(1, 4), 0};
    RatVec out = deform_point(v, d, H);
    EXPECT_EQ(tope_of(out, H).signs, (std::vector<int>{1, 1, 1}));
    EXPECT_EQ(deform_point({3, 1}, d, H), (RatVec{3, 1}));
    EXPECT_THROW(deform_point({1, 1}, {1, 1}, H), Error);
    std::mt19937 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        RatVec p{static_cast<long>(rng() % 7), static_cast<long>(rng() % 7)};
        RatVec e{Rational(static_cast<long>(rng() % 9) - 4, 3), Rational(static_cast<long>(rng() % 9) - 4, 5)};
        RatVec q;
        try {
            q = deform_point(p, e, H);
        } catch (const Error&) {
            continue;
        }
        for (const auto& X : H) {
            int s0 = sgn(dot(X, p));
            int s1 = sgn(dot(X, q));
            if (s0 != 0) EXPECT_EQ(s0, s1);
            else EXPECT_EQ(sgn(dot(X, e)), s1);
        }
    }
}

TEST(Lattice, BranchingFamilyToy) {
    // U(2) ⊃ T: positions are the standard basis vectors of C^2
    IntMat positions{{1, 0}, {0, 1}};
    WeightSystem sys{{{1, 0}, {0, 1}}, Lattice::standard(2), ""};
    auto R = reduce_system(sys);
    auto A = admissible_hyperplanes(R, false);
    std::vector<std::vector<int>> perms{{0, 1}, {1, 0}};
    auto F = branching_family(A, perms, positions, R);
    EXPECT_LE(F.size(), A.size() * perms.size());
    EXPECT_GE(F.size(), 1u);
    for (const auto& h : F) {
        if (h.w == std::vector<int>{0, 1})
            EXPECT_EQ(branching_pairing(h, {1, 0}, {1, 0}, positions, R), 0);
    }
}

TEST(Lattice, DeformToRegular) {
    IntMat positions{{1, 0}, {0, 1}};
    auto R = reduce_system({{{1, 0}, {0, 1}}, Lattice::standard(2), ""});
    auto A = admissible_hyperplanes(R, false);
    auto F = branching_family(A, {{0, 1}, {1, 0}}, positions, R);
    // regular input is returned unchanged
    auto reg = deform_to_regular({3, 0}, {1, 1}, F, {0, 0}, {0, 0}, positions, R);
    EXPECT_EQ(reg.t, 0);
    EXPECT_EQ(reg.xi, (RatVec{3, 0}));
    // singular input: zero pairings take the sign along the direction
    RatVec e1{Rational(1, 4), Rational(1, 8)}, e2{0, 0};
    auto d = deform_to_regular({1, 0}, {1, 0}, F, e1, e2, positions, R);
    EXPECT_GT(d.t, 0);
    EXPECT_LT(d.t, 1);
    for (size_t i = 0; i < F.size(); ++i) {
        Rational b = branching_pairing(F[i], {1, 0}, {1, 0}, positions, R);
        Rational e = branching_pairing(F[i], e1, e2, positions, R);
        EXPECT_EQ(d.signs[i], sgn(b) != 0 ? sgn(b) : sgn(e));
        EXPECT_NE(d.signs[i], 0);
    }
    try {
        deform_to_regular({1, 0}, {1, 0}, F, {0, 0}, {0, 0}, positions, R);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::DirectionSingular);
    }
}
