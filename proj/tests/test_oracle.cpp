#include <gtest/gtest.h>

#include "kroncalc/errors.hpp"
#include "kroncalc/oracle.hpp"

using namespace kroncalc;

TEST(Oracle, Knapsack) {
    // 4 = 4*1 = 2*1 + 2 = 2 + 2
    EXPECT_EQ(partition_count_dp({{1}, {2}}, {4}), 3);
    EXPECT_EQ(partition_count_dp({{1}, {2}}, {0}), 1);
    EXPECT_EQ(partition_count_dp({{1}, {2}}, {-1}), 0);
}

TEST(Oracle, ToySystem) {
    IntMat toy{{2, 0}, {1, 1}, {0, 2}};
    EXPECT_EQ(partition_count_dp(toy, {2, 4}), 2);
    EXPECT_EQ(partition_count_dp(toy, {1, 3}), 1);
    EXPECT_EQ(partition_count_dp(toy, {1, 2}), 0);
    EXPECT_EQ(partition_count_dp(toy, {4, 2}), 2);
}

TEST(Oracle, Errors) {
    try {
        partition_count_dp({{1, 0}, {-1, 0}}, {0, 0});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::UnboundedCone);
    }
    try {
        partition_count_dp({{0, 0}}, {0, 0});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Input);
    }
}

TEST(Oracle, ReflectionOrbit) {
    auto o = reflection_orbit({2, 1, 0}, {{1, -1, 0}, {0, 1, -1}, {1, 0, -1}});
    EXPECT_EQ(o.size(), 6u);
    int sum = 0;
    for (const auto& p : o) sum += p.second;
    EXPECT_EQ(sum, 0);
}

TEST(Oracle, ToyMultiplicityK) {
    IntMat toy{{2, 0}, {1, 1}, {0, 2}};
    IntMat roots{{1, -1}};
    EXPECT_EQ(multiplicity_K_bruteforce(toy, roots, {1, 0}, {4, 2}), 1);
    EXPECT_EQ(multiplicity_K_bruteforce(toy, roots, {1, 0}, {3, 3}), 0);
    EXPECT_EQ(multiplicity_K_bruteforce(toy, roots, {1, 0}, {4, 0}), 1);
}

TEST(Oracle, KroneckerSmall) {
    std::vector<int> d{2, 2, 2};
    EXPECT_EQ(kronecker_bruteforce(d, {{1, 1}, {1, 1}, {1, 1}}), 0);
    EXPECT_EQ(kronecker_bruteforce(d, {{2, 2}, {2, 2}, {2, 2}}), 1);
    EXPECT_EQ(kronecker_bruteforce(d, {{2, 1}, {2, 1}, {2, 1}}), 1);
    EXPECT_EQ(kronecker_bruteforce(d, {{2}, {2}, {2}}), 1);
    EXPECT_EQ(kronecker_bruteforce(d, {{3}, {2, 1}, {2, 1}}), 1);
    EXPECT_EQ(kronecker_bruteforce(d, {{2}, {2}, {1, 1}}), 0);
    // partitions with too many rows or unequal sizes vanish
    EXPECT_EQ(kronecker_bruteforce(d, {{1, 1, 1}, {3}, {3}}), 0);
    EXPECT_EQ(kronecker_bruteforce(d, {{2}, {3}, {2}}), 0);
}

TEST(Oracle, KroneckerThreeQutrits) {
    EXPECT_EQ(kronecker_bruteforce({3, 3, 3}, {{5, 2, 1}, {4, 2, 2}, {3, 3, 2}}), 4);
}

TEST(Oracle, KroneckerCap) {
    try {
        kronecker_bruteforce({2, 2, 2}, {{13}, {13}, {13}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::CapExceeded);
    }
}

TEST(Oracle, KroneckerSymmetry) {
    // invariant under permuting the factors
    std::vector<IntVec> p{{3, 1}, {2, 2}, {2, 1, 1}};
    Integer g = kronecker_bruteforce({2, 2, 3}, p);
    EXPECT_EQ(kronecker_bruteforce({2, 3, 2}, {p[0], p[2], p[1]}), g);
    EXPECT_EQ(kronecker_bruteforce({3, 2, 2}, {p[2], p[1], p[0]}), g);
}

TEST(Oracle, WeightMultiplicity) {
    EXPECT_EQ(kostant_branching_bruteforce(2, {1, 1}, {2, 0}, {1, 1}), 1);
    EXPECT_EQ(kostant_branching_bruteforce(2, {1, 1}, {2, 0}, {2, 0}), 1);
    // V_{(2,1,0)} of U(3) has the zero weight twice (shifted: (1,1,1))
    EXPECT_EQ(kostant_branching_bruteforce(3, {1, 1, 1}, {2, 1, 0}, {1, 1, 1}), 2);
}

TEST(Oracle, TensorBranching) {
    EXPECT_EQ(kostant_branching_bruteforce(4, {2, 2}, {2, 1, 0, 0}, {2, 1, 2, 1}), 1);
    // Sym^2(C^2 ⊗ C^2) = S^2 ⊗ S^2 + Λ^2 ⊗ Λ^2
    EXPECT_EQ(kostant_branching_bruteforce(4, {2, 2}, {2, 0, 0, 0}, {2, 0, 2, 0}), 1);
    EXPECT_EQ(kostant_branching_bruteforce(4, {2, 2}, {2, 0, 0, 0}, {1, 1, 1, 1}), 1);
    EXPECT_EQ(kostant_branching_bruteforce(4, {2, 2}, {2, 0, 0, 0}, {2, 0, 1, 1}), 0);
    EXPECT_THROW(kostant_branching_bruteforce(8, {2, 2, 2}, {1, 0, 0, 0, 0, 0, 0, 0}, {1, 0, 1, 0, 1, 0}), Error);
}

TEST(Oracle, KroneckerMatchesTensorBranching) {
    // g(a,b,c) equals the multiplicity of V_b ⊗ V_c in V_a of U(4) restricted to U(2)xU(2)
    EXPECT_EQ(kostant_branching_bruteforce(4, {2, 2}, {3, 1, 0, 0}, {2, 2, 3, 1}),
              kronecker_bruteforce({4, 2, 2}, {{3, 1}, {2, 2}, {3, 1}}));
    EXPECT_EQ(kostant_branching_bruteforce(4, {2, 2}, {2, 1, 1, 0}, {3, 1, 2, 2}),
              kronecker_bruteforce({4, 2, 2}, {{2, 1, 1}, {3, 1}, {2, 2}}));
}
