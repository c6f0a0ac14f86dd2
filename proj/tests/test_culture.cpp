#include <gtest/gtest.h>

#include <random>

#include <condorcet/culture.hpp>

#include "oracles.hpp"

using namespace condorcet;

TEST(RankOrders, EnumerationIsLexicographic) {
    const auto two = enumerate_rank_orders(2);
    ASSERT_EQ(two.size(), 2u);
    EXPECT_EQ(two[0], RankOrder({0, 1}));
    EXPECT_EQ(two[1], RankOrder({1, 0}));

    const auto three = enumerate_rank_orders(3);
    ASSERT_EQ(three.size(), 6u);
    EXPECT_EQ(three.front(), RankOrder({0, 1, 2}));
    EXPECT_EQ(three.back(), RankOrder({2, 1, 0}));

    const auto four = enumerate_rank_orders(4);
    ASSERT_EQ(four.size(), 24u);
    EXPECT_EQ(four[0], RankOrder({0, 1, 2, 3}));
    for (std::size_t i = 0; i < four.size(); ++i)
        EXPECT_EQ(rank_order_index(four[i]), i);
}

TEST(RankOrders, IndexMatchesEnumerationUpToEight) {
    for (int m : {5, 8}) {
        const auto& orders = cached_rank_orders(m);
        ASSERT_EQ(orders.size(), factorial(m));
        for (std::size_t i = 0; i < orders.size(); i += 97)
            EXPECT_EQ(rank_order_index(orders[i]), i);
    }
}

TEST(RankOrders, BoundsAreEnforced) {
    EXPECT_THROW((void)enumerate_rank_orders(1), DomainError);
    EXPECT_THROW((void)enumerate_rank_orders(9), DomainError);
    EXPECT_THROW((void)impartial_culture(9), DomainError);
    EXPECT_THROW((void)cyclic_minimizer_culture(1), DomainError);
    EXPECT_THROW(RankOrder({0, 0, 1}), DomainError);
    EXPECT_THROW(RankOrder({0, 3, 1}), DomainError);
}

TEST(Cultures, Impartial) {
    for (int m : {2, 3, 4}) {
        const Culture c = impartial_culture(m);
        ASSERT_EQ(c.size(), factorial(m));
        for (double p : c.probs())
            EXPECT_DOUBLE_EQ(p, 1.0 / static_cast<double>(factorial(m)));
    }
}

TEST(Cultures, CyclicMinimizer) {
    const Culture c3 = cyclic_minimizer_culture(3);
    // orders 012, 120, 201 sit at indices 0, 3, 4
    const std::vector<double> expected = {1.0 / 3, 0, 0, 1.0 / 3, 1.0 / 3, 0};
    for (std::size_t i = 0; i < 6; ++i)
        EXPECT_DOUBLE_EQ(c3.prob(i), expected[i]);

    const Culture c2 = cyclic_minimizer_culture(2);
    EXPECT_DOUBLE_EQ(c2.prob(0), 0.5);
    EXPECT_DOUBLE_EQ(c2.prob(1), 0.5);

    const Culture c4 = cyclic_minimizer_culture(4);
    int nonzero = 0;
    for (std::size_t i = 0; i < c4.size(); ++i) {
        if (c4.prob(i) == 0.0)
            continue;
        ++nonzero;
        EXPECT_DOUBLE_EQ(c4.prob(i), 0.25);
        const auto seq = c4.order(i).candidates();
        for (int r = 0; r < 4; ++r)
            EXPECT_EQ(seq[static_cast<std::size_t>((r + 1) % 4)], (seq[static_cast<std::size_t>(r)] + 1) % 4);
    }
    EXPECT_EQ(nonzero, 4);
}

TEST(Cultures, ValidationRejectsBadInput) {
    EXPECT_THROW(Culture(3, {0.5, 0.5}), DomainError);
    EXPECT_THROW(Culture(3, {0.2, 0.2, 0.2, 0.2, 0.2, -0.0001}), DomainError);
    EXPECT_THROW(Culture(3, {0.2, 0.2, 0.2, 0.2, 0.1, 0.099}), DomainError);
    try {
        (void)Culture(2, {0.5, 0.499});
        FAIL() << "expected rejection";
    } catch (const DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("deficit"), std::string::npos);
    }
}

TEST(DualOrders, ReversalAndInvolution) {
    // C1C4C3C2 is dual to C2C3C4C1
    EXPECT_EQ(dual_order(RankOrder({0, 3, 2, 1})), RankOrder({1, 2, 3, 0}));
    EXPECT_EQ(dual_order(RankOrder({0, 1})), RankOrder({1, 0}));
    for (const auto& o : enumerate_rank_orders(4))
        EXPECT_EQ(dual_order(dual_order(o)), o);
}

TEST(DualOrders, DualCultureDetection) {
    EXPECT_TRUE(is_dual_culture(impartial_culture(3)));
    EXPECT_TRUE(is_dual_culture(impartial_culture(5)));
    EXPECT_FALSE(is_dual_culture(cyclic_minimizer_culture(3)));
    // 012 and 210 share mass, as do 021/120 and 102/201
    EXPECT_TRUE(is_dual_culture(Culture(3, {0.3, 0.1, 0.1, 0.1, 0.1, 0.3})));
    EXPECT_FALSE(is_dual_culture(Culture(3, {0.3, 0.1, 0.1, 0.1, 0.2, 0.2})));
}

TEST(PreferenceSigns, Examples) {
    EXPECT_EQ(preference_sign(RankOrder({0, 1, 2}), 0, 2), PreferenceSign::plus());
    EXPECT_EQ(preference_sign(RankOrder({2, 0, 1}), 0, 2), PreferenceSign::minus());
    EXPECT_EQ(joint_preference_sign(RankOrder({0, 1, 2}), 0, 1, 2), PreferenceSign::plus());
    EXPECT_EQ(joint_preference_sign(RankOrder({1, 0, 2}), 0, 1, 2), PreferenceSign::minus());
    EXPECT_THROW((void)preference_sign(RankOrder({0, 1, 2}), 1, 1), DomainError);
    EXPECT_THROW((void)joint_preference_sign(RankOrder({0, 1, 2}), 0, 1, 1), DomainError);
    EXPECT_THROW((void)joint_preference_sign(RankOrder({0, 1, 2}), 2, 1, 2), DomainError);
}

TEST(PreferenceSigns, HalfOfOrdersFavourEachSide) {
    for (int m : {3, 4, 5}) {
        const auto orders = enumerate_rank_orders(m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                if (i == j)
                    continue;
                std::size_t plus = 0;
                for (const auto& o : orders)
                    if (preference_sign(o, i, j) == PreferenceSign::plus())
                        ++plus;
                EXPECT_EQ(plus, orders.size() / 2);
            }
    }
}

TEST(PreferenceSigns, AntisymmetryAndJointProductExhaustive) {
    for (int m : {3, 4, 5}) {
        for (const auto& o : enumerate_rank_orders(m))
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) {
                    if (i == j)
                        continue;
                    EXPECT_EQ(preference_sign(o, i, j), -preference_sign(o, j, i));
                    for (int l = 0; l < m; ++l) {
                        if (l == i || l == j)
                            continue;
                        EXPECT_EQ(joint_preference_sign(o, i, j, l),
                                  preference_sign(o, i, j) * preference_sign(o, i, l));
                    }
                }
    }
}

TEST(PairwiseWin, Examples) {
    const Culture ic = impartial_culture(3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j)
                EXPECT_NEAR(pairwise_win_probability(ic, i, j), 0.5, 1e-15);

    EXPECT_NEAR(pairwise_win_probability(cyclic_minimizer_culture(3), 0, 1), 2.0 / 3.0, 1e-15);

    const Culture point(3, {0, 0, 0, 0, 1, 0}); // 201
    EXPECT_EQ(pairwise_win_probability(point, 2, 0), 1.0);
    EXPECT_EQ(pairwise_win_probability(point, 1, 0), 0.0);
    EXPECT_THROW((void)pairwise_win_probability(ic, 2, 2), DomainError);
}

TEST(PairwiseWin, ComplementsToOneOnRandomCultures) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const int m = 3 + trial % 3;
        const Culture c(m, oracle::random_culture(rng, factorial(m), 0.3));
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j)
                EXPECT_NEAR(pairwise_win_probability(c, i, j) + pairwise_win_probability(c, j, i), 1.0,
                            1e-12);
    }
}
