#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <condorcet/montecarlo.hpp>

#include "oracles.hpp"

using namespace condorcet;

TEST(MonteCarlo, SameSeedSameEstimate) {
    const Culture c = impartial_culture(3);
    McConfig cfg;
    cfg.trials = 20000;
    cfg.seed = 42;
    const auto a = mc_winner_probability(c, 15, cfg);
    const auto b = mc_winner_probability(c, 15, cfg);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.method, Method::MonteCarlo);
    ASSERT_TRUE(a.stderr_value);

    cfg.seed = 43;
    EXPECT_NE(mc_winner_probability(c, 15, cfg).value, a.value);
}

TEST(MonteCarlo, DeterministicPerThreadCount) {
    const Culture c = impartial_culture(4);
    McConfig cfg;
    cfg.trials = 9000;
    cfg.threads = 3;
    EXPECT_EQ(mc_winner_probability(c, 11, cfg).value, mc_winner_probability(c, 11, cfg).value);
}

TEST(MonteCarlo, DegenerateCulture) {
    const Culture c(3, {0, 0, 0, 1, 0, 0});
    McConfig cfg;
    cfg.trials = 1000;
    const auto r = mc_winner_probability(c, 50, cfg);
    EXPECT_EQ(r.value, 1.0);
    EXPECT_EQ(*r.stderr_value, 0.0);
}

TEST(MonteCarlo, StderrScalesWithTrials) {
    const Culture c = impartial_culture(3);
    McConfig cfg;
    cfg.trials = 10000;
    const double s1 = *mc_winner_probability(c, 10, cfg).stderr_value;
    cfg.trials = 160000;
    const double s2 = *mc_winner_probability(c, 10, cfg).stderr_value;
    EXPECT_NEAR(s1 / s2, 4.0, 0.2);
}

TEST(MonteCarlo, IntervalsCoverTheExactValue) {
    std::mt19937_64 rng(99);
    int covered = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const Culture c(3, oracle::random_culture(rng, 6));
        const int n = 5 + trial % 6;
        const double exact = exact_winner_probability(c, n, WinnerMode::Strong).value;
        McConfig cfg;
        cfg.trials = 20000;
        cfg.seed = 1000 + static_cast<std::uint64_t>(trial);
        const auto r = mc_winner_probability(c, n, cfg);
        if (std::fabs(r.value - exact) <= 1.96 * *r.stderr_value + 1e-12)
            ++covered;
    }
    EXPECT_GE(covered, 44);
}

TEST(MonteCarlo, BinomialSplitPathAgreesWithLimit) {
    // Well above the split threshold; the estimate should sit near P(3) for IC.
    const Culture c = impartial_culture(3);
    McConfig cfg;
    cfg.trials = 20000;
    const auto r = mc_winner_probability(c, 20001, cfg);
    EXPECT_NEAR(r.value, 0.912260171954089, 4.0 * *r.stderr_value + 0.005);
}

TEST(MonteCarlo, WeakAtLeastStrong) {
    const Culture c = impartial_culture(3);
    McConfig cfg;
    cfg.trials = 50000;
    const double strong = mc_winner_probability(c, 4, cfg).value;
    cfg.mode = WinnerMode::Weak;
    const double weak = mc_winner_probability(c, 4, cfg).value;
    EXPECT_GE(weak, strong);
    EXPECT_EQ(weak, 1.0);
}

TEST(MonteCarlo, SweepRequiresAscendingCounts) {
    const Culture c = impartial_culture(3);
    McConfig cfg;
    cfg.trials = 100;
    const std::vector<std::int64_t> bad = {5, 5};
    EXPECT_THROW((void)mc_convergence_sweep(c, bad, cfg), DomainError);
    const std::vector<std::int64_t> good = {3, 5, 9};
    const auto rows = mc_convergence_sweep(c, good, cfg);
    ASSERT_EQ(rows.size(), 3u);
    const std::string csv = sweep_csv(rows, cfg);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "n,estimate,stderr,trials,seed");
}

TEST(MonteCarlo, Domain) {
    const Culture c = impartial_culture(3);
    McConfig cfg;
    EXPECT_THROW((void)mc_winner_probability(c, 0, cfg), DomainError);
    cfg.trials = 0;
    EXPECT_THROW((void)mc_winner_probability(c, 3, cfg), DomainError);
}
