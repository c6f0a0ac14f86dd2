#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <condorcet/orthant.hpp>

#include "oracles.hpp"

using namespace condorcet;

namespace {

double phi(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

} // namespace

TEST(Orthant, BivariateClosedForm) {
    EXPECT_DOUBLE_EQ(orthant2(0.0), 0.25);
    EXPECT_NEAR(orthant2(1.0), 0.5, 1e-15);
    EXPECT_NEAR(orthant2(-1.0), 0.0, 1e-15);
    EXPECT_NEAR(orthant2(1.0 / 3.0), 0.304086723984696, 1e-12);
}

TEST(Orthant, TrivariateClosedForm) {
    EXPECT_DOUBLE_EQ(orthant3(0, 0, 0), 0.125);
    EXPECT_NEAR(orthant3(1.0 / 3, 1.0 / 3, 1.0 / 3), 0.206130057302059, 1e-6);
}

TEST(Orthant, SampfordMatchesClosedForms) {
    EXPECT_NEAR(sampford_orthant(2, 0.5), 1.0 / 3.0, 1e-13);
    for (double rho : {0.0, 0.1, 1.0 / 3.0, 0.6, 0.9}) {
        EXPECT_NEAR(sampford_orthant(2, rho), orthant2(rho), 1e-12) << rho;
        EXPECT_NEAR(sampford_orthant(3, rho), orthant3(rho, rho, rho), 1e-12) << rho;
    }
    for (int d = 0; d <= 6; ++d)
        EXPECT_NEAR(sampford_orthant(d, 0.0), std::ldexp(1.0, -d), 1e-14);
    EXPECT_THROW((void)sampford_orthant(3, -0.1), DomainError);
}

TEST(Orthant, SampfordAgainstTrapezoid) {
    for (int d : {3, 5, 8, 12})
        for (double a : {0.5, 1.0, 2.0}) {
            const auto f = [d, a](double t) { return std::exp(-t * t) * std::pow(phi(a * t), d); };
            const double want = oracle::trapezoid(f, -12.0, 12.0, 200000) / std::sqrt(std::numbers::pi);
            EXPECT_NEAR(sampford_integral(d, a), want, 1e-10) << d << " " << a;
        }
}

TEST(Orthant, MonteCarloAgreesWithClosedForm) {
    const CorrelationMatrix R(3, {1, 0.2, -0.3, 0.2, 1, 0.5, -0.3, 0.5, 1});
    const McEstimate e = orthant_mc(R, 400000, 17);
    EXPECT_NEAR(e.value, orthant3(0.2, -0.3, 0.5), 4 * e.stderr_value);
    const McEstimate again = orthant_mc(R, 400000, 17);
    EXPECT_EQ(e.value, again.value);
}

TEST(Orthant, MonteCarloSurvivesSingularMatrices) {
    // rank one: all coordinates identical, so the orthant is 1/2
    const CorrelationMatrix R = CorrelationMatrix::equicorrelated(4, 1.0);
    const McEstimate e = orthant_mc(R, 100000, 3);
    EXPECT_NEAR(e.value, 0.5, 4 * e.stderr_value + 1e-3);
}

TEST(Orthant, MatrixValidation) {
    EXPECT_THROW(CorrelationMatrix(2, {1, 0.5, 0.4, 1}), MatrixError);
    EXPECT_THROW(CorrelationMatrix(2, {1, 1.5, 1.5, 1}), MatrixError);
    EXPECT_THROW(CorrelationMatrix(2, {0.9, 0, 0, 1}), MatrixError);
    EXPECT_THROW(CorrelationMatrix(3, {1, 0.9, -0.9, 0.9, 1, 0.9, -0.9, 0.9, 1}), MatrixError);
    EXPECT_THROW(CorrelationMatrix(2, {1, 0, 0}), DomainError);
    EXPECT_NO_THROW(CorrelationMatrix::equicorrelated(5, -0.25));
    EXPECT_THROW(CorrelationMatrix::equicorrelated(5, -0.3), MatrixError);
}

TEST(Orthant, CommonCorrelation) {
    EXPECT_EQ(*CorrelationMatrix::equicorrelated(4, 1.0 / 3.0).common_correlation(), 1.0 / 3.0);
    EXPECT_FALSE(CorrelationMatrix(3, {1, 0.2, 0.3, 0.2, 1, 0.2, 0.3, 0.2, 1}).common_correlation());
}

TEST(Orthant, ThresholdHandling) {
    const CorrelationMatrix R = CorrelationMatrix::equicorrelated(3, 0.25);
    using D = DeltaSign;
    auto run = [&](std::vector<D> d) { return orthant_probability(OrthantArgs(std::move(d), R)); };

    const auto impossible = run({D::Zero, D::PosInf, D::NegInf});
    EXPECT_EQ(impossible.value, 0.0);
    EXPECT_EQ(impossible.method, OrthantMethod::Trivial);

    EXPECT_EQ(run({D::NegInf, D::NegInf, D::NegInf}).value, 1.0);
    EXPECT_EQ(run({D::NegInf, D::Zero, D::NegInf}).value, 0.5);

    const auto two = run({D::Zero, D::NegInf, D::Zero});
    EXPECT_NEAR(two.value, orthant2(0.25), 1e-15);
    EXPECT_EQ(two.reduced_dim, 2);

    EXPECT_NEAR(run({D::Zero, D::Zero, D::Zero}).value, orthant3(0.25, 0.25, 0.25), 1e-15);
    EXPECT_THROW(OrthantArgs({D::Zero}, R), DomainError);
}

TEST(Orthant, DispatchForHigherDimensions) {
    using D = DeltaSign;
    const auto eq = orthant_probability(
        OrthantArgs(std::vector<D>(5, D::Zero), CorrelationMatrix::equicorrelated(5, 1.0 / 3.0)));
    EXPECT_EQ(eq.method, OrthantMethod::Sampford);
    EXPECT_EQ(eq.stderr_value, 0.0);

    std::vector<double> e(16, 0.0);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            e[static_cast<std::size_t>(i * 4 + j)] = i == j ? 1.0 : (i + j == 3 ? -0.2 : 0.3);
    OrthantOptions opts;
    opts.mc_samples = 200000;
    const auto mc = orthant_probability(OrthantArgs(std::vector<D>(4, D::Zero), CorrelationMatrix(4, e)), opts);
    EXPECT_EQ(mc.method, OrthantMethod::MonteCarlo);
    EXPECT_GT(mc.stderr_value, 0.0);
    EXPECT_GT(mc.value, 0.0);
    EXPECT_LT(mc.value, 0.5);

    // negative equicorrelation goes to Monte Carlo as well
    const auto neg = orthant_probability(
        OrthantArgs(std::vector<D>(4, D::Zero), CorrelationMatrix::equicorrelated(4, -0.2)), opts);
    EXPECT_EQ(neg.method, OrthantMethod::MonteCarlo);
}
