#include <gtest/gtest.h>

#include <cmath>

#include "scalerd/error.hpp"
#include "scalerd/mode_model.hpp"

using namespace scalerd;

TEST(ModeCoefficients, ZeroMotion) {
    const auto c = mode_coefficients({}, 0.0, 50.0);
    EXPECT_DOUBLE_EQ(c.c_m, 100.0 / 85.0);
    EXPECT_DOUBLE_EQ(c.d_m, 20.0);
}

TEST(ModeCoefficients, FigureThreeParameters) {
    // independent transcription: 100 / (85 + 0.3 * 225 / 50), 20 + 225 / 50
    const auto c = mode_coefficients({85.0, 0.3, 20.0}, 225.0, 50.0);
    EXPECT_NEAR(c.c_m, 1.1580775911986103, 1e-13);
    EXPECT_NEAR(c.d_m, 24.5, 1e-13);
}

TEST(ModeCoefficients, HigherMotionSign) {
    const auto lo = mode_coefficients({}, 225.0, 50.0);
    const auto hi = mode_coefficients({}, 800.0, 50.0);
    EXPECT_LT(hi.c_m, lo.c_m);
    EXPECT_GT(hi.d_m, lo.d_m);
}

TEST(ModeCoefficients, Validation) {
    EXPECT_THROW(mode_coefficients({}, 1.0, 0.0), ValidationError);
    EXPECT_THROW(mode_coefficients({0.0, 0.3, 20.0}, 1.0, 50.0), ValidationError);
    EXPECT_THROW(mode_coefficients({101.0, 0.3, 20.0}, 1.0, 50.0), ValidationError);
    EXPECT_THROW(mode_coefficients({85.0, -1.0, 20.0}, 1.0, 50.0), ValidationError);
    EXPECT_THROW(mode_coefficients({85.0, 0.3, -1.0}, 1.0, 50.0), ValidationError);
}

TEST(ModeProbabilities, Limits) {
    const auto c = mode_coefficients({}, 225.0, 50.0);
    const auto zero = mode_probabilities(0.0, c);
    EXPECT_EQ(zero.p_inter, 0.0);
    EXPECT_EQ(zero.p_skip, 1.0);
    EXPECT_NEAR(p_inter(1e9, c), 1.0 / c.c_m, 1e-6);
    EXPECT_NEAR(1.0 / c.c_m, 0.8635, 5e-5);
    EXPECT_NEAR(p_inter(c.d_m / c.c_m, c), 1.0 / (2.0 * c.c_m), 1e-15);
}

TEST(ModeProbabilities, IncreasingConcaveAndComplementary) {
    const auto c = mode_coefficients({}, 250.0, 25.0);
    const double h = 0.5;
    for (int i = 1; i < 200; ++i) {
        const double b = i * 2.0;
        const double p0 = p_inter(b - h, c);
        const double p1 = p_inter(b, c);
        const double p2 = p_inter(b + h, c);
        EXPECT_GT(p2, p1);
        EXPECT_LT(p0 + p2 - 2.0 * p1, 0.0);
        const auto m = mode_probabilities(b, c);
        EXPECT_DOUBLE_EQ(m.p_inter + m.p_skip, 1.0);
        EXPECT_GE(m.p_inter, 0.0);
        EXPECT_LE(m.p_inter, 1.0);
    }
}

TEST(ModeProbabilities, IncreasingInFrameRateWithinDomain) {
    // d p / d F > 0 holds while B < (P + gamma_c q / F)^2 / (100 gamma_c).
    const ModeParams p;
    const double q = 225.0;
    for (double b : {1.0, 5.0, 30.0, 100.0, 200.0}) {
        double prev = -1.0;
        for (double f = 5.0; f <= 120.0; f += 5.0) {
            const double bound = std::pow(p.p_inter_asymp_min + p.gamma_c * q / f, 2) / (100.0 * p.gamma_c);
            ASSERT_LT(b, bound);
            const double v = p_inter(b, mode_coefficients(p, q, f));
            EXPECT_GT(v, prev) << "b=" << b << " f=" << f;
            prev = v;
        }
    }
}

TEST(ModeProbabilities, ClampsAndValidates) {
    EXPECT_DOUBLE_EQ(p_inter(10.0, {0.5, 0.0}), 1.0);
    EXPECT_THROW(mode_probabilities(-1.0, {1.0, 1.0}), ValidationError);
}
