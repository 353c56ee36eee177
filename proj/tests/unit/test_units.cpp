#include <gtest/gtest.h>

#include "scalerd/error.hpp"
#include "scalerd/units.hpp"

using namespace scalerd;

TEST(Slicing, WorkedExampleDm3) {
    const auto s = slicing_from_scaling(720, 720, 50.0, {3.0, 3.0, 1});
    EXPECT_EQ(s.params.m, 15);
    EXPECT_FALSE(s.rounded);
    EXPECT_DOUBLE_EQ(s.d_m_effective, 3.0);
}

TEST(Slicing, IdentityScaling) {
    const auto s = slicing_from_scaling(720, 720, 50.0, {});
    EXPECT_EQ(s.params.m, 45);
    EXPECT_EQ(s.params.n, 45);
    EXPECT_EQ(s.params.t, 50);
}

TEST(Slicing, RoundsToNearestAndRecordsEffectiveFactor) {
    const auto s = slicing_from_scaling(1280, 720, 50.0, {2.0, 2.0, 2});
    EXPECT_EQ(s.params.m, 40);
    EXPECT_EQ(s.params.n, 23);  // 22.5 rounds half away from zero
    EXPECT_EQ(s.params.t, 25);
    EXPECT_TRUE(s.rounded);
    EXPECT_DOUBLE_EQ(s.d_m_effective, 2.0);
    EXPECT_DOUBLE_EQ(s.d_n_effective, 720.0 / (16.0 * 23.0));
}

TEST(Slicing, Errors) {
    EXPECT_THROW(slicing_from_scaling(720, 720, 50.0, {1.0, 1.0, 3}), ValidationError);
    EXPECT_THROW(slicing_from_scaling(16, 16, 50.0, {3.0, 1.0, 1}), ValidationError);
    EXPECT_THROW(slicing_from_scaling(720, 720, 50.0, {0.5, 1.0, 1}), ValidationError);
    EXPECT_THROW(slicing_from_scaling(720, 720, 50.0, {1.0, 1.0, 0}), ValidationError);
    EXPECT_NO_THROW(slicing_from_scaling(720, 720, 60.0, {1.0, 1.0, 3}));
}

TEST(Slicing, UsesStats) {
    VideoStats st;
    st.width = 176;
    st.height = 144;
    st.frame_rate = 15;
    const auto s = slicing_from_scaling(st, {});
    EXPECT_EQ(s.params.m, 11);
    EXPECT_EQ(s.params.n, 9);
    EXPECT_EQ(s.params.t, 15);
}

TEST(BitsPerSlice, PaperWorkedValues) {
    const double qcif = bits_per_slice(BitBudget{1e6}, {11, 9, 15});
    EXPECT_NEAR(qcif, 673.4, 0.05);
    EXPECT_NEAR(bits_per_pixel(qcif), 2.63, 0.005);
    const double hd = bits_per_slice(BitBudget{1e6}, {80, 45, 50});
    EXPECT_NEAR(hd, 5.5, 0.1);
    EXPECT_NEAR(bits_per_pixel(hd), 0.0215, 0.0005);
}

TEST(BitsPerSlice, UnitCaseAndConservation) {
    const SlicingParams s{7, 5, 3};
    EXPECT_DOUBLE_EQ(bits_per_slice(BitBudget{105.0}, s), 1.0);
    EXPECT_DOUBLE_EQ(bits_per_pixel(256.0), 1.0);
    for (double b : {1e3, 3.3e5, 1.7e7, 9.99e8}) {
        const double per = bits_per_slice(BitBudget{b}, s);
        EXPECT_NEAR(per * static_cast<double>(s.slice_count()), b, 1e-12 * b);
    }
}

TEST(BitsPerSlice, StrictlyDecreasingInEachParameter) {
    const BitBudget b{1e6};
    const double base = bits_per_slice(b, {10, 10, 10});
    EXPECT_LT(bits_per_slice(b, {11, 10, 10}), base);
    EXPECT_LT(bits_per_slice(b, {10, 11, 10}), base);
    EXPECT_LT(bits_per_slice(b, {10, 10, 11}), base);
}

TEST(BitBudget, RejectsNonPositive) {
    EXPECT_THROW(BitBudget{0.0}, ValidationError);
    EXPECT_THROW(BitBudget{-5.0}, ValidationError);
    EXPECT_THROW(bits_per_pixel(1.0, 0), ValidationError);
}

TEST(ParseBitrate, Suffixes) {
    EXPECT_DOUBLE_EQ(parse_bitrate("180000"), 180000.0);
    EXPECT_DOUBLE_EQ(parse_bitrate("180k"), 180000.0);
    EXPECT_DOUBLE_EQ(parse_bitrate("1.25M"), 1250000.0);
    EXPECT_DOUBLE_EQ(parse_bitrate("2G"), 2e9);
    EXPECT_DOUBLE_EQ(parse_bitrate("1e6"), 1e6);
    EXPECT_DOUBLE_EQ(parse_bitrate("3K"), 3000.0);
    for (const char* bad : {"", "k", "abc", "12x", "-5", "0", "1.2.3M"}) {
        EXPECT_THROW(parse_bitrate(bad), ValidationError) << bad;
    }
}
