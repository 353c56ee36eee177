#include <gtest/gtest.h>

#include <random>

#include "scalerd/error.hpp"
#include "scalerd/video_stats.hpp"
#include "synthetic.hpp"

using namespace scalerd;

namespace {

RawVideo constant_video(int w, int h, int frames, std::uint8_t value) {
    RawVideo v{w, h, 25.0, {}};
    for (int t = 0; t < frames; ++t) v.frames.emplace_back(v.frame_size(), value);
    return v;
}

}  // namespace

TEST(SpatialStats, ConstantVideoIsDegenerate) {
    const auto s = estimate_spatial_stats(constant_video(32, 32, 2, 77));
    EXPECT_EQ(s.sigma_v2, 0.0);
    EXPECT_EQ(s.rho_vx, 0.0);
    EXPECT_EQ(s.rho_vy, 0.0);
    EXPECT_TRUE(s.degenerate);
}

TEST(SpatialStats, RecoversAr1Parameters) {
    const auto v = scalerd::testing::ar1_video(256, 256, 10, 0.95, 2300.0, 20240611);
    const auto s = estimate_spatial_stats(v);
    EXPECT_NEAR(s.rho_vx, 0.95, 0.02);
    EXPECT_NEAR(s.rho_vy, 0.95, 0.02);
    EXPECT_NEAR(s.sigma_v2, 2300.0, 0.05 * 2300.0);
    EXPECT_FALSE(s.degenerate);
}

TEST(SpatialStats, CheckerboardClampsToZero) {
    RawVideo v{16, 16, 25.0, {}};
    std::vector<std::uint8_t> f(256);
    for (int y = 0; y < 16; ++y) {
        for (int x = 0; x < 16; ++x) f[y * 16 + x] = (x + y) % 2 ? 101 : 99;
    }
    v.frames = {f, f};
    const auto s = estimate_spatial_stats(v);
    EXPECT_DOUBLE_EQ(s.sigma_v2, 1.0);
    EXPECT_EQ(s.rho_vx, 0.0);
    EXPECT_EQ(s.rho_vy, 0.0);
    EXPECT_TRUE(s.degenerate);
}

TEST(SpatialStats, AlternatingSequenceCovarianceByHand) {
    // Rows 0,1,0,1,... horizontally constant: vertical lag-1 covariance is -var,
    // horizontal is +var.
    RawVideo v{8, 8, 25.0, {}};
    std::vector<std::uint8_t> f(64);
    for (int y = 0; y < 8; ++y) {
        for (int x = 0; x < 8; ++x) f[y * 8 + x] = y % 2 ? 10 : 20;
    }
    v.frames = {f};
    const auto s = estimate_spatial_stats(v);
    EXPECT_DOUBLE_EQ(s.sigma_v2, 25.0);
    EXPECT_EQ(s.rho_vx, kMaxCorrelation);
    EXPECT_EQ(s.rho_vy, 0.0);
    EXPECT_TRUE(s.degenerate);
}

TEST(PredictionError, IdenticalFramesGiveZero) {
    auto v = scalerd::testing::ar1_video(64, 64, 1, 0.9, 400.0, 3);
    v.frames.push_back(v.frames[0]);
    EXPECT_EQ(estimate_prediction_error(v), 0.0);
}

TEST(PredictionError, CircularShiftZeroOnInteriorBlocks) {
    const auto v = scalerd::testing::ar1_video(96, 64, 1, 0.9, 400.0, 5);
    const auto shifted = scalerd::testing::circular_shift(v.frames[0], 96, 64, 3, 0);
    const auto matches = match_blocks(v.frames[0], shifted, 96, 64, 16, 4);
    ASSERT_EQ(matches.size(), 6u * 4u);
    for (const auto& m : matches) {
        if (m.block_x == 0) continue;  // true match wraps around the frame edge
        EXPECT_EQ(m.ssd, 0.0) << m.block_x << "," << m.block_y;
        EXPECT_EQ(m.dx, -3);
        EXPECT_EQ(m.dy, 0);
    }
}

TEST(PredictionError, MotionSearchNeverWorseThanZeroMotion) {
    RawVideo v{64, 64, 25.0, {}};
    std::vector<std::uint8_t> flat(v.frame_size(), 128);
    std::vector<std::uint8_t> noisy(v.frame_size());
    std::mt19937_64 rng(11);
    std::normal_distribution<double> n(0.0, 5.0);
    double zero_motion = 0.0;
    for (std::size_t i = 0; i < noisy.size(); ++i) {
        noisy[i] = static_cast<std::uint8_t>(std::lround(128.0 + n(rng)));
        const double d = noisy[i] - 128.0;
        zero_motion += d * d;
    }
    zero_motion /= static_cast<double>(noisy.size());
    v.frames = {flat, noisy};
    const double e = estimate_prediction_error(v);
    EXPECT_LE(e, zero_motion);
    EXPECT_NEAR(zero_motion, 25.0, 2.5);
    // against a flat reference every displacement ties, so zero motion wins
    EXPECT_DOUBLE_EQ(e, zero_motion);
}

TEST(PredictionError, TieBreakPrefersSmallDisplacement) {
    std::vector<std::uint8_t> flat(32 * 32, 9);
    for (const auto& m : match_blocks(flat, flat, 32, 32, 16, 8)) {
        EXPECT_EQ(m.dx, 0);
        EXPECT_EQ(m.dy, 0);
    }
}

TEST(PredictionError, EqualCostDisplacementsResolveInRasterOrder) {
    // Period-2 columns: the reference shifted by one pel matches exactly at
    // dx = -1 and dx = +1 but not at dx = 0.
    std::vector<std::uint8_t> cur(48 * 16);
    std::vector<std::uint8_t> ref(48 * 16);
    for (int y = 0; y < 16; ++y) {
        for (int x = 0; x < 48; ++x) {
            cur[y * 48 + x] = x % 2 ? 10 : 60;
            ref[y * 48 + x] = x % 2 ? 60 : 10;
        }
    }
    const auto m = match_blocks(ref, cur, 48, 16, 16, 1);
    EXPECT_EQ(m[1].ssd, 0.0);
    EXPECT_EQ(m[1].dy, 0);
    EXPECT_EQ(m[1].dx, -1);
}

TEST(PredictionError, WindowClipsAtFrameEdgesAndIsThreadIndependent) {
    const auto v = scalerd::testing::ar1_video(64, 48, 2, 0.9, 400.0, 17);
    const auto a = match_blocks(v.frames[0], v.frames[1], 64, 48, 16, 32, 1);
    const auto b = match_blocks(v.frames[0], v.frames[1], 64, 48, 16, 32, 4);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].dx, b[i].dx);
        EXPECT_EQ(a[i].dy, b[i].dy);
        EXPECT_EQ(a[i].ssd, b[i].ssd);
        const int x = a[i].block_x * 16 + a[i].dx;
        const int y = a[i].block_y * 16 + a[i].dy;
        EXPECT_GE(x, 0);
        EXPECT_GE(y, 0);
        EXPECT_LE(x + 16, 64);
        EXPECT_LE(y + 16, 48);
    }
}

TEST(PredictionError, RejectsBadInput) {
    auto v = constant_video(32, 32, 2, 1);
    MatchOptions bad_block;
    bad_block.block = 12;
    EXPECT_THROW(estimate_prediction_error(v, bad_block), ValidationError);
    v.frames.pop_back();
    EXPECT_THROW(estimate_prediction_error(v), ValidationError);
}

TEST(PredictionError, AveragesOverConfiguredPairs) {
    auto v = scalerd::testing::ar1_video(32, 32, 4, 0.9, 400.0, 23);
    MatchOptions one;
    one.max_pairs = 1;
    one.search_range = 0;
    const auto direct = [&](int t) {
        double s = 0;
        for (std::size_t i = 0; i < v.frame_size(); ++i) {
            const double d = double(v.frames[t + 1][i]) - v.frames[t][i];
            s += d * d;
        }
        return s / static_cast<double>(v.frame_size());
    };
    EXPECT_DOUBLE_EQ(estimate_prediction_error(v, one), direct(0));
    MatchOptions all = one;
    all.max_pairs = 10;  // only 3 pairs exist
    EXPECT_NEAR(estimate_prediction_error(v, all), (direct(0) + direct(1) + direct(2)) / 3.0, 1e-9);
}

TEST(Qvar, IndependentTranscriptionValue) {
    // computed separately from the formula in a scripting calculator
    const auto q = estimate_qvar(60.0, 2300.0, 0.95, 50.0);
    EXPECT_NEAR(q.qvar, 243.9516129032258, 1e-9);
    EXPECT_FALSE(q.clamped);
}

TEST(Qvar, OldTownCrossPlugThrough) {
    // sigma_hat back-solved so that sigma_v2 = 2352 reproduces qvar = 253
    const auto q = estimate_qvar(62.08666666666667, 2352.0, 0.95, 50.0);
    EXPECT_NEAR(q.qvar, 253.0, 1e-9);
}

TEST(Qvar, ZeroNumeratorAndClamp) {
    const double me = 2.0 / 48.0;
    const double s = 2.0 * me * 2300.0 * (1.0 - 0.9);
    EXPECT_NEAR(estimate_qvar(s, 2300.0, 0.9, 30.0).qvar, 0.0, 1e-12);
    const auto neg = estimate_qvar(0.5 * s, 2300.0, 0.9, 30.0);
    EXPECT_EQ(neg.qvar, 0.0);
    EXPECT_TRUE(neg.clamped);
    EXPECT_LT(neg.raw, 0.0);
    EXPECT_THROW(estimate_qvar(1.0, 1.0, 0.5, 0.0), ValidationError);
}

TEST(Qvar, MonotoneInPredictionErrorAndFrameRate) {
    double prev = -1.0;
    for (double s = 20; s <= 200; s += 10) {
        const double q = estimate_qvar(s, 2300.0, 0.95, 50.0).qvar;
        EXPECT_GT(q, prev);
        prev = q;
    }
    prev = -1.0;
    for (double f = 10; f <= 120; f += 10) {
        const double q = estimate_qvar(80.0, 2300.0, 0.95, f).qvar;
        EXPECT_GT(q, prev);
        prev = q;
    }
}

TEST(VideoStatsPipeline, EndToEndOnSyntheticVideo) {
    const auto v = scalerd::testing::ar1_video(64, 64, 3, 0.95, 900.0, 29);
    const auto est = estimate_video_stats(v);
    EXPECT_EQ(est.stats.width, 64);
    EXPECT_EQ(est.stats.height, 64);
    EXPECT_EQ(est.stats.frame_rate, 50.0);
    EXPECT_GT(est.sigma_hat_12, 0.0);
    EXPECT_GE(est.stats.qvar, 0.0);
    const auto q = estimate_qvar(est.sigma_hat_12, est.stats.sigma_v2, est.stats.rho_v(), 50.0);
    EXPECT_DOUBLE_EQ(est.stats.qvar, q.qvar);
}
