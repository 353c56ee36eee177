#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "scalerd/video_io.hpp"

namespace scalerd {

/// Second-order statistics of a source video, as consumed by the model.
struct VideoStats {
    double sigma_v2 = 0.0;  // luma variance
    double rho_vx = 0.0;    // horizontal lag-1 correlation coefficient
    double rho_vy = 0.0;    // vertical lag-1 correlation coefficient
    double qvar = 0.0;      // motion complexity
    int width = 0;          // original frame width (pixels)
    int height = 0;         // original frame height (pixels)
    double frame_rate = 0.0;

    /// Scalar pixel correlation: arithmetic mean of the two axes.
    double rho_v() const { return 0.5 * (rho_vx + rho_vy); }

    void validate() const;
};

struct SpatialStats {
    double sigma_v2 = 0.0;
    double rho_vx = 0.0;
    double rho_vy = 0.0;
    // Set when the variance is zero or a raw correlation fell outside [0, 1).
    bool degenerate = false;
};

inline constexpr double kMaxCorrelation = 1.0 - 1e-9;

/// Per-frame mean removal, then frame-averaged variance and normalized lag-1
/// autocovariances, clamped to [0, kMaxCorrelation].
SpatialStats estimate_spatial_stats(const RawVideo& video);

struct BlockMatch {
    int block_x = 0;  // block column index
    int block_y = 0;  // block row index
    int dx = 0;
    int dy = 0;
    double ssd = 0.0;
};

/// Integer-pel full-search block matching of `current` against `reference`.
/// Candidate positions whose reference block would leave the frame are skipped.
/// Ties on SSD go to the smaller |d|^2, then to raster order (dy, then dx).
std::vector<BlockMatch> match_blocks(std::span<const std::uint8_t> reference,
                                     std::span<const std::uint8_t> current, int width,
                                     int height, int block, int search_range,
                                     int threads = 1);

struct MatchOptions {
    int block = 16;
    int search_range = 16;
    int max_pairs = 10;  // pairs actually used: min(max_pairs, frames - 1)
    int threads = 1;
};

/// Mean squared MC-prediction residual per pixel over all blocks, averaged over
/// the first consecutive frame pairs.
double estimate_prediction_error(const RawVideo& video, const MatchOptions& options = {});

struct MotionParams {
    double sigma_dx2 = 1.0 / 48.0;  // ME accuracy variance, squared pels
    double sigma_dy2 = 1.0 / 48.0;
    double L = 100.0;               // temporal memory factor
};

struct QvarEstimate {
    double qvar = 0.0;
    double raw = 0.0;
    bool clamped = false;  // raw value was negative
};

QvarEstimate estimate_qvar(double sigma_hat_12, double sigma_v2, double rho_v,
                           double frame_rate, const MotionParams& params = {});

struct StatsEstimate {
    VideoStats stats;
    double sigma_hat_12 = 0.0;
    bool spatial_degenerate = false;
    bool qvar_clamped = false;
};

/// Full pipeline: spatial statistics, prediction error, motion complexity.
StatsEstimate estimate_video_stats(const RawVideo& video, const MatchOptions& options = {},
                                   const MotionParams& params = {});

}  // namespace scalerd
