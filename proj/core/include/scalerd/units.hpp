#pragma once

#include <string_view>

#include "scalerd/video_stats.hpp"

namespace scalerd {

/// Down-scaling factors: ratio of original to scaled width, height and frame rate.
struct ScalingChoice {
    double d_m = 1.0;
    double d_n = 1.0;
    int d_t = 1;

    void validate() const;
};

/// Horizontal and vertical macroblock counts and the scaled frame rate.
struct SlicingParams {
    int m = 1;
    int n = 1;
    int t = 1;

    long long slice_count() const { return static_cast<long long>(m) * n * t; }
};

struct Slicing {
    SlicingParams params;
    // Factors actually realised once m and n are rounded to whole macroblocks.
    double d_m_effective = 1.0;
    double d_n_effective = 1.0;
    bool rounded = false;
};

inline constexpr int kDefaultBlock = 16;

/// m = round(W0 / (block * d_m)), n likewise, t = F / d_t. Non-integer t or a
/// slice count that rounds to zero raise ValidationError.
Slicing slicing_from_scaling(int width, int height, double frame_rate,
                             const ScalingChoice& choice, int block = kDefaultBlock);

inline Slicing slicing_from_scaling(const VideoStats& stats, const ScalingChoice& choice,
                                    int block = kDefaultBlock) {
    return slicing_from_scaling(stats.width, stats.height, stats.frame_rate, choice, block);
}

class BitBudget {
public:
    explicit BitBudget(double bits_per_second);

    double bits_per_second() const { return bps_; }

private:
    double bps_;
};

double bits_per_slice(const BitBudget& budget, const SlicingParams& slicing);
double bits_per_pixel(double bits_per_slice, int block = kDefaultBlock);

/// Parses "180000", "180k", "1.25M" (also "G"). Case-insensitive suffix.
double parse_bitrate(std::string_view text);

}  // namespace scalerd
