#include "scalerd/video_stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <tuple>

#include "parallel.hpp"
#include "scalerd/error.hpp"

namespace scalerd {

void VideoStats::validate() const {
    if (!(sigma_v2 >= 0.0)) throw ValidationError("sigma_v2 must be >= 0");
    if (!(qvar >= 0.0)) throw ValidationError("qvar must be >= 0");
    if (!(rho_vx >= 0.0 && rho_vx < 1.0) || !(rho_vy >= 0.0 && rho_vy < 1.0)) {
        throw ValidationError("correlation coefficients must lie in [0, 1)");
    }
    if (width <= 0 || height <= 0) throw ValidationError("frame dimensions must be positive");
    if (!(frame_rate > 0.0)) throw ValidationError("frame rate must be positive");
}

namespace {

struct FrameMoments {
    double variance = 0.0;
    double cov_x = 0.0;
    double cov_y = 0.0;
};

FrameMoments frame_moments(std::span<const std::uint8_t> frame, int width, int height) {
    const auto n = static_cast<double>(frame.size());
    double sum = 0.0;
    for (auto v : frame) sum += v;
    const double mean = sum / n;

    double var = 0.0;
    double cx = 0.0;
    double cy = 0.0;
    for (int y = 0; y < height; ++y) {
        const auto* row = frame.data() + static_cast<std::size_t>(y) * width;
        const auto* below = y + 1 < height ? row + width : nullptr;
        for (int x = 0; x < width; ++x) {
            const double a = row[x] - mean;
            var += a * a;
            if (x + 1 < width) cx += a * (row[x + 1] - mean);
            if (below) cy += a * (below[x] - mean);
        }
    }
    FrameMoments m;
    m.variance = var / n;
    if (width > 1) m.cov_x = cx / (static_cast<double>(width - 1) * height);
    if (height > 1) m.cov_y = cy / (static_cast<double>(height - 1) * width);
    return m;
}

double clamp_correlation(double raw, bool& degenerate) {
    if (!std::isfinite(raw) || raw < 0.0 || raw > kMaxCorrelation) degenerate = true;
    if (!std::isfinite(raw)) return 0.0;
    return std::clamp(raw, 0.0, kMaxCorrelation);
}

}  // namespace

SpatialStats estimate_spatial_stats(const RawVideo& video) {
    if (video.frames.empty()) throw ValidationError("spatial statistics need at least 1 frame");
    if (video.width <= 0 || video.height <= 0) {
        throw ValidationError("frame dimensions must be positive");
    }

    double var_sum = 0.0;
    double rx_sum = 0.0;
    double ry_sum = 0.0;
    std::size_t informative = 0;
    for (const auto& frame : video.frames) {
        if (frame.size() != video.frame_size()) {
            throw ValidationError("frame has " + std::to_string(frame.size()) +
                                  " samples, expected " + std::to_string(video.frame_size()));
        }
        const auto m = frame_moments(frame, video.width, video.height);
        var_sum += m.variance;
        if (m.variance > 0.0) {
            rx_sum += m.cov_x / m.variance;
            ry_sum += m.cov_y / m.variance;
            ++informative;
        }
    }

    SpatialStats out;
    out.sigma_v2 = var_sum / static_cast<double>(video.frames.size());
    if (informative == 0) {
        out.degenerate = true;
        return out;
    }
    const auto k = static_cast<double>(informative);
    out.rho_vx = clamp_correlation(rx_sum / k, out.degenerate);
    out.rho_vy = clamp_correlation(ry_sum / k, out.degenerate);
    return out;
}

std::vector<BlockMatch> match_blocks(std::span<const std::uint8_t> reference,
                                     std::span<const std::uint8_t> current, int width,
                                     int height, int block, int search_range, int threads) {
    if (block <= 0) throw ValidationError("block size must be positive");
    if (search_range < 0) throw ValidationError("search range must be >= 0");
    if (width % block != 0 || height % block != 0) {
        throw ValidationError("block size " + std::to_string(block) +
                              " does not divide frame " + std::to_string(width) + "x" +
                              std::to_string(height));
    }
    const auto frame_size = static_cast<std::size_t>(width) * height;
    if (reference.size() != frame_size || current.size() != frame_size) {
        throw ValidationError("frame buffers do not match the frame dimensions");
    }

    const int cols = width / block;
    const int rows = height / block;
    std::vector<BlockMatch> out(static_cast<std::size_t>(cols) * rows);

    detail::parallel_for(out.size(), threads, [&](std::size_t idx) {
        const int bx = static_cast<int>(idx) % cols;
        const int by = static_cast<int>(idx) / cols;
        const int x0 = bx * block;
        const int y0 = by * block;

        const int dy_lo = std::max(-search_range, -y0);
        const int dy_hi = std::min(search_range, height - block - y0);
        const int dx_lo = std::max(-search_range, -x0);
        const int dx_hi = std::min(search_range, width - block - x0);

        long long best_ssd = std::numeric_limits<long long>::max();
        int best_mag = 0;
        int best_dx = 0;
        int best_dy = 0;
        for (int dy = dy_lo; dy <= dy_hi; ++dy) {
            for (int dx = dx_lo; dx <= dx_hi; ++dx) {
                long long ssd = 0;
                for (int y = 0; y < block && ssd <= best_ssd; ++y) {
                    const auto* c = current.data() + static_cast<std::size_t>(y0 + y) * width + x0;
                    const auto* r =
                        reference.data() + static_cast<std::size_t>(y0 + y + dy) * width + x0 + dx;
                    for (int x = 0; x < block; ++x) {
                        const int d = static_cast<int>(c[x]) - static_cast<int>(r[x]);
                        ssd += d * d;
                    }
                }
                const int mag = dx * dx + dy * dy;
                // Scan order is already raster order, so a strict comparison on
                // (ssd, mag) keeps the earliest candidate among exact ties.
                if (std::tie(ssd, mag) < std::tie(best_ssd, best_mag)) {
                    best_ssd = ssd;
                    best_mag = mag;
                    best_dx = dx;
                    best_dy = dy;
                }
            }
        }
        out[idx] = BlockMatch{bx, by, best_dx, best_dy, static_cast<double>(best_ssd)};
    });
    return out;
}

double estimate_prediction_error(const RawVideo& video, const MatchOptions& options) {
    if (video.frames.size() < 2) {
        throw ValidationError("prediction error needs at least 2 frames, got " +
                              std::to_string(video.frames.size()));
    }
    if (options.max_pairs < 1) throw ValidationError("pair count must be >= 1");

    const auto pairs = std::min<std::size_t>(static_cast<std::size_t>(options.max_pairs),
                                             video.frames.size() - 1);
    const double pixels_per_block = static_cast<double>(options.block) * options.block;
    double total = 0.0;
    for (std::size_t p = 0; p < pairs; ++p) {
        const auto matches = match_blocks(video.frame(p), video.frame(p + 1), video.width,
                                          video.height, options.block, options.search_range,
                                          options.threads);
        double ssd = 0.0;
        for (const auto& m : matches) ssd += m.ssd;
        total += ssd / (pixels_per_block * static_cast<double>(matches.size()));
    }
    return total / static_cast<double>(pairs);
}

QvarEstimate estimate_qvar(double sigma_hat_12, double sigma_v2, double rho_v,
                           double frame_rate, const MotionParams& params) {
    if (!(frame_rate > 0.0)) throw ValidationError("frame rate must be positive");
    const double me = params.sigma_dx2 + params.sigma_dy2;
    const double denominator = 2.0 * (me * params.L + 1.0) / frame_rate;
    if (!(denominator > 0.0)) {
        throw ValidationError("motion-complexity denominator must be positive");
    }
    QvarEstimate out;
    out.raw = (sigma_hat_12 - 2.0 * me * sigma_v2 * (1.0 - rho_v)) / denominator;
    out.clamped = out.raw < 0.0;
    out.qvar = std::max(out.raw, 0.0);
    return out;
}

StatsEstimate estimate_video_stats(const RawVideo& video, const MatchOptions& options,
                                   const MotionParams& params) {
    video.validate();
    const auto spatial = estimate_spatial_stats(video);

    StatsEstimate out;
    out.sigma_hat_12 = estimate_prediction_error(video, options);
    out.spatial_degenerate = spatial.degenerate;

    auto& s = out.stats;
    s.sigma_v2 = spatial.sigma_v2;
    s.rho_vx = spatial.rho_vx;
    s.rho_vy = spatial.rho_vy;
    s.width = video.width;
    s.height = video.height;
    s.frame_rate = video.frame_rate;

    const auto q = estimate_qvar(out.sigma_hat_12, s.sigma_v2, s.rho_v(), s.frame_rate, params);
    s.qvar = q.qvar;
    out.qvar_clamped = q.clamped;
    return out;
}

}  // namespace scalerd
