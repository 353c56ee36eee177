#pragma once

#include <string_view>

#include "scalerd/video_stats.hpp"

namespace scalerd {

enum class CompressionNoiseMode {
    gaussian,   // sigma_v2 * 2^(-2r)
    empirical,  // beta * r^(-alpha)
};

CompressionNoiseMode parse_compression_noise_mode(std::string_view text);
const char* to_string(CompressionNoiseMode mode);

/// Temporally-local compression noise at r bits per pixel.
double compression_noise(CompressionNoiseMode mode, double bits_per_pixel, double sigma_v2,
                         double rd_alpha = 1.0, double rd_beta = 100.0);

/// Parameters of the MC-prediction residual model on the continuous unit square.
///
/// sigma_dx2 / sigma_dy2 are displacement-error variances in unit-square units;
/// eps_x / eps_y are the original pixel widths (1/W0, 1/H0). The ratio
/// sigma_dx2 / eps_x^2 is the same variance in original-raster pels, which is
/// what the correlation-coefficient expression consumes.
struct ResidualParams {
    double sigma_dx2 = 0.0;
    double sigma_dy2 = 0.0;
    double L = 100.0;
    double eps_x = 1.0;
    double eps_y = 1.0;
    double gamma_skip = 2.0;
    double k_quant = 1.5;

    /// Builds the continuous variances from pel-unit accuracies of a W0 x H0 raster.
    static ResidualParams from_pel_units(double sigma_dx2_pel, double sigma_dy2_pel, double L,
                                         int width, int height, double gamma_skip = 2.0,
                                         double k_quant = 1.5);

    double pel_sigma_dx2() const { return sigma_dx2 / (eps_x * eps_x); }
    double pel_sigma_dy2() const { return sigma_dy2 / (eps_y * eps_y); }

    void validate() const;
};

struct NoiseState {
    double sigma_w_current2 = 0.0;  // coded frame: spatial scaling only
    double sigma_w_ref2 = 0.0;      // reference frame: spatial scaling + compression

    static NoiseState from_components(double spatial_scaling2, double compression2) {
        return {spatial_scaling2, spatial_scaling2 + compression2};
    }
};

/// Variance of the MC-prediction residual at the coded frame rate.
/// The temporal distance between coded frames is 1 / f_rate_scaled.
double residual_variance(const VideoStats& stats, const ResidualParams& params,
                         const NoiseState& noise, double f_rate_scaled);

enum class Axis { x, y };

struct CorrelationEstimate {
    double rho = 0.0;
    double raw = 0.0;
    bool clamped = false;     // raw value outside [0, kMaxCorrelation]
    bool degenerate = false;  // zero residual variance
};

CorrelationEstimate residual_rho(const VideoStats& stats, const ResidualParams& params,
                                 const NoiseState& noise, double f_rate_scaled, Axis axis);

/// gamma * sigma_fr2; gamma < 1 raises ValidationError.
double skip_mse(double residual_variance, double gamma_skip);

}  // namespace scalerd
