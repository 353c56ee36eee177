#include "scalerd/residual_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "scalerd/error.hpp"

namespace scalerd {

CompressionNoiseMode parse_compression_noise_mode(std::string_view text) {
    if (text == "gaussian") return CompressionNoiseMode::gaussian;
    if (text == "empirical") return CompressionNoiseMode::empirical;
    throw ValidationError("unknown compression noise mode '" + std::string(text) +
                          "' (expected gaussian or empirical)");
}

const char* to_string(CompressionNoiseMode mode) {
    return mode == CompressionNoiseMode::gaussian ? "gaussian" : "empirical";
}

double compression_noise(CompressionNoiseMode mode, double bits_per_pixel, double sigma_v2,
                         double rd_alpha, double rd_beta) {
    if (!(bits_per_pixel >= 0.0)) throw ValidationError("bits per pixel must be >= 0");
    if (mode == CompressionNoiseMode::gaussian) {
        return sigma_v2 * std::exp2(-2.0 * bits_per_pixel);
    }
    if (bits_per_pixel == 0.0) {
        throw ValidationError("empirical rate-distortion model has a pole at r = 0");
    }
    return rd_beta * std::pow(bits_per_pixel, -rd_alpha);
}

ResidualParams ResidualParams::from_pel_units(double sigma_dx2_pel, double sigma_dy2_pel,
                                              double L, int width, int height,
                                              double gamma_skip, double k_quant) {
    if (width <= 0 || height <= 0) throw ValidationError("frame dimensions must be positive");
    ResidualParams p;
    p.eps_x = 1.0 / width;
    p.eps_y = 1.0 / height;
    p.sigma_dx2 = sigma_dx2_pel * p.eps_x * p.eps_x;
    p.sigma_dy2 = sigma_dy2_pel * p.eps_y * p.eps_y;
    p.L = L;
    p.gamma_skip = gamma_skip;
    p.k_quant = k_quant;
    return p;
}

void ResidualParams::validate() const {
    if (!(sigma_dx2 >= 0.0) || !(sigma_dy2 >= 0.0)) {
        throw ValidationError("ME accuracy variances must be >= 0");
    }
    if (!(L >= 0.0)) throw ValidationError("temporal memory factor L must be >= 0");
    if (!(eps_x > 0.0) || !(eps_y > 0.0)) throw ValidationError("pixel widths must be positive");
    if (!(gamma_skip >= 1.0)) throw ValidationError("gamma_skip must be >= 1");
    if (!(k_quant >= 1.0 && k_quant <= 3.0)) throw ValidationError("k_quant must lie in [1, 3]");
}

double residual_variance(const VideoStats& stats, const ResidualParams& params,
                         const NoiseState& noise, double f_rate_scaled) {
    params.validate();
    if (!(f_rate_scaled > 0.0)) throw ValidationError("scaled frame rate must be positive");
    const double me = params.pel_sigma_dx2() + params.pel_sigma_dy2();
    const double d_t = 1.0 / f_rate_scaled;
    return 2.0 * me *
               (stats.sigma_v2 * (1.0 - stats.rho_v()) +
                params.L / f_rate_scaled * stats.qvar + noise.sigma_w_ref2) +
           2.0 * stats.qvar * d_t + noise.sigma_w_current2 + noise.sigma_w_ref2;
}

CorrelationEstimate residual_rho(const VideoStats& stats, const ResidualParams& params,
                                 const NoiseState& noise, double f_rate_scaled, Axis axis) {
    const double var = residual_variance(stats, params, noise, f_rate_scaled);
    CorrelationEstimate out;
    if (!(var > 0.0)) {
        out.degenerate = true;
        return out;
    }
    const double own = axis == Axis::x ? params.pel_sigma_dx2() : params.pel_sigma_dy2();
    const double other = axis == Axis::x ? params.pel_sigma_dy2() : params.pel_sigma_dx2();
    const double s2 = stats.sigma_v2;
    const double rho = stats.rho_v();

    const double rhs = 2.0 * (own + other) * s2 * rho -
                       own * (s2 * (1.0 + rho * rho) + params.L / f_rate_scaled * stats.qvar +
                              noise.sigma_w_ref2) -
                       2.0 * other * s2 * rho * rho;
    out.raw = rhs / var;
    out.rho = std::clamp(out.raw, 0.0, kMaxCorrelation);
    out.clamped = out.rho != out.raw;
    return out;
}

double skip_mse(double residual_variance, double gamma_skip) {
    if (!(gamma_skip >= 1.0)) throw ValidationError("gamma_skip must be >= 1");
    return gamma_skip * residual_variance;
}

}  // namespace scalerd
