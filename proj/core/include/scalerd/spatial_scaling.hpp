#pragma once

#include "scalerd/video_stats.hpp"

namespace scalerd {

/// Separable first-order Markov frame model on the unit square:
/// R(tx, ty) = sigma_v2 * exp(-alpha_x |tx|) * exp(-alpha_y |ty|).
struct FramePsdParams {
    double sigma_v2 = 0.0;
    double alpha_x = 1.0;  // -W0 * log(rho_vx)
    double alpha_y = 1.0;  // -H0 * log(rho_vy)
    double w0 = 1.0;
    double h0 = 1.0;

    /// Correlations are clamped to [kMinCorrelation, kMaxCorrelation] first.
    static FramePsdParams from_stats(const VideoStats& stats);
};

inline constexpr double kMinCorrelation = 1e-9;

/// alpha = -extent * log(rho) with rho clamped into (0, 1).
double decay_from_correlation(double rho, double extent);

/// 4 sigma^2 ax ay / ((ax^2 + wx^2)(ay^2 + wy^2)).
double psd(const FramePsdParams& params, double omega_x, double omega_y);

/// Integral of the two unit-mass Lorentzian factors (2a / (a^2 + w^2)) over
/// [wx1, wx2] x [wy1, wy2]. Bounds may be +infinity.
double integral_I(double omega_x1, double omega_x2, double omega_y1, double omega_y2,
                  double alpha_x, double alpha_y);

/// Power lost when the PSD support shrinks from |w| <= pi*(W0, H0) to
/// |w| <= pi*(W0/d_m, H0/d_n).
double spatial_scaling_mse(const FramePsdParams& params, double d_m, double d_n);

}  // namespace scalerd
