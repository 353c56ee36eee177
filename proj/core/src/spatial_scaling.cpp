#include "scalerd/spatial_scaling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "scalerd/error.hpp"

namespace scalerd {

double decay_from_correlation(double rho, double extent) {
    return -extent * std::log(std::clamp(rho, kMinCorrelation, kMaxCorrelation));
}

FramePsdParams FramePsdParams::from_stats(const VideoStats& stats) {
    FramePsdParams p;
    p.sigma_v2 = stats.sigma_v2;
    p.w0 = stats.width;
    p.h0 = stats.height;
    p.alpha_x = decay_from_correlation(stats.rho_vx, p.w0);
    p.alpha_y = decay_from_correlation(stats.rho_vy, p.h0);
    return p;
}

double psd(const FramePsdParams& params, double omega_x, double omega_y) {
    const double ax = params.alpha_x;
    const double ay = params.alpha_y;
    return 4.0 * params.sigma_v2 * ax * ay /
           ((ax * ax + omega_x * omega_x) * (ay * ay + omega_y * omega_y));
}

namespace {

// atan(w2/a) - atan(w1/a); atan(inf) is pi/2.
double arctan_band(double w1, double w2, double a) {
    return std::atan(w2 / a) - std::atan(w1 / a);
}

}  // namespace

double integral_I(double omega_x1, double omega_x2, double omega_y1, double omega_y2,
                  double alpha_x, double alpha_y) {
    if (!(alpha_x > 0.0) || !(alpha_y > 0.0)) throw ValidationError("decay must be positive");
    if (!(omega_x1 <= omega_x2) || !(omega_y1 <= omega_y2) || omega_x1 < 0.0 ||
        omega_y1 < 0.0) {
        throw ValidationError("integration bounds must be ordered and nonnegative");
    }
    return 4.0 * arctan_band(omega_x1, omega_x2, alpha_x) *
           arctan_band(omega_y1, omega_y2, alpha_y);
}

double spatial_scaling_mse(const FramePsdParams& params, double d_m, double d_n) {
    if (!(d_m >= 1.0) || !(d_n >= 1.0)) {
        throw ValidationError("down-scaling factors must be >= 1");
    }
    if (d_m == 1.0 && d_n == 1.0) return 0.0;

    const double pi = std::numbers::pi;
    const double wx0 = pi * params.w0;
    const double wy0 = pi * params.h0;
    const double wxd = wx0 / d_m;
    const double wyd = wy0 / d_n;
    const double ax = params.alpha_x;
    const double ay = params.alpha_y;

    const double sum = integral_I(wxd, wx0, wyd, wy0, ax, ay) +
                       integral_I(wxd, wx0, 0.0, wyd, ax, ay) +
                       integral_I(0.0, wxd, wyd, wy0, ax, ay);
    return params.sigma_v2 / (pi * pi) * sum;
}

}  // namespace scalerd
