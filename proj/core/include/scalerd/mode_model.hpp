#pragma once

namespace scalerd {

/// Constants of the linear-fractional inter-mode model.
/// p_inter_asymp_min is on the 0-100 percentage scale.
struct ModeParams {
    double p_inter_asymp_min = 85.0;
    double gamma_c = 0.3;
    double gamma_d = 20.0;

    void validate() const;
};

struct ModeCoefficients {
    double c_m = 1.0;
    double d_m = 0.0;
};

ModeCoefficients mode_coefficients(const ModeParams& params, double qvar, double frame_rate);

struct ModeProbabilities {
    double p_inter = 0.0;
    double p_skip = 1.0;
};

/// p_inter = B / (c_m B + d_m), clamped to [0, 1]; p_skip = 1 - p_inter.
/// Intra coding is not modelled.
ModeProbabilities mode_probabilities(double bits_per_slice, const ModeCoefficients& coeffs);

inline double p_inter(double bits_per_slice, const ModeCoefficients& coeffs) {
    return mode_probabilities(bits_per_slice, coeffs).p_inter;
}

}  // namespace scalerd
