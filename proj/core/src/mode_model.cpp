#include "scalerd/mode_model.hpp"

#include <algorithm>
#include <cmath>

#include "scalerd/error.hpp"

namespace scalerd {

void ModeParams::validate() const {
    if (!(p_inter_asymp_min > 0.0 && p_inter_asymp_min <= 100.0)) {
        throw ValidationError("p_inter_asymp_min must lie in (0, 100]");
    }
    if (!(gamma_c >= 0.0)) throw ValidationError("gamma_c must be >= 0");
    if (!(gamma_d >= 0.0)) throw ValidationError("gamma_d must be >= 0");
}

ModeCoefficients mode_coefficients(const ModeParams& params, double qvar, double frame_rate) {
    params.validate();
    if (!(frame_rate > 0.0)) throw ValidationError("frame rate must be positive");
    if (!(qvar >= 0.0)) throw ValidationError("qvar must be >= 0");
    const double motion = qvar / frame_rate;
    return {100.0 / (params.p_inter_asymp_min + params.gamma_c * motion),
            params.gamma_d + motion};
}

ModeProbabilities mode_probabilities(double bits_per_slice, const ModeCoefficients& coeffs) {
    if (!(bits_per_slice >= 0.0)) throw ValidationError("bits per slice must be >= 0");
    if (std::isinf(bits_per_slice)) {
        const double p = std::clamp(1.0 / coeffs.c_m, 0.0, 1.0);
        return {p, 1.0 - p};
    }
    const double denom = coeffs.c_m * bits_per_slice + coeffs.d_m;
    if (bits_per_slice == 0.0) return {0.0, 1.0};
    if (!(denom > 0.0)) throw ValidationError("mode model denominator must be positive");
    const double p = std::clamp(bits_per_slice / denom, 0.0, 1.0);
    return {p, 1.0 - p};
}

}  // namespace scalerd
