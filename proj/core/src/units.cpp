#include "scalerd/units.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

#include "scalerd/error.hpp"

namespace scalerd {

void ScalingChoice::validate() const {
    if (!(d_m >= 1.0) || !(d_n >= 1.0) || !std::isfinite(d_m) || !std::isfinite(d_n)) {
        throw ValidationError("spatial down-scaling factors must be finite and >= 1");
    }
    if (d_t < 1) throw ValidationError("temporal down-scaling factor must be >= 1");
}

Slicing slicing_from_scaling(int width, int height, double frame_rate,
                             const ScalingChoice& choice, int block) {
    choice.validate();
    if (block <= 0) throw ValidationError("block size must be positive");
    if (width <= 0 || height <= 0) throw ValidationError("frame dimensions must be positive");
    if (!(frame_rate > 0.0)) throw ValidationError("frame rate must be positive");

    const double mx = width / (block * choice.d_m);
    const double ny = height / (block * choice.d_n);
    const long m = std::lround(mx);
    const long n = std::lround(ny);
    if (m < 1 || n < 1) {
        throw ValidationError("scaled frame is smaller than one " + std::to_string(block) +
                              "-pixel block");
    }

    const double t = frame_rate / choice.d_t;
    const double t_round = std::round(t);
    if (std::abs(t - t_round) > 1e-9 * std::max(1.0, t) || t_round < 1.0) {
        throw ValidationError("frame rate " + std::to_string(frame_rate) +
                              " is not divisible by d_t = " + std::to_string(choice.d_t));
    }

    Slicing out;
    out.params = {static_cast<int>(m), static_cast<int>(n), static_cast<int>(t_round)};
    out.d_m_effective = static_cast<double>(width) / (static_cast<double>(block) * m);
    out.d_n_effective = static_cast<double>(height) / (static_cast<double>(block) * n);
    out.rounded = mx != static_cast<double>(m) || ny != static_cast<double>(n);
    return out;
}

BitBudget::BitBudget(double bits_per_second) : bps_(bits_per_second) {
    if (!(bits_per_second > 0.0) || !std::isfinite(bits_per_second)) {
        throw ValidationError("bit-rate must be positive and finite");
    }
}

double bits_per_slice(const BitBudget& budget, const SlicingParams& slicing) {
    if (slicing.m < 1 || slicing.n < 1 || slicing.t < 1) {
        throw ValidationError("slicing parameters must be >= 1");
    }
    return budget.bits_per_second() / static_cast<double>(slicing.slice_count());
}

double bits_per_pixel(double bits_per_slice, int block) {
    if (block <= 0) throw ValidationError("block size must be positive");
    return bits_per_slice / (static_cast<double>(block) * block);
}

double parse_bitrate(std::string_view text) {
    const auto bad = [&] { return ValidationError("invalid bit-rate '" + std::string(text) + "'"); };
    if (text.empty()) throw bad();

    double scale = 1.0;
    switch (std::tolower(static_cast<unsigned char>(text.back()))) {
        case 'k': scale = 1e3; break;
        case 'm': scale = 1e6; break;
        case 'g': scale = 1e9; break;
        default: break;
    }
    auto digits = scale == 1.0 ? text : text.substr(0, text.size() - 1);

    double value = 0.0;
    const auto* end = digits.data() + digits.size();
    const auto [ptr, ec] = std::from_chars(digits.data(), end, value);
    if (ec != std::errc{} || ptr != end) throw bad();
    value *= scale;
    if (!(value > 0.0) || !std::isfinite(value)) throw bad();
    return value;
}

}  // namespace scalerd
