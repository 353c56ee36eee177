#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace scalerd {

/// 8-bit planar luma video. Frame t, sample (x, y) lives at
/// frames[t][y * width + x].
struct RawVideo {
    int width = 0;
    int height = 0;
    double frame_rate = 0.0;
    std::vector<std::vector<std::uint8_t>> frames;

    std::size_t frame_size() const {
        return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    }
    std::size_t frame_count() const { return frames.size(); }

    std::span<const std::uint8_t> frame(std::size_t t) const { return frames.at(t); }

    std::uint8_t at(std::size_t t, int x, int y) const {
        return frames[t][static_cast<std::size_t>(y) * width + x];
    }

    /// Throws ValidationError if the invariants (positive dimensions and rate,
    /// at least two frames, every frame width*height samples) do not hold.
    void validate() const;
};

/// Reads concatenated row-major frames. The file size must be an exact multiple
/// of width*height bytes; a mismatch raises IoError naming both byte counts.
RawVideo load_raw_video(const std::filesystem::path& path, int width, int height,
                        double frame_rate);

void write_raw_video(const std::filesystem::path& path, const RawVideo& video);

}  // namespace scalerd
