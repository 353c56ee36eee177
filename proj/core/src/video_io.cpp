#include "scalerd/video_io.hpp"

#include <fstream>
#include <string>
#include <system_error>

#include "scalerd/error.hpp"

namespace scalerd {

void RawVideo::validate() const {
    if (width <= 0 || height <= 0) {
        throw ValidationError("frame dimensions must be positive, got " +
                              std::to_string(width) + "x" + std::to_string(height));
    }
    if (!(frame_rate > 0.0)) {
        throw ValidationError("frame rate must be positive, got " + std::to_string(frame_rate));
    }
    if (frames.size() < 2) {
        throw ValidationError("video needs at least 2 frames, got " +
                              std::to_string(frames.size()));
    }
    for (std::size_t t = 0; t < frames.size(); ++t) {
        if (frames[t].size() != frame_size()) {
            throw ValidationError("frame " + std::to_string(t) + " has " +
                                  std::to_string(frames[t].size()) + " samples, expected " +
                                  std::to_string(frame_size()));
        }
    }
}

RawVideo load_raw_video(const std::filesystem::path& path, int width, int height,
                        double frame_rate) {
    if (width <= 0 || height <= 0) {
        throw ValidationError("frame dimensions must be positive, got " +
                              std::to_string(width) + "x" + std::to_string(height));
    }
    if (!(frame_rate > 0.0)) {
        throw ValidationError("frame rate must be positive, got " + std::to_string(frame_rate));
    }

    std::error_code ec;
    const auto bytes = std::filesystem::file_size(path, ec);
    if (ec) {
        throw IoError("cannot stat '" + path.string() + "': " + ec.message());
    }
    const std::uintmax_t frame_bytes = static_cast<std::uintmax_t>(width) * height;
    if (bytes % frame_bytes != 0) {
        const auto expected = (bytes / frame_bytes + 1) * frame_bytes;
        throw IoError("file size mismatch for '" + path.string() + "': actual " +
                      std::to_string(bytes) + " bytes is not a multiple of " +
                      std::to_string(frame_bytes) + " bytes per frame (expected " +
                      std::to_string(bytes - bytes % frame_bytes) + " or " +
                      std::to_string(expected) + " bytes)");
    }

    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "'");
    }

    RawVideo video;
    video.width = width;
    video.height = height;
    video.frame_rate = frame_rate;
    const auto count = static_cast<std::size_t>(bytes / frame_bytes);
    video.frames.resize(count);
    for (auto& frame : video.frames) {
        frame.resize(frame_bytes);
        in.read(reinterpret_cast<char*>(frame.data()), static_cast<std::streamsize>(frame_bytes));
        if (!in) {
            throw IoError("short read from '" + path.string() + "'");
        }
    }
    video.validate();
    return video;
}

void write_raw_video(const std::filesystem::path& path, const RawVideo& video) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    for (const auto& frame : video.frames) {
        out.write(reinterpret_cast<const char*>(frame.data()),
                  static_cast<std::streamsize>(frame.size()));
    }
    if (!out) {
        throw IoError("write failed for '" + path.string() + "'");
    }
}

}  // namespace scalerd
