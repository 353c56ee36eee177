#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scalerd/system_model.hpp"

namespace scalerd::cli {

enum ExitCode : int {
    kOk = 0,
    kValidation = 2,
    kIo = 3,
    kNumeric = 4,
};

struct EstimateStatsOptions {
    std::filesystem::path video;
    int width = 0;
    int height = 0;
    double fps = 0.0;
    int pairs = 10;
    int search_range = 16;
    int block = 16;
    int threads = 1;
};

struct PredictOptions {
    std::filesystem::path stats;
    double bitrate = 0.0;
    ScalingChoice choice;
};

struct GridOptions {
    std::filesystem::path stats;
    std::vector<double> bitrates;
    CandidateSet candidates;
    int threads = 1;
};

ModelConfig load_config(const std::optional<std::filesystem::path>& path);
std::string read_text_file(const std::filesystem::path& path);

/// "1e5,180k,1M" or a log-spaced range "lo:hi:count".
std::vector<double> parse_bitrate_list(std::string_view text);

/// "spatial:temporal" such as "1,2,3:1,2,3"; an optional third field gives the
/// vertical factors when they are optimised independently.
CandidateSet parse_candidates(std::string_view text);

std::string cmd_estimate_stats(const EstimateStatsOptions& options, const ModelConfig& config);
std::string cmd_predict(const PredictOptions& options, const ModelConfig& config);
std::string cmd_optimize(const GridOptions& options, const ModelConfig& config);
std::string cmd_sweep(const GridOptions& options, const ModelConfig& config);

/// Full command-line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace scalerd::cli
