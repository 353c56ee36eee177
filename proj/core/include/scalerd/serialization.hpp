#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "scalerd/system_model.hpp"
#include "scalerd/video_stats.hpp"

namespace scalerd {

/// Overlays the keys present in `json_text` onto `base`. Unknown keys raise
/// ValidationError so typos do not silently fall back to defaults.
ModelConfig config_from_json(std::string_view json_text, const ModelConfig& base = {});
std::string config_to_json(const ModelConfig& config);

VideoStats stats_from_json(std::string_view json_text);

/// Keys: sigma_v2, rho_vx, rho_vy, qvar, width, height, frame_rate, plus the
/// optional diagnostics and embedded configuration.
std::string stats_to_json(const StatsEstimate& estimate, std::string_view effective_config_json);

std::string prediction_to_json(const RDPrediction& prediction, const VideoStats& stats,
                               const ModelConfig& config);

std::string optimize_to_json(const OptimizeResult& result, const VideoStats& stats,
                             const ModelConfig& config);

/// CSV with a '#'-prefixed reproducibility header carrying the effective config.
std::string sweep_to_csv(const std::vector<SweepRow>& rows, const VideoStats& stats,
                         const ModelConfig& config);

inline constexpr const char* kSweepCsvHeader =
    "bitrate_bps,d_m,d_n,d_t,b_slice,p_inter,mse_spatial,mse_compression,mse_fruc_mean,"
    "mse_overall,psnr_db,flags";

}  // namespace scalerd
