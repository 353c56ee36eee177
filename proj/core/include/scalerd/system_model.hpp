#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scalerd/mode_model.hpp"
#include "scalerd/residual_model.hpp"
#include "scalerd/transform_coding.hpp"
#include "scalerd/units.hpp"
#include "scalerd/video_stats.hpp"

namespace scalerd {

/// Residual-model settings as they appear in configuration files: accuracies in
/// squared pels of the original raster.
struct ResidualConfig {
    double sigma_dx2 = 1.0 / 48.0;
    double sigma_dy2 = 1.0 / 48.0;
    double L = 100.0;
    double gamma_skip = 2.0;
    double k_quant = 1.5;
    CompressionNoiseMode noise_mode = CompressionNoiseMode::gaussian;
    double rd_alpha = 1.0;
    double rd_beta = 100.0;
    bool fixed_point = false;
};

/// Interpolation (frame-rate up-conversion) model for discarded frames.
struct FrucParams {
    double sigma_dx_abs2 = 4.0 / 48.0;
    double sigma_dy_abs2 = 4.0 / 48.0;
    double sigma_wj2 = 0.0;
    double L = 100.0;

    void validate() const;
};

struct ModelConfig {
    int block = kDefaultBlock;
    ModeParams mode;
    ResidualConfig residual;
    TransformConfig transform = TransformConfig::baseline();
    FrucParams fruc;
    bool independent_spatial = false;  // optimise d_n separately from d_m

    void validate() const;
};

/// MSE of the j-th interpolated frame (1 <= j <= d_t - 1) when the available
/// frames carry noise mse_compression. Frame rates are those of the original video.
double fruc_mse(const VideoStats& stats, const FrucParams& params, int d_t, int j,
                double mse_compression, double f_rate_original);

struct RDPrediction {
    ScalingChoice choice;
    Slicing slicing;
    double bitrate_bps = 0.0;
    double b_slice = 0.0;
    double bits_per_pixel = 0.0;

    double sigma_spatial_scaling2 = 0.0;
    double sigma_compression2 = 0.0;
    double residual_variance = 0.0;
    double rho_rx = 0.0;
    double rho_ry = 0.0;

    double c_m = 0.0;
    double d_m = 0.0;
    double p_inter = 0.0;
    double p_skip = 0.0;
    std::vector<double> b_kl;

    double mse_inter = 0.0;
    double mse_skip = 0.0;
    double mse_compression = 0.0;
    double mse_spatial = 0.0;  // MSE of coded frames; equals mse_compression
    std::vector<double> mse_fruc_per_frame;
    double mse_fruc_mean = 0.0;
    double mse_overall = 0.0;
    double psnr = 0.0;

    int fixed_point_iterations = 0;
    std::vector<std::string> flags;
};

double psnr_from_mse(double mse);

/// Runs the full model for one scaling choice and budget. Errors raised by a
/// component are rethrown with the pipeline stage attached.
RDPrediction predict(const VideoStats& stats, const ScalingChoice& choice,
                     const BitBudget& budget, const ModelConfig& config);

struct CandidateSet {
    std::vector<double> spatial = {1.0, 2.0, 3.0};
    std::vector<double> spatial_n;  // used only with independent_spatial; empty = spatial
    std::vector<int> temporal = {1, 2, 3};
};

/// Ordered by d_t, then d_m, then d_n. With independent == false, d_n = d_m.
std::vector<ScalingChoice> enumerate_candidates(const CandidateSet& candidates,
                                                bool independent);

struct GridPoint {
    ScalingChoice choice;
    std::optional<RDPrediction> prediction;
    std::string error;
};

struct OptimizeResult {
    ScalingChoice best;
    RDPrediction best_prediction;
    std::vector<GridPoint> grid;
};

/// Exhaustive search; ties go to the smaller d_t, then d_m, then d_n.
OptimizeResult optimize(const VideoStats& stats, const BitBudget& budget,
                        const CandidateSet& candidates, const ModelConfig& config,
                        int threads = 1);

struct SweepRow {
    double bitrate_bps = 0.0;
    ScalingChoice choice;
    std::optional<RDPrediction> prediction;
    std::string error;
};

/// One row per (bit-rate, candidate), sorted by (bit-rate, d_t, d_m, d_n).
/// Per-point failures are recorded in SweepRow::error.
std::vector<SweepRow> sweep(const VideoStats& stats, const std::vector<double>& bitrates,
                            const CandidateSet& candidates, const ModelConfig& config,
                            int threads = 1);

}  // namespace scalerd
