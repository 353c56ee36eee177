#include "scalerd/system_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <utility>

#include "parallel.hpp"
#include "scalerd/error.hpp"
#include "scalerd/spatial_scaling.hpp"

namespace scalerd {

void FrucParams::validate() const {
    if (!(sigma_dx_abs2 >= 0.0) || !(sigma_dy_abs2 >= 0.0) || !(sigma_wj2 >= 0.0) ||
        !(L >= 0.0)) {
        throw ValidationError("FRUC parameters must be >= 0");
    }
}

void ModelConfig::validate() const {
    if (block <= 0) throw ValidationError("block size must be positive");
    mode.validate();
    transform.validate();
    fruc.validate();
    if (transform.beta * transform.d_trans != block) {
        throw ValidationError("beta * d_trans = " +
                              std::to_string(transform.beta * transform.d_trans) +
                              " does not match the block size " + std::to_string(block));
    }
    const auto& r = residual;
    if (!(r.sigma_dx2 >= 0.0) || !(r.sigma_dy2 >= 0.0)) {
        throw ValidationError("ME accuracy variances must be >= 0");
    }
    if (!(r.L >= 0.0)) throw ValidationError("temporal memory factor L must be >= 0");
    if (!(r.gamma_skip >= 1.0)) throw ValidationError("gamma_skip must be >= 1");
    if (!(r.k_quant >= 1.0 && r.k_quant <= 3.0)) throw ValidationError("k_quant must lie in [1, 3]");
    if (!(r.rd_beta > 0.0) || !(r.rd_alpha > 0.0)) {
        throw ValidationError("rd_alpha and rd_beta must be positive");
    }
}

double fruc_mse(const VideoStats& stats, const FrucParams& params, int d_t, int j,
                double mse_compression, double f_rate_original) {
    params.validate();
    if (d_t < 2) throw ValidationError("interpolated frames need d_t >= 2");
    if (j < 1 || j > d_t - 1) {
        throw ValidationError("interpolated frame index " + std::to_string(j) +
                              " outside [1, " + std::to_string(d_t - 1) + "]");
    }
    if (!(f_rate_original > 0.0)) throw ValidationError("frame rate must be positive");
    const double q = stats.qvar;
    const double memory = params.L / f_rate_original * q;
    return 0.5 * (q * d_t / f_rate_original + mse_compression + params.sigma_wj2) +
           (params.sigma_dx_abs2 + params.sigma_dy_abs2) *
               ((1.0 - stats.rho_v()) * stats.sigma_v2 + memory + mse_compression);
}

double psnr_from_mse(double mse) {
    if (mse <= 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(255.0 * 255.0 / mse);
}

namespace {

template <typename Fn>
auto staged(const char* stage, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const Error& e) {
        throw e.with_stage(stage);
    }
}

double residual_decay(double rho, double extent) {
    if (rho <= 0.0) return std::numeric_limits<double>::infinity();
    return -extent * std::log(std::min(rho, kMaxCorrelation));
}

}  // namespace

RDPrediction predict(const VideoStats& stats, const ScalingChoice& choice,
                     const BitBudget& budget, const ModelConfig& config) {
    staged("config", [&] {
        stats.validate();
        config.validate();
    });

    RDPrediction out;
    out.choice = choice;
    out.bitrate_bps = budget.bits_per_second();
    out.slicing = staged("slicing", [&] { return slicing_from_scaling(stats, choice, config.block); });
    const auto& sp = out.slicing.params;
    out.b_slice = bits_per_slice(budget, sp);
    out.bits_per_pixel = bits_per_pixel(out.b_slice, config.block);
    if (out.slicing.rounded) out.flags.emplace_back("slicing_rounded");
    const double f_scaled = sp.t;

    out.sigma_spatial_scaling2 = staged("spatial_scaling", [&] {
        return spatial_scaling_mse(FramePsdParams::from_stats(stats), out.slicing.d_m_effective,
                                   out.slicing.d_n_effective);
    });

    staged("mode", [&] {
        const auto coeffs = mode_coefficients(config.mode, stats.qvar, f_scaled);
        out.c_m = coeffs.c_m;
        out.d_m = coeffs.d_m;
        const auto probs = mode_probabilities(out.b_slice, coeffs);
        out.p_inter = probs.p_inter;
        out.p_skip = probs.p_skip;
    });

    const auto& rc = config.residual;
    out.sigma_compression2 = staged("compression_noise", [&] {
        return compression_noise(rc.noise_mode, out.bits_per_pixel, stats.sigma_v2, rc.rd_alpha,
                                 rc.rd_beta);
    });
    const auto rp = ResidualParams::from_pel_units(rc.sigma_dx2, rc.sigma_dy2, rc.L, stats.width,
                                                   stats.height, rc.gamma_skip, rc.k_quant);
    const auto bits = staged("bit_allocation", [&] {
        return allocate_bits(out.bitrate_bps, sp, out.p_inter, config.transform);
    });
    out.b_kl = bits.b_kl;

    const int max_iterations = rc.fixed_point ? 50 : 1;
    const double tolerance = 1e-6 * stats.sigma_v2;
    bool converged = !rc.fixed_point;
    bool rho_x_clamped = false;
    bool rho_y_clamped = false;
    bool degenerate = false;
    bool inter_clamped = false;
    for (int it = 0; it < max_iterations; ++it) {
        const auto noise = NoiseState::from_components(out.sigma_spatial_scaling2,
                                                       out.sigma_compression2);
        staged("residual", [&] {
            out.residual_variance = residual_variance(stats, rp, noise, f_scaled);
            const auto rx = residual_rho(stats, rp, noise, f_scaled, Axis::x);
            const auto ry = residual_rho(stats, rp, noise, f_scaled, Axis::y);
            out.rho_rx = rx.rho;
            out.rho_ry = ry.rho;
            rho_x_clamped = rx.clamped;
            rho_y_clamped = ry.clamped;
            degenerate = rx.degenerate || ry.degenerate;
        });

        staged("transform", [&] {
            const double ax = residual_decay(out.rho_rx, static_cast<double>(config.block) * sp.m);
            const double ay = residual_decay(out.rho_ry, static_cast<double>(config.block) * sp.n);
            const auto inter =
                inter_mse(out.residual_variance, ax, ay, config.transform, sp, out.b_kl,
                          rc.k_quant, rc.gamma_skip * out.residual_variance);
            out.mse_inter = inter.mse;
            inter_clamped = inter.clamped;
            out.mse_skip = skip_mse(out.residual_variance, rc.gamma_skip);
        });

        out.mse_compression = out.p_inter * out.mse_inter + out.p_skip * out.mse_skip;
        out.fixed_point_iterations = it + 1;
        if (!rc.fixed_point) break;
        const double delta = std::abs(out.mse_compression - out.sigma_compression2);
        out.sigma_compression2 = out.mse_compression;
        if (!std::isfinite(out.mse_compression)) break;
        if (delta < tolerance) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        throw NumericError("fixed-point closure did not converge within " +
                               std::to_string(max_iterations) + " iterations",
                           "compression_noise");
    }
    if (rho_x_clamped) out.flags.emplace_back("rho_rx_clamped");
    if (rho_y_clamped) out.flags.emplace_back("rho_ry_clamped");
    if (degenerate) out.flags.emplace_back("residual_degenerate");
    if (inter_clamped) out.flags.emplace_back("inter_mse_clamped");

    out.mse_spatial = out.mse_compression;

    staged("fruc", [&] {
        for (int j = 1; j < choice.d_t; ++j) {
            out.mse_fruc_per_frame.push_back(
                fruc_mse(stats, config.fruc, choice.d_t, j, out.mse_spatial, stats.frame_rate));
        }
    });
    if (choice.d_t == 1) {
        out.mse_overall = out.mse_spatial;
    } else {
        double sum = 0.0;
        for (double v : out.mse_fruc_per_frame) sum += v;
        out.mse_fruc_mean = sum / static_cast<double>(out.mse_fruc_per_frame.size());
        const double dt = choice.d_t;
        out.mse_overall = out.mse_spatial / dt + (dt - 1.0) / dt * out.mse_fruc_mean;
    }
    if (!std::isfinite(out.mse_overall)) {
        throw NumericError("overall MSE is not finite", "overall");
    }
    out.psnr = psnr_from_mse(out.mse_overall);
    return out;
}

namespace {

template <typename T>
std::vector<T> sorted_unique(std::vector<T> values) {
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    return values;
}

}  // namespace

std::vector<ScalingChoice> enumerate_candidates(const CandidateSet& candidates,
                                                bool independent) {
    const auto spatial = sorted_unique(candidates.spatial);
    const auto spatial_n =
        sorted_unique(candidates.spatial_n.empty() ? candidates.spatial : candidates.spatial_n);
    const auto temporal = sorted_unique(candidates.temporal);
    if (spatial.empty() || temporal.empty() || (independent && spatial_n.empty())) {
        throw ValidationError("candidate sets must be nonempty");
    }

    std::vector<ScalingChoice> out;
    for (int dt : temporal) {
        for (double dm : spatial) {
            if (!independent) {
                out.push_back({dm, dm, dt});
                continue;
            }
            for (double dn : spatial_n) out.push_back({dm, dn, dt});
        }
    }
    for (const auto& c : out) c.validate();
    return out;
}

OptimizeResult optimize(const VideoStats& stats, const BitBudget& budget,
                        const CandidateSet& candidates, const ModelConfig& config, int threads) {
    const auto choices = enumerate_candidates(candidates, config.independent_spatial);

    OptimizeResult result;
    result.grid.resize(choices.size());
    detail::parallel_for(choices.size(), threads, [&](std::size_t i) {
        auto& point = result.grid[i];
        point.choice = choices[i];
        try {
            point.prediction = predict(stats, choices[i], budget, config);
        } catch (const Error& e) {
            point.error = e.what();
        }
    });

    const GridPoint* best = nullptr;
    for (const auto& point : result.grid) {
        if (!point.prediction) continue;
        if (!best || point.prediction->mse_overall < best->prediction->mse_overall) best = &point;
    }
    if (!best) {
        std::string message = "no valid candidate:";
        for (const auto& point : result.grid) {
            char label[96];
            std::snprintf(label, sizeof label, " [d_m=%g d_n=%g d_t=%d] ", point.choice.d_m,
                          point.choice.d_n, point.choice.d_t);
            message += label + point.error + ";";
        }
        throw ValidationError(message, "optimize");
    }
    result.best = best->choice;
    result.best_prediction = *best->prediction;
    return result;
}

std::vector<SweepRow> sweep(const VideoStats& stats, const std::vector<double>& bitrates,
                            const CandidateSet& candidates, const ModelConfig& config,
                            int threads) {
    if (bitrates.empty()) throw ValidationError("bit-rate range is empty");
    for (std::size_t i = 0; i < bitrates.size(); ++i) {
        (void)BitBudget{bitrates[i]};
        if (i > 0 && bitrates[i] < bitrates[i - 1]) {
            throw ValidationError("bit-rates must be in ascending order");
        }
    }
    const auto choices = enumerate_candidates(candidates, config.independent_spatial);

    std::vector<SweepRow> rows(bitrates.size() * choices.size());
    detail::parallel_for(rows.size(), threads, [&](std::size_t i) {
        auto& row = rows[i];
        row.bitrate_bps = bitrates[i / choices.size()];
        row.choice = choices[i % choices.size()];
        try {
            row.prediction = predict(stats, row.choice, BitBudget{row.bitrate_bps}, config);
        } catch (const Error& e) {
            row.error = e.what();
        }
    });
    return rows;
}

}  // namespace scalerd
