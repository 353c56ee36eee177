#include "scalerd/serialization.hpp"

#include <charconv>
#include <cmath>
#include <set>
#include <string>

#include "json.hpp"
#include "scalerd/error.hpp"

namespace scalerd {

using Json = nlohmann::ordered_json;

namespace {

Json parse(std::string_view text, const char* what) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ValidationError(std::string("malformed ") + what + " JSON: " + e.what());
    }
}

template <typename T>
T get(const Json& doc, const char* key) {
    try {
        return doc.at(key).get<T>();
    } catch (const Json::exception& e) {
        throw ValidationError(std::string("bad value for '") + key + "': " + e.what());
    }
}

template <typename T>
void read(const Json& doc, const char* key, T& target) {
    if (doc.contains(key)) target = get<T>(doc, key);
}

// Infinities have no JSON literal; they are written as null.
Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json choice_json(const ScalingChoice& c) {
    return Json{{"d_m", c.d_m}, {"d_n", c.d_n}, {"d_t", c.d_t}};
}

Json config_json(const ModelConfig& c) {
    Json omega = Json::array();
    for (const auto& [k, l] : c.transform.omega) omega.push_back(Json::array({k, l}));
    return Json{
        {"block", c.block},
        {"p_inter_asymp_min", c.mode.p_inter_asymp_min},
        {"gamma_c", c.mode.gamma_c},
        {"gamma_d", c.mode.gamma_d},
        {"sigma_dx2", c.residual.sigma_dx2},
        {"sigma_dy2", c.residual.sigma_dy2},
        {"L", c.residual.L},
        {"gamma_skip", c.residual.gamma_skip},
        {"k_quant", c.residual.k_quant},
        {"compression_noise_mode", to_string(c.residual.noise_mode)},
        {"rd_alpha", c.residual.rd_alpha},
        {"rd_beta", c.residual.rd_beta},
        {"fixed_point", c.residual.fixed_point},
        {"beta", c.transform.beta},
        {"d_trans", c.transform.d_trans},
        {"q_weight", c.transform.q_weight},
        {"omega", omega},
        {"sigma_dx_abs2", c.fruc.sigma_dx_abs2},
        {"sigma_dy_abs2", c.fruc.sigma_dy_abs2},
        {"sigma_wj2", c.fruc.sigma_wj2},
        {"independent_spatial", c.independent_spatial},
    };
}

Json stats_json(const VideoStats& s) {
    return Json{{"sigma_v2", s.sigma_v2}, {"rho_vx", s.rho_vx},     {"rho_vy", s.rho_vy},
                {"qvar", s.qvar},         {"width", s.width},       {"height", s.height},
                {"frame_rate", s.frame_rate}};
}

Json prediction_json(const RDPrediction& p) {
    return Json{
        {"choice", choice_json(p.choice)},
        {"d_m_effective", p.slicing.d_m_effective},
        {"d_n_effective", p.slicing.d_n_effective},
        {"slicing", {{"m", p.slicing.params.m}, {"n", p.slicing.params.n}, {"t", p.slicing.params.t}}},
        {"bitrate_bps", p.bitrate_bps},
        {"b_slice", p.b_slice},
        {"bits_per_pixel", p.bits_per_pixel},
        {"sigma_spatial_scaling2", p.sigma_spatial_scaling2},
        {"sigma_compression2", p.sigma_compression2},
        {"residual_variance", p.residual_variance},
        {"rho_rx", p.rho_rx},
        {"rho_ry", p.rho_ry},
        {"c_m", p.c_m},
        {"d_m", p.d_m},
        {"p_inter", p.p_inter},
        {"p_skip", p.p_skip},
        {"b_kl", p.b_kl},
        {"mse_inter", p.mse_inter},
        {"mse_skip", p.mse_skip},
        {"mse_compression", p.mse_compression},
        {"mse_spatial", p.mse_spatial},
        {"mse_fruc_per_frame", p.mse_fruc_per_frame},
        {"mse_fruc_mean", p.mse_fruc_mean},
        {"mse_overall", p.mse_overall},
        {"psnr_db", number(p.psnr)},
        {"fixed_point_iterations", p.fixed_point_iterations},
        {"flags", p.flags},
    };
}

std::string fmt(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c == '\n' ? ' ' : c;
    }
    return out + '"';
}

}  // namespace

ModelConfig config_from_json(std::string_view json_text, const ModelConfig& base) {
    const auto doc = parse(json_text, "config");
    if (!doc.is_object()) throw ValidationError("config JSON must be an object");

    static const std::set<std::string> known = {
        "block",      "p_inter_asymp_min", "gamma_c",       "gamma_d",
        "sigma_dx2",  "sigma_dy2",         "L",             "gamma_skip",
        "k_quant",    "compression_noise_mode",             "rd_alpha",
        "rd_beta",    "fixed_point",       "beta",          "d_trans",
        "q_weight",   "omega",             "sigma_dx_abs2", "sigma_dy_abs2",
        "sigma_wj2",  "independent_spatial"};
    for (const auto& [key, value] : doc.items()) {
        if (!known.contains(key)) throw ValidationError("unknown config key '" + key + "'");
    }

    ModelConfig c = base;
    read(doc, "block", c.block);
    read(doc, "p_inter_asymp_min", c.mode.p_inter_asymp_min);
    read(doc, "gamma_c", c.mode.gamma_c);
    read(doc, "gamma_d", c.mode.gamma_d);
    read(doc, "sigma_dx2", c.residual.sigma_dx2);
    read(doc, "sigma_dy2", c.residual.sigma_dy2);
    if (doc.contains("L")) c.residual.L = c.fruc.L = get<double>(doc, "L");
    read(doc, "gamma_skip", c.residual.gamma_skip);
    read(doc, "k_quant", c.residual.k_quant);
    if (doc.contains("compression_noise_mode")) {
        c.residual.noise_mode =
            parse_compression_noise_mode(get<std::string>(doc, "compression_noise_mode"));
    }
    read(doc, "rd_alpha", c.residual.rd_alpha);
    read(doc, "rd_beta", c.residual.rd_beta);
    read(doc, "fixed_point", c.residual.fixed_point);
    read(doc, "beta", c.transform.beta);
    read(doc, "d_trans", c.transform.d_trans);
    read(doc, "q_weight", c.transform.q_weight);
    if (doc.contains("omega")) {
        c.transform.omega.clear();
        for (const auto& pair : get<std::vector<std::vector<int>>>(doc, "omega")) {
            if (pair.size() != 2) throw ValidationError("omega entries must be [k, l] pairs");
            c.transform.omega.emplace_back(pair[0], pair[1]);
        }
    }
    read(doc, "sigma_dx_abs2", c.fruc.sigma_dx_abs2);
    read(doc, "sigma_dy_abs2", c.fruc.sigma_dy_abs2);
    read(doc, "sigma_wj2", c.fruc.sigma_wj2);
    read(doc, "independent_spatial", c.independent_spatial);
    c.validate();
    return c;
}

std::string config_to_json(const ModelConfig& config) { return config_json(config).dump(); }

VideoStats stats_from_json(std::string_view json_text) {
    const auto doc = parse(json_text, "stats");
    if (!doc.is_object()) throw ValidationError("stats JSON must be an object");
    for (const char* key :
         {"sigma_v2", "rho_vx", "rho_vy", "qvar", "width", "height", "frame_rate"}) {
        if (!doc.contains(key)) throw ValidationError(std::string("stats JSON lacks '") + key + "'");
    }
    VideoStats s;
    s.sigma_v2 = get<double>(doc, "sigma_v2");
    s.rho_vx = get<double>(doc, "rho_vx");
    s.rho_vy = get<double>(doc, "rho_vy");
    s.qvar = get<double>(doc, "qvar");
    s.width = get<int>(doc, "width");
    s.height = get<int>(doc, "height");
    s.frame_rate = get<double>(doc, "frame_rate");
    s.validate();
    return s;
}

std::string stats_to_json(const StatsEstimate& estimate, std::string_view effective_config_json) {
    auto doc = stats_json(estimate.stats);
    doc["sigma_hat_12"] = estimate.sigma_hat_12;
    Json flags = Json::array();
    if (estimate.spatial_degenerate) flags.push_back("spatial_degenerate");
    if (estimate.qvar_clamped) flags.push_back("qvar_clamped");
    doc["flags"] = flags;
    doc["config"] = parse(effective_config_json, "config");
    return doc.dump(2) + "\n";
}

std::string prediction_to_json(const RDPrediction& prediction, const VideoStats& stats,
                               const ModelConfig& config) {
    Json doc = prediction_json(prediction);
    doc["stats"] = stats_json(stats);
    doc["config"] = config_json(config);
    return doc.dump(2) + "\n";
}

std::string optimize_to_json(const OptimizeResult& result, const VideoStats& stats,
                             const ModelConfig& config) {
    Json grid = Json::array();
    for (const auto& point : result.grid) {
        Json entry{{"choice", choice_json(point.choice)}};
        if (point.prediction) {
            entry["prediction"] = prediction_json(*point.prediction);
        } else {
            entry["error"] = point.error;
        }
        grid.push_back(std::move(entry));
    }
    Json doc{
        {"best", choice_json(result.best)},
        {"best_prediction", prediction_json(result.best_prediction)},
        {"grid", grid},
        {"stats", stats_json(stats)},
        {"config", config_json(config)},
    };
    return doc.dump(2) + "\n";
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows, const VideoStats& stats,
                         const ModelConfig& config) {
    std::string out;
    out += "# stats: " + stats_json(stats).dump() + "\n";
    out += "# config: " + config_json(config).dump() + "\n";
    out += kSweepCsvHeader;
    out += '\n';
    for (const auto& row : rows) {
        out += fmt(row.bitrate_bps) + ',' + fmt(row.choice.d_m) + ',' + fmt(row.choice.d_n) + ',' +
               std::to_string(row.choice.d_t) + ',';
        if (!row.prediction) {
            out += ",,,,,,," + csv_quote("error=" + row.error) + '\n';
            continue;
        }
        const auto& p = *row.prediction;
        std::string flags;
        for (const auto& f : p.flags) flags += (flags.empty() ? "" : ";") + f;
        out += fmt(p.b_slice) + ',' + fmt(p.p_inter) + ',' + fmt(p.mse_spatial) + ',' +
               fmt(p.mse_compression) + ',' + fmt(p.mse_fruc_mean) + ',' + fmt(p.mse_overall) +
               ',' + fmt(p.psnr) + ',' + flags + '\n';
    }
    return out;
}

}  // namespace scalerd
