#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "scalerd/error.hpp"
#include "scalerd/serialization.hpp"
#include "scalerd/units.hpp"
#include "scalerd/video_io.hpp"

namespace scalerd::cli {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

double parse_number(std::string_view text, const char* what) {
    const std::string s(text);
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw ValidationError(std::string("invalid ") + what + " '" + s + "'");
}

void write_output(const std::optional<std::filesystem::path>& path, const std::string& text,
                  std::ostream& out) {
    if (!path) {
        out << text;
        return;
    }
    std::ofstream file(*path, std::ios::binary);
    if (!file) throw IoError("cannot open '" + path->string() + "' for writing");
    file << text;
    if (!file.flush()) throw IoError("failed writing '" + path->string() + "'");
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("failed reading '" + path.string() + "'");
    return buf.str();
}

ModelConfig load_config(const std::optional<std::filesystem::path>& path) {
    if (!path) return ModelConfig{};
    return config_from_json(read_text_file(*path));
}

std::vector<double> parse_bitrate_list(std::string_view text) {
    const auto range = split(text, ':');
    if (range.size() == 3) {
        const double lo = parse_bitrate(range[0]);
        const double hi = parse_bitrate(range[1]);
        const double count = parse_number(range[2], "point count");
        if (count < 1 || count != std::floor(count)) {
            throw ValidationError("point count must be a positive integer");
        }
        if (hi < lo) throw ValidationError("bit-rate range must be ascending");
        const int n = static_cast<int>(count);
        std::vector<double> rates;
        for (int i = 0; i < n; ++i) {
            rates.push_back(i == n - 1 && n > 1
                                ? hi
                                : lo * std::pow(hi / lo, n == 1 ? 0.0 : static_cast<double>(i) / (n - 1)));
        }
        return rates;
    }
    if (range.size() != 1) throw ValidationError("invalid bit-rate list '" + std::string(text) + "'");
    std::vector<double> rates;
    for (auto part : split(text, ',')) rates.push_back(parse_bitrate(part));
    return rates;
}

CandidateSet parse_candidates(std::string_view text) {
    const auto fields = split(text, ':');
    if (fields.size() < 2 || fields.size() > 3) {
        throw ValidationError("candidates must look like 'spatial:temporal', e.g. 1,2,3:1,2,3");
    }
    CandidateSet set;
    set.spatial.clear();
    set.temporal.clear();
    for (auto v : split(fields[0], ',')) set.spatial.push_back(parse_number(v, "spatial factor"));
    for (auto v : split(fields[1], ',')) {
        const double d = parse_number(v, "temporal factor");
        if (d != std::floor(d)) throw ValidationError("temporal factors must be integers");
        set.temporal.push_back(static_cast<int>(d));
    }
    if (fields.size() == 3) {
        for (auto v : split(fields[2], ',')) {
            set.spatial_n.push_back(parse_number(v, "vertical factor"));
        }
    }
    return set;
}

std::string cmd_estimate_stats(const EstimateStatsOptions& options, const ModelConfig& config) {
    const auto video = load_raw_video(options.video, options.width, options.height, options.fps);
    MatchOptions match;
    match.block = options.block;
    match.search_range = options.search_range;
    match.max_pairs = options.pairs;
    match.threads = options.threads;
    MotionParams motion;
    motion.sigma_dx2 = config.residual.sigma_dx2;
    motion.sigma_dy2 = config.residual.sigma_dy2;
    motion.L = config.residual.L;
    const auto estimate = estimate_video_stats(video, match, motion);
    return stats_to_json(estimate, config_to_json(config));
}

std::string cmd_predict(const PredictOptions& options, const ModelConfig& config) {
    const auto stats = stats_from_json(read_text_file(options.stats));
    const auto prediction = predict(stats, options.choice, BitBudget{options.bitrate}, config);
    return prediction_to_json(prediction, stats, config);
}

std::string cmd_optimize(const GridOptions& options, const ModelConfig& config) {
    const auto stats = stats_from_json(read_text_file(options.stats));
    if (options.bitrates.size() != 1) {
        throw ValidationError("optimize takes exactly one bit-rate");
    }
    const auto result = optimize(stats, BitBudget{options.bitrates.front()}, options.candidates,
                                 config, options.threads);
    return optimize_to_json(result, stats, config);
}

std::string cmd_sweep(const GridOptions& options, const ModelConfig& config) {
    const auto stats = stats_from_json(read_text_file(options.stats));
    const auto rows = sweep(stats, options.bitrates, options.candidates, config, options.threads);
    return sweep_to_csv(rows, stats, config);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Rate-distortion model of spatio-temporal down-scaling before compression",
                 "scalerd"};
    app.require_subcommand(1);

    std::optional<std::filesystem::path> config_path;
    std::optional<std::filesystem::path> out_path;
    app.add_option("--config", config_path, "JSON model configuration")->check(CLI::ExistingFile);
    app.add_option("--out", out_path, "write output here instead of stdout");

    EstimateStatsOptions est;
    std::optional<int> block_override;
    auto* est_cmd = app.add_subcommand("estimate-stats", "estimate video statistics from raw 8-bit luma");
    est_cmd->add_option("video", est.video, "raw planar luma file")->required();
    est_cmd->add_option("--width", est.width)->required();
    est_cmd->add_option("--height", est.height)->required();
    est_cmd->add_option("--fps", est.fps)->required();
    est_cmd->add_option("--pairs", est.pairs, "frame pairs for the prediction error")->capture_default_str();
    est_cmd->add_option("--search-range", est.search_range)->capture_default_str();
    est_cmd->add_option("--block", block_override, "block size (default from config)");
    est_cmd->add_option("--threads", est.threads)->capture_default_str();

    PredictOptions pred;
    std::string pred_rate;
    auto* pred_cmd = app.add_subcommand("predict", "predict the RD point of one scaling choice");
    pred_cmd->add_option("--stats", pred.stats, "stats JSON")->required();
    pred_cmd->add_option("--bitrate", pred_rate, "bits/second, k/M/G suffixes allowed")->required();
    pred_cmd->add_option("--dm", pred.choice.d_m)->capture_default_str();
    pred_cmd->add_option("--dn", pred.choice.d_n, "defaults to --dm");
    pred_cmd->add_option("--dt", pred.choice.d_t)->capture_default_str();

    GridOptions opt;
    std::string opt_rate;
    std::string opt_cands = "1,2,3:1,2,3";
    auto* opt_cmd = app.add_subcommand("optimize", "pick the best scaling choice for one bit-rate");
    opt_cmd->add_option("--stats", opt.stats, "stats JSON")->required();
    opt_cmd->add_option("--bitrate", opt_rate)->required();
    opt_cmd->add_option("--candidates", opt_cands, "spatial:temporal factor lists")->capture_default_str();
    opt_cmd->add_option("--threads", opt.threads)->capture_default_str();

    GridOptions sw;
    std::string sw_rates;
    std::string sw_cands = "1,2,3:1,2,3";
    auto* sw_cmd = app.add_subcommand("sweep", "tabulate RD curves over bit-rates and candidates");
    sw_cmd->add_option("--stats", sw.stats, "stats JSON")->required();
    sw_cmd->add_option("--bitrates", sw_rates, "comma list or lo:hi:count (log-spaced)")->required();
    sw_cmd->add_option("--candidates", sw_cands, "spatial:temporal factor lists")->capture_default_str();
    sw_cmd->add_option("--threads", sw.threads)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        std::string msg = e.what();
        for (auto& c : msg) c = c == '\n' ? ' ' : c;
        err << "scalerd: error kind=validation stage=cli: " << msg << '\n';
        return kValidation;
    }

    try {
        auto config = load_config(config_path);
        std::string text;
        if (est_cmd->parsed()) {
            if (block_override) config.block = *block_override;
            est.block = config.block;
            text = cmd_estimate_stats(est, config);
        } else if (pred_cmd->parsed()) {
            pred.bitrate = parse_bitrate(pred_rate);
            if (pred_cmd->count("--dn") == 0) pred.choice.d_n = pred.choice.d_m;
            text = cmd_predict(pred, config);
        } else if (opt_cmd->parsed()) {
            opt.bitrates = {parse_bitrate(opt_rate)};
            opt.candidates = parse_candidates(opt_cands);
            text = cmd_optimize(opt, config);
        } else {
            sw.bitrates = parse_bitrate_list(sw_rates);
            sw.candidates = parse_candidates(sw_cands);
            text = cmd_sweep(sw, config);
        }
        write_output(out_path, text, out);
    } catch (const Error& e) {
        std::string msg = e.detail();
        for (auto& c : msg) c = c == '\n' ? ' ' : c;
        err << "scalerd: error kind=" << to_string(e.kind())
            << " stage=" << (e.stage().empty() ? "-" : e.stage()) << ": " << msg << '\n';
        switch (e.kind()) {
            case ErrorKind::validation: return kValidation;
            case ErrorKind::io: return kIo;
            case ErrorKind::numeric: return kNumeric;
        }
    } catch (const std::exception& e) {
        err << "scalerd: error kind=numeric stage=-: " << e.what() << '\n';
        return kNumeric;
    }
    return kOk;
}

}  // namespace scalerd::cli
