#include "courtfilter/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <optional>
#include <ostream>

#include "courtfilter/config.hpp"
#include "courtfilter/ingest.hpp"
#include "courtfilter/synth.hpp"
#include "courtfilter/tuning.hpp"
#include "text_util.hpp"

namespace courtfilter::cli {

namespace fs = std::filesystem;

namespace {

struct CommonOptions {
    std::string config_path;
    std::optional<double> t_ft_s;
    std::optional<double> v_min_kmh;
    std::optional<double> t_vel_s;
    std::optional<std::string> grid_vmin;
    std::optional<std::string> grid_tvel;
    std::optional<std::string> attack_direction;
};

std::int64_t ms_from_seconds(double seconds) {
    return static_cast<std::int64_t>(std::llround(seconds * 1000.0));
}

void parse_grid_triple(const std::string& text, double& min, double& max, double& step) {
    const auto fields = detail::split(text, ':');
    if (fields.size() != 3) throw ParseError("grid must be 'min:max:step', got '" + text + "'");
    for (int i = 0; i < 3; ++i) {
        const auto v = detail::parse_double(fields[i]);
        if (!v) throw ParseError("bad grid number '" + std::string(fields[i]) + "'");
        (i == 0 ? min : i == 1 ? max : step) = *v;
    }
}

/// Flag overrides beat the config file, which beats the defaults.
Config resolve_config(const CommonOptions& options) {
    Config config =
        options.config_path.empty() ? Config{} : load_config(options.config_path);
    if (options.t_ft_s) config.params.t_ft_ms = ms_from_seconds(*options.t_ft_s);
    if (options.v_min_kmh) config.params.v_min_kmh = *options.v_min_kmh;
    if (options.t_vel_s) config.params.t_vel_ms = ms_from_seconds(*options.t_vel_s);
    if (options.grid_vmin) {
        parse_grid_triple(*options.grid_vmin, config.grids.vmin_min_kmh, config.grids.vmin_max_kmh,
                          config.grids.vmin_step_kmh);
    }
    if (options.grid_tvel) {
        double min = 0.0;
        double max = 0.0;
        double step = 0.0;
        parse_grid_triple(*options.grid_tvel, min, max, step);
        config.grids.tvel_min_ms = ms_from_seconds(min);
        config.grids.tvel_max_ms = ms_from_seconds(max);
        config.grids.tvel_step_ms = ms_from_seconds(step);
    }
    if (options.attack_direction) {
        const auto tokens = detail::split(*options.attack_direction, ',');
        if (tokens.empty() || tokens.size() > 4) {
            throw ParseError("--attack-direction takes 1 to 4 comma-separated values");
        }
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            config.attack_direction[i] = parse_attack_direction(detail::trim(tokens[i]));
        }
    }
    config.validate();
    return config;
}

fs::path prepare_out_dir(const std::string& out_dir) {
    fs::path dir(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ContractError("cannot create output directory '" + out_dir + "'");
    return dir;
}

std::int64_t last_second(std::span<const Frame> frames) {
    return frames.empty() ? 0 : frames.back().t_ms / 1000 + 1;
}

Orientation orientation_from(const Config& config, const std::vector<double>& period_start_s) {
    if (period_start_s.empty()) return Orientation::constant(config.attack_direction[0]);
    if (period_start_s.size() > 3) throw ParseError("--period-start-s takes at most 3 values");
    std::vector<std::int64_t> starts_ms;
    for (const double s : period_start_s) starts_ms.push_back(ms_from_seconds(s));
    const std::span directions(config.attack_direction.data(), period_start_s.size() + 1);
    return Orientation::from_periods(directions, starts_ms);
}

int run_filter(const std::string& tracking_path, const std::string& out_dir, const Config& config,
               std::ostream& out) {
    const std::vector<Frame> frames = parse_tracking(read_file(tracking_path), tracking_path);
    const FilterResult result = filter_measurements(frames, config.geom, config.params);

    const fs::path dir = prepare_out_dir(out_dir);
    write_file((dir / "xr.csv").string(), serialize_tracking(result.xr));
    write_file((dir / "mask.csv").string(), serialize_mask(frames, result.mask));

    out << "frames in: " << frames.size() << "\n";
    out << "frames kept: " << result.mask.kept_count() << "\n";
    out << "dropped not_five_players: " << result.mask.reason_count(kNotFivePlayers) << "\n";
    out << "dropped free_throw_dwell: " << result.mask.reason_count(kFreeThrowDwell) << "\n";
    out << "dropped low_speed_spell: " << result.mask.reason_count(kLowSpeedSpell) << "\n";
    return kOk;
}

int run_label(const std::string& tracking_path, const std::string& out_dir, const Config& config,
              const std::vector<double>& period_start_s, std::ostream& out) {
    const std::vector<Frame> xr = parse_tracking(read_file(tracking_path), tracking_path);
    const Orientation orientation = orientation_from(config, period_start_s);
    const LabelResult result =
        label_possessions(xr, config.geom, orientation, config.transition_band_cm);

    const fs::path dir = prepare_out_dir(out_dir);
    write_file((dir / "labels.csv").string(), serialize_labels(result.frames));

    out << "frames labeled: " << result.frames.size() << "\n";
    out << "possessions: " << result.possession_count << "\n";
    out << "direct off/def flips (not counted): " << result.direct_flips << "\n";
    return kOk;
}

int run_tune(const std::string& tracking_path, const std::string& activity_path,
             const std::string& out_dir, const Config& config, unsigned threads,
             std::ostream& out) {
    const std::vector<Frame> frames = parse_tracking(read_file(tracking_path), tracking_path);
    const std::vector<ActivityReportRow> rows =
        parse_activity_report(read_file(activity_path), activity_path);

    const std::int64_t duration_s =
        std::max(rows.empty() ? 0 : rows.back().sec, last_second(frames));
    const ActivityTimeline truth = expand_activity(rows, duration_s);
    const TuningResult result =
        tune(frames, config.geom, config.params.t_ft_ms, truth, config.grids, threads);

    const fs::path dir = prepare_out_dir(out_dir);
    write_file((dir / "auc_table.csv").string(), serialize_auc_table(result));
    write_file((dir / "youden_table.csv").string(), serialize_youden_table(result));
    write_file((dir / "grid.csv").string(), serialize_grid(result));

    out << "v_min_star_kmh: " << detail::format_double(result.v_min_star) << "\n";
    out << "t_vel_star_s: "
        << detail::format_double(static_cast<double>(result.t_vel_star) / 1000.0) << "\n";
    out << "auc_star: " << detail::format_double(result.auc_star) << "\n";
    out << "youden_star: " << detail::format_double(result.youden_star) << "\n";
    return kOk;
}

int run_simulate(const std::string& script_path, const std::string& out_dir,
                 std::optional<std::uint64_t> seed, std::ostream& out) {
    GameScript script = load_script(script_path);
    if (seed) script.seed = *seed;
    const SynthGame game = generate(script);

    const fs::path dir = prepare_out_dir(out_dir);
    write_file((dir / "tracking.csv").string(), serialize_tracking(game.frames));
    write_file((dir / "activity.csv").string(), serialize_activity_report(game.activity));
    write_file((dir / "possession.csv").string(), serialize_possession_report(game.possession));

    out << "frames: " << game.frames.size() << "\n";
    out << "seconds: " << script.total_seconds() << "\n";
    return kOk;
}

int run_evaluate(const std::string& mask_path, const std::string& labels_path,
                 const std::string& activity_path, const std::string& possession_path,
                 const std::string& out_dir, std::ostream& out) {
    const std::vector<MaskRow> mask_rows = parse_mask(read_file(mask_path), mask_path);
    const std::vector<LabeledFrame> label_rows = parse_labels(read_file(labels_path), labels_path);
    const std::vector<ActivityReportRow> activity_rows =
        parse_activity_report(read_file(activity_path), activity_path);
    const std::vector<PossessionReportRow> possession_rows =
        parse_possession_report(read_file(possession_path), possession_path);

    std::int64_t duration_s = activity_rows.empty() ? 0 : activity_rows.back().sec;
    if (!possession_rows.empty()) duration_s = std::max(duration_s, possession_rows.back().sec);
    if (!mask_rows.empty()) duration_s = std::max(duration_s, mask_rows.back().t_ms / 1000 + 1);

    const ActivityTimeline truth_activity = expand_activity(activity_rows, duration_s);
    const PossessionTimeline truth_poss = expand_possession(possession_rows, duration_s);
    const PredictionTimeline pred = aggregate_exported(mask_rows, label_rows, duration_s);

    const ConfusionCounts counts = confusion(pred, truth_activity);
    out << "activity confusion: tp=" << counts.tp << " tn=" << counts.tn << " fp=" << counts.fp
        << " fn=" << counts.fn << "\n";
    const double sens = sensitivity(counts);
    const double spec = specificity(counts);
    out << "sensitivity: " << detail::format_double(sens) << "\n";
    out << "specificity: " << detail::format_double(spec) << "\n";
    out << "youden: " << detail::format_double(youden(sens, spec)) << "\n";

    const AccordanceReport accordance = offdef_accordance(pred, truth_poss);
    out << "offdef accordance: tp=" << accordance.counts.tp << " tn=" << accordance.counts.tn
        << " fp=" << accordance.counts.fp << " fn=" << accordance.counts.fn << "\n";
    out << "offdef excluded transition seconds: " << accordance.excluded_transition << "\n";
    out << "offdef excluded unlabeled seconds: " << accordance.excluded_none << "\n";

    if (!out_dir.empty()) {
        const fs::path dir = prepare_out_dir(out_dir);
        write_file((dir / "timeline.csv").string(),
                   serialize_timeline(truth_activity, pred, truth_poss));
    }
    return kOk;
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Filters inactive periods out of 50 Hz basketball tracking streams, labels "
                 "possessions, and tunes the kinematic thresholds against annotated ground truth"};
    app.require_subcommand(1);

    CommonOptions common;
    std::string tracking_path;
    std::string activity_path;
    std::string possession_path;
    std::string mask_path;
    std::string labels_path;
    std::string script_path;
    std::string out_dir;
    std::vector<double> period_start_s;
    unsigned threads = 0;
    std::optional<std::uint64_t> seed;

    const auto add_config = [&](CLI::App* cmd) {
        cmd->add_option("--config", common.config_path, "key = value configuration file")
            ->check(CLI::ExistingFile);
    };

    CLI::App* filter_cmd = app.add_subcommand("filter", "Drop inactive measurements");
    filter_cmd->add_option("--tracking", tracking_path, "tracking stream")
        ->required()
        ->check(CLI::ExistingFile);
    filter_cmd->add_option("--out-dir", out_dir, "output directory")->required();
    add_config(filter_cmd);
    filter_cmd->add_option("--t-ft-s", common.t_ft_s, "free-throw dwell threshold, seconds");
    filter_cmd->add_option("--v-min-kmh", common.v_min_kmh, "low-speed threshold, km/h");
    filter_cmd->add_option("--t-vel-s", common.t_vel_s, "low-speed spell duration, seconds");

    CLI::App* label_cmd = app.add_subcommand("label", "Label possessions on a filtered stream");
    label_cmd->add_option("--tracking", tracking_path, "filtered tracking stream (Xr)")
        ->required()
        ->check(CLI::ExistingFile);
    label_cmd->add_option("--out-dir", out_dir, "output directory")->required();
    add_config(label_cmd);
    label_cmd->add_option("--attack-direction", common.attack_direction,
                          "per-period attack directions, e.g. '+x,+x,-x,-x'");
    label_cmd->add_option("--period-start-s", period_start_s,
                          "start seconds of periods 2..4 (comma separated)")
        ->delimiter(',');

    CLI::App* tune_cmd = app.add_subcommand("tune", "Sweep (V_min, T_vel) against ground truth");
    tune_cmd->add_option("--tracking", tracking_path, "tracking stream")
        ->required()
        ->check(CLI::ExistingFile);
    tune_cmd->add_option("--activity", activity_path, "activity annotation report")
        ->required()
        ->check(CLI::ExistingFile);
    tune_cmd->add_option("--out-dir", out_dir, "output directory")->required();
    add_config(tune_cmd);
    tune_cmd->add_option("--t-ft-s", common.t_ft_s, "free-throw dwell threshold, seconds");
    tune_cmd->add_option("--grid-vmin", common.grid_vmin, "V_min grid 'min:max:step' in km/h");
    tune_cmd->add_option("--grid-tvel", common.grid_tvel, "T_vel grid 'min:max:step' in seconds");
    tune_cmd->add_option("--threads", threads, "worker threads (0 = hardware)");

    CLI::App* simulate_cmd = app.add_subcommand("simulate", "Generate a synthetic game");
    simulate_cmd->add_option("--script", script_path, "game script")
        ->required()
        ->check(CLI::ExistingFile);
    simulate_cmd->add_option("--out-dir", out_dir, "output directory")->required();
    simulate_cmd->add_option("--seed", seed, "override the script seed");

    CLI::App* evaluate_cmd =
        app.add_subcommand("evaluate", "Score exported predictions against both reports");
    evaluate_cmd->add_option("--mask", mask_path, "mask export from 'filter'")
        ->required()
        ->check(CLI::ExistingFile);
    evaluate_cmd->add_option("--labels", labels_path, "label export from 'label'")
        ->required()
        ->check(CLI::ExistingFile);
    evaluate_cmd->add_option("--activity", activity_path, "activity annotation report")
        ->required()
        ->check(CLI::ExistingFile);
    evaluate_cmd->add_option("--possession", possession_path, "possession annotation report")
        ->required()
        ->check(CLI::ExistingFile);
    evaluate_cmd->add_option("--out-dir", out_dir, "directory for the timeline export");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsageError;
    }

    try {
        if (filter_cmd->parsed()) {
            return run_filter(tracking_path, out_dir, resolve_config(common), out);
        }
        if (label_cmd->parsed()) {
            return run_label(tracking_path, out_dir, resolve_config(common), period_start_s, out);
        }
        if (tune_cmd->parsed()) {
            return run_tune(tracking_path, activity_path, out_dir, resolve_config(common), threads,
                            out);
        }
        if (simulate_cmd->parsed()) {
            return run_simulate(script_path, out_dir, seed, out);
        }
        if (evaluate_cmd->parsed()) {
            return run_evaluate(mask_path, labels_path, activity_path, possession_path, out_dir,
                                out);
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kParseError;
    } catch (const TuningError& e) {
        err << "error: " << e.what() << "\n";
        return kTuningError;
    } catch (const ContractError& e) {
        err << "error: " << e.what() << "\n";
        return kContractError;
    }
    err << "error: no subcommand\n";
    return kUsageError;
}

}  // namespace courtfilter::cli
