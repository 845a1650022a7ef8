#include "courtfilter/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "text_util.hpp"

namespace courtfilter {

ConfusionCounts confusion(const PredictionTimeline& pred, const ActivityTimeline& truth) {
    if (pred.duration_s() != truth.duration_s()) {
        throw ContractError("confusion: prediction covers " + std::to_string(pred.duration_s()) +
                            " s but truth covers " + std::to_string(truth.duration_s()) + " s");
    }
    ConfusionCounts counts;
    for (std::size_t i = 0; i < pred.inactive.size(); ++i) {
        const bool pred_inactive = pred.inactive[i] != 0;
        const bool truth_inactive = truth.active[i] == 0;
        if (pred_inactive && truth_inactive) {
            ++counts.tp;
        } else if (!pred_inactive && !truth_inactive) {
            ++counts.tn;
        } else if (pred_inactive) {
            ++counts.fp;
        } else {
            ++counts.fn;
        }
    }
    return counts;
}

double sensitivity(const ConfusionCounts& counts) {
    const std::uint64_t denom = counts.tp + counts.fn;
    if (denom == 0) throw UndefinedRateError("sensitivity undefined: no positive seconds");
    return static_cast<double>(counts.tp) / static_cast<double>(denom);
}

double specificity(const ConfusionCounts& counts) {
    const std::uint64_t denom = counts.tn + counts.fp;
    if (denom == 0) throw UndefinedRateError("specificity undefined: no negative seconds");
    return static_cast<double>(counts.tn) / static_cast<double>(denom);
}

double youden(double sens, double spec) { return sens + spec - 1.0; }

double auc(std::vector<RocPoint> points) {
    for (const RocPoint& p : points) {
        if (!(p.fpr >= 0.0 && p.fpr <= 1.0 && p.tpr >= 0.0 && p.tpr <= 1.0)) {
            throw ContractError("auc: rates must lie in [0,1]");
        }
    }
    std::sort(points.begin(), points.end(), [](const RocPoint& a, const RocPoint& b) {
        return a.fpr != b.fpr ? a.fpr < b.fpr : a.tpr < b.tpr;
    });

    double area = 0.0;
    double prev_x = 0.0;
    double prev_y = 0.0;
    for (const RocPoint& p : points) {
        area += (p.fpr - prev_x) * (p.tpr + prev_y) * 0.5;
        prev_x = p.fpr;
        prev_y = p.tpr;
    }
    area += (1.0 - prev_x) * (1.0 + prev_y) * 0.5;
    return area;
}

void GridSpec::validate() const {
    if (!(vmin_step_kmh > 0.0)) throw ContractError("grid: v_min step must be > 0");
    if (tvel_step_ms <= 0) throw ContractError("grid: t_vel step must be > 0");
    if (!(vmin_min_kmh <= vmin_max_kmh)) throw ContractError("grid: v_min min must be <= max");
    if (tvel_min_ms > tvel_max_ms) throw ContractError("grid: t_vel min must be <= max");
    if (!(vmin_min_kmh >= 0.0)) throw ContractError("grid: v_min values must be >= 0");
    if (tvel_min_ms < 0) throw ContractError("grid: t_vel values must be >= 0");
}

std::vector<double> GridSpec::vmin_values() const {
    validate();
    std::vector<double> values;
    // i*step keeps long grids free of accumulated rounding error.
    for (std::size_t i = 0;; ++i) {
        const double v = vmin_min_kmh + static_cast<double>(i) * vmin_step_kmh;
        if (v > vmin_max_kmh + 1e-9 * vmin_step_kmh) break;
        values.push_back(v);
    }
    return values;
}

std::vector<std::int64_t> GridSpec::tvel_values() const {
    validate();
    std::vector<std::int64_t> values;
    for (std::int64_t v = tvel_min_ms; v <= tvel_max_ms; v += tvel_step_ms) values.push_back(v);
    return values;
}

namespace {

/// One grid column: confusion counts for every t_vel at a fixed v_min.
/// Criteria 1-A and 1-B do not depend on (v_min, t_vel); their mask is
/// computed once per column and unioned with each 1-C mask, which is
/// exactly filter_measurements' composition.
std::vector<ConfusionCounts> sweep_tvel(double v_min_kmh,
                                        std::span<const std::int64_t> t_vel_grid_ms,
                                        std::span<const Frame> frames, const CourtGeometry& geom,
                                        const ActivityTimeline& truth,
                                        const DropMask& static_mask) {
    std::vector<ConfusionCounts> counts;
    counts.reserve(t_vel_grid_ms.size());
    for (const std::int64_t t_vel_ms : t_vel_grid_ms) {
        DropMask mask = criterion_low_speed(frames, geom, v_min_kmh, t_vel_ms);
        mask.merge(static_mask);
        const PredictionTimeline pred = aggregate_predictions(frames, mask, {}, truth.duration_s());
        counts.push_back(confusion(pred, truth));
    }
    return counts;
}

DropMask static_criteria_mask(std::span<const Frame> frames, const CourtGeometry& geom,
                              std::int64_t t_ft_ms) {
    DropMask mask = criterion_not_five(frames, geom);
    mask.merge(criterion_free_throw(frames, geom, t_ft_ms));
    return mask;
}

void check_coverage(std::span<const Frame> frames, const ActivityTimeline& truth) {
    if (!frames.empty() && frames.back().t_ms >= truth.duration_s() * 1000) {
        throw ContractError("tracking extends past the ground-truth duration");
    }
}

}  // namespace

std::vector<RocPoint> roc_for_vmin(double v_min_kmh, std::span<const std::int64_t> t_vel_grid_ms,
                                   std::span<const Frame> frames, const CourtGeometry& geom,
                                   std::int64_t t_ft_ms, const ActivityTimeline& truth) {
    check_coverage(frames, truth);
    const DropMask static_mask = static_criteria_mask(frames, geom, t_ft_ms);
    const std::vector<ConfusionCounts> counts =
        sweep_tvel(v_min_kmh, t_vel_grid_ms, frames, geom, truth, static_mask);

    std::vector<RocPoint> points;
    points.reserve(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i) {
        points.push_back(
            RocPoint{1.0 - specificity(counts[i]), sensitivity(counts[i]), t_vel_grid_ms[i]});
    }
    return points;
}

TuningResult tune(std::span<const Frame> frames, const CourtGeometry& geom, std::int64_t t_ft_ms,
                  const ActivityTimeline& truth, const GridSpec& grids, unsigned threads) {
    const std::vector<double> vmin_grid = grids.vmin_values();
    const std::vector<std::int64_t> tvel_grid = grids.tvel_values();
    check_coverage(frames, truth);

    const std::int64_t positives =
        std::count(truth.active.begin(), truth.active.end(), std::uint8_t{0});
    if (positives == 0 || positives == truth.duration_s()) {
        throw TuningError("ground truth contains a single class; rates are undefined");
    }

    const DropMask static_mask = static_criteria_mask(frames, geom, t_ft_ms);

    // One column of confusion counts per v_min, assembled by index so the
    // result does not depend on scheduling.
    std::vector<std::vector<ConfusionCounts>> columns(vmin_grid.size());
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(vmin_grid.size()));
    if (threads <= 1) {
        for (std::size_t v = 0; v < vmin_grid.size(); ++v) {
            columns[v] = sweep_tvel(vmin_grid[v], tvel_grid, frames, geom, truth, static_mask);
        }
    } else {
        std::vector<std::thread> workers;
        workers.reserve(threads);
        for (unsigned w = 0; w < threads; ++w) {
            workers.emplace_back([&, w] {
                for (std::size_t v = w; v < vmin_grid.size(); v += threads) {
                    columns[v] = sweep_tvel(vmin_grid[v], tvel_grid, frames, geom, truth,
                                            static_mask);
                }
            });
        }
        for (std::thread& worker : workers) worker.join();
    }

    TuningResult result;
    result.auc_by_vmin.reserve(vmin_grid.size());
    result.grid.reserve(vmin_grid.size() * tvel_grid.size());

    std::size_t best_v = 0;
    for (std::size_t v = 0; v < vmin_grid.size(); ++v) {
        std::vector<RocPoint> points;
        points.reserve(tvel_grid.size());
        for (std::size_t t = 0; t < tvel_grid.size(); ++t) {
            const ConfusionCounts& counts = columns[v][t];
            const double sens = sensitivity(counts);
            const double spec = specificity(counts);
            result.grid.push_back(GridCell{vmin_grid[v], tvel_grid[t], counts, sens, spec});
            points.push_back(RocPoint{1.0 - spec, sens, tvel_grid[t]});
        }
        const double area = auc(std::move(points));
        result.auc_by_vmin.emplace_back(vmin_grid[v], area);
        if (area > result.auc_by_vmin[best_v].second) best_v = v;
    }
    result.v_min_star = vmin_grid[best_v];
    result.auc_star = result.auc_by_vmin[best_v].second;

    result.youden_table.reserve(tvel_grid.size());
    std::size_t best_t = 0;
    for (std::size_t t = 0; t < tvel_grid.size(); ++t) {
        const GridCell& cell = result.grid[best_v * tvel_grid.size() + t];
        const double j = youden(cell.sens, cell.spec);
        result.youden_table.push_back(
            TuningResult::YoudenRow{tvel_grid[t], cell.sens, cell.spec, j});
        if (j > result.youden_table[best_t].youden) best_t = t;
    }
    result.t_vel_star = tvel_grid[best_t];
    result.youden_star = result.youden_table[best_t].youden;
    return result;
}

namespace {

constexpr std::string_view kAucHeader = "v_min_kmh,auc";
constexpr std::string_view kYoudenHeader = "t_vel_s,sensitivity,specificity,youden";
constexpr std::string_view kGridHeader = "v_min_kmh,t_vel_s,tp,tn,fp,fn,sensitivity,specificity";

double tvel_seconds(std::int64_t t_vel_ms) { return static_cast<double>(t_vel_ms) / 1000.0; }

std::int64_t tvel_ms_from_seconds(double seconds) {
    return static_cast<std::int64_t>(std::llround(seconds * 1000.0));
}

void expect_exact_header(detail::LineReader& reader, std::string_view expected,
                         std::string_view source) {
    const auto line = reader.next();
    if (!line || *line != expected) {
        throw ParseError(std::string(source), reader.line_number(),
                         "expected header '" + std::string(expected) + "'");
    }
}

double required_double(std::string_view field, std::string_view source, std::size_t line) {
    const auto v = detail::parse_double(field);
    if (!v) throw ParseError(std::string(source), line, "bad number '" + std::string(field) + "'");
    return *v;
}

std::uint64_t required_count(std::string_view field, std::string_view source, std::size_t line) {
    const auto v = detail::parse_int(field);
    if (!v || *v < 0) throw ParseError(std::string(source), line, "bad count");
    return static_cast<std::uint64_t>(*v);
}

}  // namespace

std::string serialize_auc_table(const TuningResult& result) {
    std::string out(kAucHeader);
    out.push_back('\n');
    for (const auto& [v_min, area] : result.auc_by_vmin) {
        out += detail::format_double(v_min);
        out.push_back(',');
        out += detail::format_double(area);
        out.push_back('\n');
    }
    return out;
}

std::string serialize_youden_table(const TuningResult& result) {
    std::string out(kYoudenHeader);
    out.push_back('\n');
    for (const TuningResult::YoudenRow& row : result.youden_table) {
        out += detail::format_double(tvel_seconds(row.t_vel_ms));
        out.push_back(',');
        out += detail::format_double(row.sens);
        out.push_back(',');
        out += detail::format_double(row.spec);
        out.push_back(',');
        out += detail::format_double(row.youden);
        out.push_back('\n');
    }
    return out;
}

std::string serialize_grid(const TuningResult& result) {
    std::string out(kGridHeader);
    out.push_back('\n');
    for (const GridCell& cell : result.grid) {
        out += detail::format_double(cell.v_min_kmh);
        out.push_back(',');
        out += detail::format_double(tvel_seconds(cell.t_vel_ms));
        out.push_back(',');
        out += std::to_string(cell.counts.tp);
        out.push_back(',');
        out += std::to_string(cell.counts.tn);
        out.push_back(',');
        out += std::to_string(cell.counts.fp);
        out.push_back(',');
        out += std::to_string(cell.counts.fn);
        out.push_back(',');
        out += detail::format_double(cell.sens);
        out.push_back(',');
        out += detail::format_double(cell.spec);
        out.push_back('\n');
    }
    return out;
}

std::vector<std::pair<double, double>> parse_auc_table(std::string_view text,
                                                       std::string_view source) {
    detail::LineReader reader(text);
    expect_exact_header(reader, kAucHeader, source);
    std::vector<std::pair<double, double>> rows;
    while (const auto line = reader.next()) {
        const auto fields = detail::split(*line, ',');
        if (fields.size() != 2) {
            throw ParseError(std::string(source), reader.line_number(), "expected 2 fields");
        }
        rows.emplace_back(required_double(fields[0], source, reader.line_number()),
                          required_double(fields[1], source, reader.line_number()));
    }
    return rows;
}

std::vector<TuningResult::YoudenRow> parse_youden_table(std::string_view text,
                                                        std::string_view source) {
    detail::LineReader reader(text);
    expect_exact_header(reader, kYoudenHeader, source);
    std::vector<TuningResult::YoudenRow> rows;
    while (const auto line = reader.next()) {
        const std::size_t n = reader.line_number();
        const auto fields = detail::split(*line, ',');
        if (fields.size() != 4) throw ParseError(std::string(source), n, "expected 4 fields");
        rows.push_back(TuningResult::YoudenRow{
            tvel_ms_from_seconds(required_double(fields[0], source, n)),
            required_double(fields[1], source, n), required_double(fields[2], source, n),
            required_double(fields[3], source, n)});
    }
    return rows;
}

std::vector<GridCell> parse_grid(std::string_view text, std::string_view source) {
    detail::LineReader reader(text);
    expect_exact_header(reader, kGridHeader, source);
    std::vector<GridCell> cells;
    while (const auto line = reader.next()) {
        const std::size_t n = reader.line_number();
        const auto fields = detail::split(*line, ',');
        if (fields.size() != 8) throw ParseError(std::string(source), n, "expected 8 fields");
        GridCell cell;
        cell.v_min_kmh = required_double(fields[0], source, n);
        cell.t_vel_ms = tvel_ms_from_seconds(required_double(fields[1], source, n));
        cell.counts.tp = required_count(fields[2], source, n);
        cell.counts.tn = required_count(fields[3], source, n);
        cell.counts.fp = required_count(fields[4], source, n);
        cell.counts.fn = required_count(fields[5], source, n);
        cell.sens = required_double(fields[6], source, n);
        cell.spec = required_double(fields[7], source, n);
        cells.push_back(cell);
    }
    return cells;
}

}  // namespace courtfilter
