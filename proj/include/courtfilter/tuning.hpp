#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "courtfilter/timeline.hpp"

namespace courtfilter {

/// Active/inactive confusion between a prediction and the ground truth,
/// with inactive as the positive class. Requires equal durations.
ConfusionCounts confusion(const PredictionTimeline& pred, const ActivityTimeline& truth);

/// TP / (TP + FN). Throws UndefinedRateError on a zero denominator.
double sensitivity(const ConfusionCounts& counts);

/// TN / (TN + FP). Throws UndefinedRateError on a zero denominator.
double specificity(const ConfusionCounts& counts);

/// Youden's J = sensitivity + specificity - 1.
double youden(double sens, double spec);

/// One point of the ROC traced by the t_vel sweep.
struct RocPoint {
    double fpr = 0.0;  // 1 - specificity
    double tpr = 0.0;  // sensitivity
    std::int64_t t_vel_ms = 0;
};

/// Empirical AUC: points sorted by (fpr, tpr), anchored at (0,0) and (1,1),
/// integrated with the trapezoidal rule. An empty set scores 0.5.
double auc(std::vector<RocPoint> points);

/// Parameter grids for the sweep; values are min, min+step, ... up to max.
struct GridSpec {
    double vmin_min_kmh = 0.0;
    double vmin_max_kmh = 20.0;
    double vmin_step_kmh = 0.25;
    std::int64_t tvel_min_ms = 0;
    std::int64_t tvel_max_ms = 20'000;
    std::int64_t tvel_step_ms = 1'000;

    void validate() const;
    std::vector<double> vmin_values() const;
    std::vector<std::int64_t> tvel_values() const;
};

/// ROC points for one v_min: each t_vel in the grid is run through
/// filtering, per-second aggregation, and the confusion counts.
std::vector<RocPoint> roc_for_vmin(double v_min_kmh, std::span<const std::int64_t> t_vel_grid_ms,
                                   std::span<const Frame> frames, const CourtGeometry& geom,
                                   std::int64_t t_ft_ms, const ActivityTimeline& truth);

struct GridCell {
    double v_min_kmh = 0.0;
    std::int64_t t_vel_ms = 0;
    ConfusionCounts counts;
    double sens = 0.0;
    double spec = 0.0;
};

struct TuningResult {
    std::vector<std::pair<double, double>> auc_by_vmin;  // (v_min_kmh, auc)
    double v_min_star = 0.0;
    std::int64_t t_vel_star = 0;
    double auc_star = 0.0;
    double youden_star = 0.0;

    struct YoudenRow {
        std::int64_t t_vel_ms = 0;
        double sens = 0.0;
        double spec = 0.0;
        double youden = 0.0;
    };
    std::vector<YoudenRow> youden_table;  // t_vel sweep at v_min_star

    std::vector<GridCell> grid;  // v_min-major, t_vel-minor
};

/// The three-step sweep: AUC per v_min over the t_vel grid, v_min chosen by
/// max AUC, t_vel chosen by max Youden at that v_min. Argmax ties resolve
/// to the smallest parameter. Grid columns are evaluated concurrently when
/// threads != 1; results are identical regardless. threads == 0 picks the
/// hardware concurrency. Throws TuningError when the truth contains only
/// one class.
TuningResult tune(std::span<const Frame> frames, const CourtGeometry& geom, std::int64_t t_ft_ms,
                  const ActivityTimeline& truth, const GridSpec& grids, unsigned threads = 0);

// Exports. t_vel columns are written in seconds.
std::string serialize_auc_table(const TuningResult& result);          // v_min_kmh,auc
std::string serialize_youden_table(const TuningResult& result);      // t_vel_s,sensitivity,specificity,youden
std::string serialize_grid(const TuningResult& result);              // v_min_kmh,t_vel_s,tp,tn,fp,fn,sensitivity,specificity

std::vector<std::pair<double, double>> parse_auc_table(std::string_view text,
                                                       std::string_view source = "auc_table");
std::vector<TuningResult::YoudenRow> parse_youden_table(std::string_view text,
                                                        std::string_view source = "youden_table");
std::vector<GridCell> parse_grid(std::string_view text, std::string_view source = "grid");

}  // namespace courtfilter
