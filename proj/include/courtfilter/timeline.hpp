#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "courtfilter/core_model.hpp"
#include "courtfilter/filters.hpp"
#include "courtfilter/ingest.hpp"
#include "courtfilter/possession.hpp"

namespace courtfilter {

// Per-second timelines over seconds 1..duration_s; second s covers
// t_ms in [(s-1)*1000, s*1000). Index i holds second i+1.

enum class TimelineReason : std::uint8_t { None, Generic, Timeout, FreeThrow, Quarter, Half };

/// Ground-truth active/inactive step function; inactive seconds carry the
/// stop reason.
struct ActivityTimeline {
    std::vector<std::uint8_t> active;
    std::vector<TimelineReason> reason;  // None on active seconds

    std::int64_t duration_s() const { return static_cast<std::int64_t>(active.size()); }
    bool is_active(std::int64_t sec) const { return active[static_cast<std::size_t>(sec - 1)] != 0; }

    bool operator==(const ActivityTimeline&) const = default;
};

/// Ground-truth offence/defence step function.
struct PossessionTimeline {
    std::vector<PossessionSide> side;

    std::int64_t duration_s() const { return static_cast<std::int64_t>(side.size()); }

    bool operator==(const PossessionTimeline&) const = default;
};

enum class MajorityPoss : std::uint8_t { Off, Def, Transition, None };

/// Per-second aggregation of the pipeline's output: the majority-vote
/// activity prediction and the majority possession over kept frames.
struct PredictionTimeline {
    std::vector<std::uint8_t> inactive;  // 1 = predicted inactive
    std::vector<MajorityPoss> poss;

    std::int64_t duration_s() const { return static_cast<std::int64_t>(inactive.size()); }
    bool is_pred_inactive(std::int64_t sec) const {
        return inactive[static_cast<std::size_t>(sec - 1)] != 0;
    }

    bool operator==(const PredictionTimeline&) const = default;
};

/// Expands activity report rows into a per-second timeline. Seconds before
/// the first row are inactive (pre-game); the last row's state extends to
/// duration_s. Throws ContractError when duration_s < the last row's sec.
ActivityTimeline expand_activity(std::span<const ActivityReportRow> rows, std::int64_t duration_s);

/// Expands possession report rows; seconds before the first row take the
/// first row's side. Throws ContractError for an empty row set or when
/// duration_s < the last row's sec.
PossessionTimeline expand_possession(std::span<const PossessionReportRow> rows,
                                     std::int64_t duration_s);

/// Majority vote per second: predicted inactive iff at least half of the
/// second's frames were dropped (ties inactive); seconds without frames are
/// predicted inactive. Majority possession is the label covering a strict
/// majority of the second's kept frames, else None. kept_labels holds one
/// label per kept frame, in stream order; pass an empty span when labels
/// are not available. Frames past duration_s are ignored.
PredictionTimeline aggregate_predictions(std::span<const Frame> frames, const DropMask& mask,
                                         std::span<const PossessionLabel> kept_labels,
                                         std::int64_t duration_s);

/// Same aggregation computed from exported mask and label rows.
PredictionTimeline aggregate_exported(std::span<const MaskRow> mask_rows,
                                      std::span<const LabeledFrame> label_rows,
                                      std::int64_t duration_s);

struct ConfusionCounts {
    std::uint64_t tp = 0;
    std::uint64_t tn = 0;
    std::uint64_t fp = 0;
    std::uint64_t fn = 0;

    std::uint64_t total() const { return tp + tn + fp + fn; }
    bool operator==(const ConfusionCounts&) const = default;
};

/// Offence/defence agreement over seconds whose majority possession is
/// off or def; positive class = offensive. Transition/None seconds are
/// excluded and counted separately.
struct AccordanceReport {
    ConfusionCounts counts;
    std::int64_t excluded_transition = 0;
    std::int64_t excluded_none = 0;
};

AccordanceReport offdef_accordance(const PredictionTimeline& pred, const PossessionTimeline& truth);

// Timeline file: header sec,truth_active,pred_active,truth_poss,pred_poss
// with truth_poss in {off,def} and pred_poss in {off,def,transition,none}.
struct TimelineRow {
    std::int64_t sec = 1;
    bool truth_active = false;
    bool pred_active = false;
    PossessionSide truth_poss = PossessionSide::Off;
    MajorityPoss pred_poss = MajorityPoss::None;

    bool operator==(const TimelineRow&) const = default;
};

std::string serialize_timeline(const ActivityTimeline& truth_activity,
                               const PredictionTimeline& pred,
                               const PossessionTimeline& truth_poss);
std::vector<TimelineRow> parse_timeline(std::string_view text, std::string_view source = "timeline");

}  // namespace courtfilter
