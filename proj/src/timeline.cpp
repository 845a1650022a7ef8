#include "courtfilter/timeline.hpp"

#include <algorithm>
#include <array>

#include "text_util.hpp"

namespace courtfilter {

namespace {

TimelineReason to_timeline_reason(InactivityReason reason) {
    switch (reason) {
        case InactivityReason::Generic: return TimelineReason::Generic;
        case InactivityReason::Timeout: return TimelineReason::Timeout;
        case InactivityReason::FreeThrow: return TimelineReason::FreeThrow;
        case InactivityReason::Quarter: return TimelineReason::Quarter;
        case InactivityReason::Half: return TimelineReason::Half;
    }
    return TimelineReason::Generic;
}

void check_duration(std::int64_t duration_s, std::int64_t last_sec) {
    if (duration_s < last_sec) {
        throw ContractError("duration_s " + std::to_string(duration_s) +
                            " does not cover the last report row at sec " +
                            std::to_string(last_sec));
    }
}

std::int64_t second_of(std::int64_t t_ms) { return t_ms / 1000 + 1; }

/// Shared majority-vote aggregation over (second, dropped) observations and
/// (second, poss) labels, both pre-bucketed by caller callbacks.
struct SecondBuckets {
    std::vector<std::int64_t> total;
    std::vector<std::int64_t> dropped;
    std::vector<std::array<std::int64_t, 3>> poss_counts;

    explicit SecondBuckets(std::int64_t duration_s)
        : total(static_cast<std::size_t>(duration_s), 0),
          dropped(static_cast<std::size_t>(duration_s), 0),
          poss_counts(static_cast<std::size_t>(duration_s), {0, 0, 0}) {}

    void add_frame(std::int64_t t_ms, bool is_dropped) {
        const std::int64_t sec = second_of(t_ms);
        if (sec > static_cast<std::int64_t>(total.size())) return;
        const auto i = static_cast<std::size_t>(sec - 1);
        ++total[i];
        if (is_dropped) ++dropped[i];
    }

    void add_label(std::int64_t t_ms, Poss poss) {
        const std::int64_t sec = second_of(t_ms);
        if (sec > static_cast<std::int64_t>(total.size())) return;
        ++poss_counts[static_cast<std::size_t>(sec - 1)][static_cast<std::size_t>(poss)];
    }

    PredictionTimeline finish() const {
        PredictionTimeline out;
        out.inactive.resize(total.size());
        out.poss.resize(total.size());
        for (std::size_t i = 0; i < total.size(); ++i) {
            out.inactive[i] = (total[i] == 0 || 2 * dropped[i] >= total[i]) ? 1 : 0;
            const auto& counts = poss_counts[i];
            const std::int64_t labeled = counts[0] + counts[1] + counts[2];
            out.poss[i] = MajorityPoss::None;
            if (labeled > 0) {
                if (2 * counts[static_cast<int>(Poss::Offensive)] > labeled) {
                    out.poss[i] = MajorityPoss::Off;
                } else if (2 * counts[static_cast<int>(Poss::Defensive)] > labeled) {
                    out.poss[i] = MajorityPoss::Def;
                } else if (2 * counts[static_cast<int>(Poss::Transition)] > labeled) {
                    out.poss[i] = MajorityPoss::Transition;
                }
            }
        }
        return out;
    }
};

}  // namespace

ActivityTimeline expand_activity(std::span<const ActivityReportRow> rows, std::int64_t duration_s) {
    if (duration_s < 0) throw ContractError("duration_s must be >= 0");
    if (!rows.empty()) check_duration(duration_s, rows.back().sec);

    ActivityTimeline timeline;
    timeline.active.assign(static_cast<std::size_t>(duration_s), 0);
    timeline.reason.assign(static_cast<std::size_t>(duration_s), TimelineReason::Generic);

    std::size_t row = 0;
    bool active = false;  // pre-game
    TimelineReason reason = TimelineReason::Generic;
    for (std::int64_t sec = 1; sec <= duration_s; ++sec) {
        while (row < rows.size() && rows[row].sec == sec) {
            active = rows[row].action == ActivityAction::Play;
            reason = active ? TimelineReason::None : to_timeline_reason(rows[row].reason());
            ++row;
        }
        const auto i = static_cast<std::size_t>(sec - 1);
        timeline.active[i] = active ? 1 : 0;
        timeline.reason[i] = active ? TimelineReason::None : reason;
    }
    return timeline;
}

PossessionTimeline expand_possession(std::span<const PossessionReportRow> rows,
                                     std::int64_t duration_s) {
    if (duration_s < 0) throw ContractError("duration_s must be >= 0");
    if (rows.empty()) {
        throw ContractError("possession report has no rows; no state to expand");
    }
    check_duration(duration_s, rows.back().sec);

    PossessionTimeline timeline;
    timeline.side.assign(static_cast<std::size_t>(duration_s), rows.front().action);

    std::size_t row = 0;
    PossessionSide side = rows.front().action;
    for (std::int64_t sec = 1; sec <= duration_s; ++sec) {
        while (row < rows.size() && rows[row].sec == sec) {
            side = rows[row].action;
            ++row;
        }
        timeline.side[static_cast<std::size_t>(sec - 1)] = side;
    }
    return timeline;
}

PredictionTimeline aggregate_predictions(std::span<const Frame> frames, const DropMask& mask,
                                         std::span<const PossessionLabel> kept_labels,
                                         std::int64_t duration_s) {
    if (duration_s < 0) throw ContractError("duration_s must be >= 0");
    if (mask.size() != frames.size()) throw ContractError("mask length does not match frames");
    if (!kept_labels.empty() && kept_labels.size() != mask.kept_count()) {
        throw ContractError("need one possession label per kept frame");
    }

    SecondBuckets buckets(duration_s);
    std::size_t kept_index = 0;
    for (std::size_t i = 0; i < frames.size(); ++i) {
        buckets.add_frame(frames[i].t_ms, !mask.kept(i));
        if (mask.kept(i)) {
            if (!kept_labels.empty()) {
                buckets.add_label(frames[i].t_ms, kept_labels[kept_index].poss);
            }
            ++kept_index;
        }
    }
    return buckets.finish();
}

PredictionTimeline aggregate_exported(std::span<const MaskRow> mask_rows,
                                      std::span<const LabeledFrame> label_rows,
                                      std::int64_t duration_s) {
    if (duration_s < 0) throw ContractError("duration_s must be >= 0");
    SecondBuckets buckets(duration_s);
    for (const MaskRow& row : mask_rows) buckets.add_frame(row.t_ms, !row.kept());
    for (const LabeledFrame& row : label_rows) buckets.add_label(row.t_ms, row.poss);
    return buckets.finish();
}

AccordanceReport offdef_accordance(const PredictionTimeline& pred, const PossessionTimeline& truth) {
    const std::int64_t duration = std::min(pred.duration_s(), truth.duration_s());
    AccordanceReport report;
    for (std::int64_t sec = 1; sec <= duration; ++sec) {
        const auto i = static_cast<std::size_t>(sec - 1);
        const MajorityPoss p = pred.poss[i];
        if (p == MajorityPoss::Transition) {
            ++report.excluded_transition;
            continue;
        }
        if (p == MajorityPoss::None) {
            ++report.excluded_none;
            continue;
        }
        const bool pred_off = p == MajorityPoss::Off;
        const bool truth_off = truth.side[i] == PossessionSide::Off;
        if (pred_off && truth_off) {
            ++report.counts.tp;
        } else if (!pred_off && !truth_off) {
            ++report.counts.tn;
        } else if (pred_off) {
            ++report.counts.fp;
        } else {
            ++report.counts.fn;
        }
    }
    return report;
}

namespace {

constexpr std::string_view kTimelineHeader = "sec,truth_active,pred_active,truth_poss,pred_poss";

std::string_view majority_poss_name(MajorityPoss poss) {
    switch (poss) {
        case MajorityPoss::Off: return "off";
        case MajorityPoss::Def: return "def";
        case MajorityPoss::Transition: return "transition";
        case MajorityPoss::None: return "none";
    }
    return "none";
}

}  // namespace

std::string serialize_timeline(const ActivityTimeline& truth_activity,
                               const PredictionTimeline& pred,
                               const PossessionTimeline& truth_poss) {
    if (truth_activity.duration_s() != pred.duration_s() ||
        truth_activity.duration_s() != truth_poss.duration_s()) {
        throw ContractError("timelines must share one duration");
    }
    std::string out(kTimelineHeader);
    out.push_back('\n');
    for (std::int64_t sec = 1; sec <= truth_activity.duration_s(); ++sec) {
        const auto i = static_cast<std::size_t>(sec - 1);
        out += std::to_string(sec);
        out += truth_activity.active[i] ? ",1" : ",0";
        out += pred.inactive[i] ? ",0" : ",1";
        out += truth_poss.side[i] == PossessionSide::Off ? ",off," : ",def,";
        out += majority_poss_name(pred.poss[i]);
        out.push_back('\n');
    }
    return out;
}

std::vector<TimelineRow> parse_timeline(std::string_view text, std::string_view source) {
    detail::LineReader reader(text);
    {
        const auto line = reader.next();
        if (!line || *line != kTimelineHeader) {
            throw ParseError(std::string(source), reader.line_number(),
                             "expected header '" + std::string(kTimelineHeader) + "'");
        }
    }
    std::vector<TimelineRow> rows;
    while (const auto line = reader.next()) {
        const std::size_t n = reader.line_number();
        const auto fields = detail::split(*line, ',');
        if (fields.size() != 5) {
            throw ParseError(std::string(source), n,
                             "expected 5 fields, got " + std::to_string(fields.size()));
        }
        TimelineRow row;
        const auto sec = detail::parse_int(fields[0]);
        if (!sec || *sec < 1) throw ParseError(std::string(source), n, "bad sec");
        row.sec = *sec;
        if (!rows.empty() && row.sec != rows.back().sec + 1) {
            throw ParseError(std::string(source), n, "sec must increase by one per row");
        }
        for (const int idx : {1, 2}) {
            if (fields[idx] != "0" && fields[idx] != "1") {
                throw ParseError(std::string(source), n, "activity flags must be 0 or 1");
            }
        }
        row.truth_active = fields[1] == "1";
        row.pred_active = fields[2] == "1";
        if (fields[3] == "off") {
            row.truth_poss = PossessionSide::Off;
        } else if (fields[3] == "def") {
            row.truth_poss = PossessionSide::Def;
        } else {
            throw ParseError(std::string(source), n, "truth_poss must be off or def");
        }
        if (fields[4] == "off") {
            row.pred_poss = MajorityPoss::Off;
        } else if (fields[4] == "def") {
            row.pred_poss = MajorityPoss::Def;
        } else if (fields[4] == "transition") {
            row.pred_poss = MajorityPoss::Transition;
        } else if (fields[4] == "none") {
            row.pred_poss = MajorityPoss::None;
        } else {
            throw ParseError(std::string(source), n, "unknown pred_poss");
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace courtfilter
