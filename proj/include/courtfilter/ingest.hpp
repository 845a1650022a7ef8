#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "courtfilter/core_model.hpp"

namespace courtfilter {

/// One line of a tracking file; grouping records by t_ms yields Frames.
struct TrackingRecord {
    std::int64_t t_ms = 0;
    PlayerId player_id;
    double pos_x_cm = 0.0;
    double pos_y_cm = 0.0;
    double vel_x_kmh = 0.0;
    double vel_y_kmh = 0.0;

    bool operator==(const TrackingRecord&) const = default;
};

enum class ActivityAction { Play, Stop };

/// Reason attached to an inactive span; Generic when no flag column is set.
enum class InactivityReason { Generic, Timeout, FreeThrow, Quarter, Half };

/// A row of the activity annotation report. `action` flips between play and
/// stop; `active` mirrors it (1 on play rows); at most one reason flag is set.
struct ActivityReportRow {
    ActivityAction action = ActivityAction::Play;
    std::int64_t sec = 1;
    bool active = true;
    bool timeout = false;
    bool ft = false;
    bool quarter = false;
    bool half = false;

    InactivityReason reason() const;

    bool operator==(const ActivityReportRow&) const = default;
};

enum class PossessionSide { Off, Def };

/// A row of the possession annotation report; `off` mirrors `action`.
struct PossessionReportRow {
    PossessionSide action = PossessionSide::Off;
    std::int64_t sec = 1;

    bool off() const { return action == PossessionSide::Off; }
    bool operator==(const PossessionReportRow&) const = default;
};

// Tracking stream. Header: t_ms,player_id,pos_x_cm,pos_y_cm,vel_x_kmh,vel_y_kmh
// Records must be grouped contiguously by t with t non-decreasing across
// lines; within-frame sample order is file order.
std::vector<Frame> parse_tracking(std::string_view text, std::string_view source = "tracking");
std::string serialize_tracking(std::span<const Frame> frames);

// Activity report. Header: action,sec,active,timeout,ft,quarter,half
std::vector<ActivityReportRow> parse_activity_report(std::string_view text,
                                                     std::string_view source = "activity");
std::string serialize_activity_report(std::span<const ActivityReportRow> rows);

// Possession report. Header: action,sec,off
std::vector<PossessionReportRow> parse_possession_report(std::string_view text,
                                                         std::string_view source = "possession");
std::string serialize_possession_report(std::span<const PossessionReportRow> rows);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace courtfilter
