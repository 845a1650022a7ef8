#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "courtfilter/core_model.hpp"
#include "courtfilter/ingest.hpp"

namespace courtfilter {

enum class SegmentState {
    ActiveOffence,
    ActiveDefence,
    ActiveTransition,
    InactiveStop,
    InactiveFreeThrow,
    InactiveTimeout,
    InactiveQuarter,
    InactiveHalf,
};

bool segment_is_active(SegmentState state);
std::string_view segment_state_name(SegmentState state);
SegmentState parse_segment_state(std::string_view token);

/// A scripted stretch of game time. Speeds are drawn per frame from a band
/// that keeps the planted inequality exact: active states draw from
/// [high, 1.1*high), inactive states from [0.9*low, low).
struct ScriptSegment {
    std::int64_t duration_s = 1;
    SegmentState state = SegmentState::ActiveTransition;
    double low_kmh = 5.0;
    double high_kmh = 12.0;
};

/// Declarative synthetic game: ordered segments plus the noise model and a
/// seed making the output fully deterministic.
struct GameScript {
    std::uint64_t seed = 1;
    double noise_sigma_cm = 30.0;
    double low_kmh = 5.0;    // default per-segment band
    double high_kmh = 12.0;  // default per-segment band
    double ramp_s = 0.0;     // linear blend into each new segment; 0 = instant

    std::vector<ScriptSegment> segments;

    std::int64_t total_seconds() const;
    void validate() const;
};

struct SynthGame {
    std::vector<Frame> frames;  // 50 per scripted second
    std::vector<ActivityReportRow> activity;
    std::vector<PossessionReportRow> possession;
};

/// Renders the script into a 50 Hz stream plus matching annotation reports.
/// Five tracked players: timeouts and interval states move them all to the
/// bench (off court), free throws hold one player on an FTSA disc, every
/// other state keeps a five-player formation on court whose mean x matches
/// the scripted possession side. Positions carry zero-mean gaussian noise of
/// noise_sigma_cm per axis; velocities are scripted directly.
SynthGame generate(const GameScript& script);

// Script file: key = value lines with '#' comments. Global keys seed,
// noise_sigma_cm, low_kmh, high_kmh, ramp_s; one ordered
//   segment = <state> <duration_s> [<low_kmh> <high_kmh>]
// line per segment.
GameScript parse_script(std::string_view text, std::string_view source = "script");
GameScript load_script(const std::string& path);

}  // namespace courtfilter
