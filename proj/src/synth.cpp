#include "courtfilter/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "text_util.hpp"

namespace courtfilter {

namespace {

// Draws are mapped from raw engine words so the output is reproducible
// across standard libraries, not only across runs.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + uniform01(rng) * (hi - lo);
}

struct NormalPair {
    double a = 0.0;
    double b = 0.0;
};

NormalPair normal_pair(std::mt19937_64& rng, double sigma) {
    const double u1 = 1.0 - uniform01(rng);  // (0, 1]
    const double u2 = uniform01(rng);
    const double r = sigma * std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    return NormalPair{r * std::cos(phi), r * std::sin(phi)};
}

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

// Five-spot formation; spread wide enough that the on-court states never
// park a player on an FTSA disc.
constexpr Vec2 kFormation[5] = {{-250.0, -250.0}, {-250.0, 250.0}, {0.0, 0.0},
                                {250.0, -250.0},  {250.0, 250.0}};

constexpr double kOffenceCenterX = 600.0;
constexpr double kBenchY = 900.0;  // beyond the sideline

std::array<Vec2, 5> base_positions(SegmentState state) {
    std::array<Vec2, 5> pos;
    switch (state) {
        case SegmentState::ActiveOffence:
        case SegmentState::ActiveDefence:
        case SegmentState::ActiveTransition:
        case SegmentState::InactiveStop: {
            const double center = state == SegmentState::ActiveOffence    ? kOffenceCenterX
                                  : state == SegmentState::ActiveDefence ? -kOffenceCenterX
                                                                         : 0.0;
            for (int i = 0; i < 5; ++i) pos[i] = {center + kFormation[i].x, kFormation[i].y};
            break;
        }
        case SegmentState::InactiveFreeThrow:
            // One shooter at the free-throw circle center, the rest well
            // clear of both discs.
            pos = {Vec2{820.0, 0.0}, Vec2{350.0, 250.0}, Vec2{350.0, -250.0}, Vec2{150.0, 250.0},
                   Vec2{150.0, -250.0}};
            break;
        case SegmentState::InactiveTimeout:
        case SegmentState::InactiveQuarter:
        case SegmentState::InactiveHalf:
            for (int i = 0; i < 5; ++i) pos[i] = {-100.0 + 50.0 * i, kBenchY};
            break;
    }
    return pos;
}

struct SpeedBand {
    double lo = 0.0;
    double hi = 0.0;
};

SpeedBand speed_band(const ScriptSegment& segment) {
    if (segment_is_active(segment.state)) {
        return SpeedBand{segment.high_kmh, 1.1 * segment.high_kmh};
    }
    return SpeedBand{0.9 * segment.low_kmh, segment.low_kmh};
}

InactivityReason stop_reason(SegmentState state) {
    switch (state) {
        case SegmentState::InactiveFreeThrow: return InactivityReason::FreeThrow;
        case SegmentState::InactiveTimeout: return InactivityReason::Timeout;
        case SegmentState::InactiveQuarter: return InactivityReason::Quarter;
        case SegmentState::InactiveHalf: return InactivityReason::Half;
        default: return InactivityReason::Generic;
    }
}

double lerp(double a, double b, double alpha) { return a + (b - a) * alpha; }

}  // namespace

bool segment_is_active(SegmentState state) {
    return state == SegmentState::ActiveOffence || state == SegmentState::ActiveDefence ||
           state == SegmentState::ActiveTransition;
}

std::string_view segment_state_name(SegmentState state) {
    switch (state) {
        case SegmentState::ActiveOffence: return "active-offence";
        case SegmentState::ActiveDefence: return "active-defence";
        case SegmentState::ActiveTransition: return "active-transition";
        case SegmentState::InactiveStop: return "inactive-stop";
        case SegmentState::InactiveFreeThrow: return "inactive-freethrow";
        case SegmentState::InactiveTimeout: return "inactive-timeout";
        case SegmentState::InactiveQuarter: return "inactive-quarter";
        case SegmentState::InactiveHalf: return "inactive-half";
    }
    return "active-transition";
}

SegmentState parse_segment_state(std::string_view token) {
    for (const SegmentState state :
         {SegmentState::ActiveOffence, SegmentState::ActiveDefence, SegmentState::ActiveTransition,
          SegmentState::InactiveStop, SegmentState::InactiveFreeThrow,
          SegmentState::InactiveTimeout, SegmentState::InactiveQuarter,
          SegmentState::InactiveHalf}) {
        if (token == segment_state_name(state)) return state;
    }
    throw ParseError("unknown segment state '" + std::string(token) + "'");
}

std::int64_t GameScript::total_seconds() const {
    std::int64_t total = 0;
    for (const ScriptSegment& s : segments) total += s.duration_s;
    return total;
}

void GameScript::validate() const {
    if (segments.empty()) throw ContractError("script: needs at least one segment");
    if (!(noise_sigma_cm >= 0.0)) throw ContractError("script: noise_sigma_cm must be >= 0");
    if (!(ramp_s >= 0.0)) throw ContractError("script: ramp_s must be >= 0");
    for (const ScriptSegment& s : segments) {
        if (s.duration_s < 1) throw ContractError("script: segment durations must be >= 1 s");
        if (!(s.low_kmh > 0.0) || !(s.low_kmh < s.high_kmh)) {
            throw ContractError("script: speed regime needs 0 < low < high");
        }
    }
}

SynthGame generate(const GameScript& script) {
    script.validate();
    std::mt19937_64 rng(script.seed);

    SynthGame game;
    game.frames.reserve(static_cast<std::size_t>(script.total_seconds()) * 50);

    const PlayerId ids[5] = {"p1", "p2", "p3", "p4", "p5"};

    // Reports first: they depend only on segment boundaries.
    std::int64_t sec = 1;
    for (std::size_t i = 0; i < script.segments.size(); ++i) {
        const ScriptSegment& segment = script.segments[i];
        const bool active = segment_is_active(segment.state);
        const bool changed = i == 0 || active != segment_is_active(script.segments[i - 1].state);
        if (changed) {
            ActivityReportRow row;
            row.action = active ? ActivityAction::Play : ActivityAction::Stop;
            row.sec = sec;
            row.active = active;
            const InactivityReason reason = stop_reason(segment.state);
            row.timeout = !active && reason == InactivityReason::Timeout;
            row.ft = !active && reason == InactivityReason::FreeThrow;
            row.quarter = !active && reason == InactivityReason::Quarter;
            row.half = !active && reason == InactivityReason::Half;
            game.activity.push_back(row);
        }
        sec += segment.duration_s;
    }

    PossessionSide first_side = PossessionSide::Def;
    for (const ScriptSegment& segment : script.segments) {
        if (segment.state == SegmentState::ActiveOffence) {
            first_side = PossessionSide::Off;
            break;
        }
        if (segment.state == SegmentState::ActiveDefence) break;
    }
    game.possession.push_back(PossessionReportRow{first_side, 1});
    sec = 1;
    PossessionSide side = first_side;
    for (const ScriptSegment& segment : script.segments) {
        PossessionSide segment_side = side;
        if (segment.state == SegmentState::ActiveOffence) segment_side = PossessionSide::Off;
        if (segment.state == SegmentState::ActiveDefence) segment_side = PossessionSide::Def;
        if (segment_side != side && sec > 1) {
            game.possession.push_back(PossessionReportRow{segment_side, sec});
            side = segment_side;
        }
        sec += segment.duration_s;
    }

    // Frames. Within each new segment an optional ramp blends the speed
    // band and the formation from the previous segment.
    std::int64_t t_ms = 0;
    for (std::size_t i = 0; i < script.segments.size(); ++i) {
        const ScriptSegment& segment = script.segments[i];
        const auto positions = base_positions(segment.state);
        const SpeedBand band = speed_band(segment);
        const auto prev_positions = i > 0 ? base_positions(script.segments[i - 1].state) : positions;
        const SpeedBand prev_band = i > 0 ? speed_band(script.segments[i - 1]) : band;

        const std::int64_t frame_count = segment.duration_s * 50;
        for (std::int64_t k = 0; k < frame_count; ++k, t_ms += kNominalPeriodMs) {
            double alpha = 1.0;
            if (script.ramp_s > 0.0 && i > 0) {
                alpha = std::min(1.0, static_cast<double>(k) / (script.ramp_s * 50.0));
            }
            Frame frame;
            frame.t_ms = t_ms;
            frame.samples.reserve(5);
            for (int p = 0; p < 5; ++p) {
                const double speed = uniform(rng, lerp(prev_band.lo, band.lo, alpha),
                                             lerp(prev_band.hi, band.hi, alpha));
                const double angle = uniform(rng, 0.0, 2.0 * std::numbers::pi);
                const NormalPair noise = normal_pair(rng, script.noise_sigma_cm);
                frame.samples.push_back(PlayerSample{
                    ids[p],
                    lerp(prev_positions[p].x, positions[p].x, alpha) + noise.a,
                    lerp(prev_positions[p].y, positions[p].y, alpha) + noise.b,
                    speed * std::cos(angle),
                    speed * std::sin(angle),
                });
            }
            game.frames.push_back(std::move(frame));
        }
    }
    return game;
}

GameScript parse_script(std::string_view text, std::string_view source) {
    GameScript script;
    bool have_segment_defaults_locked = false;
    detail::LineReader reader(text);
    while (const auto raw = reader.next()) {
        std::string_view line = *raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = detail::trim(line);
        if (line.empty()) continue;

        const std::size_t n = reader.line_number();
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ParseError(std::string(source), n, "expected 'key = value'");
        }
        const std::string_view key = detail::trim(line.substr(0, eq));
        const std::string_view value = detail::trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ParseError(std::string(source), n, "expected 'key = value'");
        }

        const auto number = [&]() -> double {
            const auto v = detail::parse_double(value);
            if (!v) {
                throw ParseError(std::string(source), n,
                                 "bad numeric value '" + std::string(value) + "'");
            }
            return *v;
        };

        if (key == "seed") {
            const auto v = detail::parse_int(value);
            if (!v || *v < 0) throw ParseError(std::string(source), n, "bad seed");
            script.seed = static_cast<std::uint64_t>(*v);
        } else if (key == "noise_sigma_cm") {
            script.noise_sigma_cm = number();
        } else if (key == "ramp_s") {
            script.ramp_s = number();
        } else if (key == "low_kmh" || key == "high_kmh") {
            if (have_segment_defaults_locked) {
                throw ParseError(std::string(source), n,
                                 "'" + std::string(key) + "' must precede the first segment");
            }
            (key == "low_kmh" ? script.low_kmh : script.high_kmh) = number();
        } else if (key == "segment") {
            have_segment_defaults_locked = true;
            std::vector<std::string_view> tokens;
            for (const auto part : detail::split(value, ' ')) {
                if (!part.empty()) tokens.push_back(part);
            }
            if (tokens.size() != 2 && tokens.size() != 4) {
                throw ParseError(std::string(source), n,
                                 "segment needs '<state> <duration_s> [<low_kmh> <high_kmh>]'");
            }
            ScriptSegment segment;
            try {
                segment.state = parse_segment_state(tokens[0]);
            } catch (const ParseError& e) {
                throw ParseError(std::string(source), n, e.what());
            }
            const auto duration = detail::parse_int(tokens[1]);
            if (!duration || *duration < 1) {
                throw ParseError(std::string(source), n, "segment duration must be >= 1 s");
            }
            segment.duration_s = *duration;
            segment.low_kmh = script.low_kmh;
            segment.high_kmh = script.high_kmh;
            if (tokens.size() == 4) {
                const auto lo = detail::parse_double(tokens[2]);
                const auto hi = detail::parse_double(tokens[3]);
                if (!lo || !hi) throw ParseError(std::string(source), n, "bad segment speeds");
                segment.low_kmh = *lo;
                segment.high_kmh = *hi;
            }
            script.segments.push_back(segment);
        } else {
            throw ParseError(std::string(source), n, "unknown key '" + std::string(key) + "'");
        }
    }
    try {
        script.validate();
    } catch (const ContractError& e) {
        throw ParseError(std::string(source) + ": " + e.what());
    }
    return script;
}

GameScript load_script(const std::string& path) { return parse_script(read_file(path), path); }

}  // namespace courtfilter
