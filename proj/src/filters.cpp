#include "courtfilter/filters.hpp"

#include <algorithm>
#include <unordered_map>

#include "text_util.hpp"

namespace courtfilter {

namespace {

void require_ordered(std::span<const Frame> frames) {
    for (std::size_t i = 1; i < frames.size(); ++i) {
        if (frames[i].t_ms <= frames[i - 1].t_ms) {
            throw ContractError("frames must be strictly increasing in t_ms");
        }
    }
}

/// True when frame i+1 continues a run started at or before frame i. Lost
/// samples show up as spacing above the nominal period and break runs.
bool contiguous(std::span<const Frame> frames, std::size_t i) {
    return frames[i + 1].t_ms - frames[i].t_ms <= kNominalPeriodMs;
}

std::int64_t run_duration_ms(std::span<const Frame> frames, std::size_t first, std::size_t last) {
    return frames[last].t_ms - frames[first].t_ms + kNominalPeriodMs;
}

int on_court_count(const Frame& frame, const CourtGeometry& geom) {
    int count = 0;
    for (const PlayerSample& s : frame.samples) {
        if (in_court(s.pos_x_cm, s.pos_y_cm, geom)) ++count;
    }
    return count;
}

void mark_run(DropMask& mask, std::size_t first, std::size_t last, DropReason reason) {
    for (std::size_t i = first; i <= last; ++i) mask.reasons[i] |= reason;
}

}  // namespace

void FilterParams::validate() const {
    if (t_ft_ms < 0) throw ContractError("filter params: t_ft_ms must be >= 0");
    if (t_vel_ms < 0) throw ContractError("filter params: t_vel_ms must be >= 0");
    if (!(v_min_kmh >= 0.0)) throw ContractError("filter params: v_min_kmh must be >= 0");
}

std::size_t DropMask::kept_count() const {
    return static_cast<std::size_t>(std::count(reasons.begin(), reasons.end(), std::uint8_t{0}));
}

std::size_t DropMask::reason_count(DropReason reason) const {
    std::size_t n = 0;
    for (const std::uint8_t r : reasons) {
        if (r & reason) ++n;
    }
    return n;
}

void DropMask::merge(const DropMask& other) {
    if (other.size() != size()) throw ContractError("drop masks of different lengths");
    for (std::size_t i = 0; i < reasons.size(); ++i) reasons[i] |= other.reasons[i];
}

std::vector<PlayerId> on_court_ids(const Frame& frame, const CourtGeometry& geom) {
    std::vector<PlayerId> ids;
    for (const PlayerSample& s : frame.samples) {
        if (in_court(s.pos_x_cm, s.pos_y_cm, geom)) ids.push_back(s.player_id);
    }
    return ids;
}

DropMask criterion_not_five(std::span<const Frame> frames, const CourtGeometry& geom) {
    geom.validate();
    require_ordered(frames);
    DropMask mask(frames.size());
    for (std::size_t i = 0; i < frames.size(); ++i) {
        if (on_court_count(frames[i], geom) != 5) mask.reasons[i] = kNotFivePlayers;
    }
    return mask;
}

DropMask criterion_free_throw(std::span<const Frame> frames, const CourtGeometry& geom,
                              std::int64_t t_ft_ms) {
    geom.validate();
    if (t_ft_ms < 0) throw ContractError("t_ft_ms must be >= 0");
    require_ordered(frames);
    DropMask mask(frames.size());

    // Per-player state of the open FTSA run, keyed by a dense index.
    struct RunState {
        std::size_t start = 0;
        std::size_t last = 0;
        bool open = false;
    };
    std::unordered_map<PlayerId, std::size_t> index;
    std::vector<RunState> runs;

    auto close = [&](RunState& run) {
        if (run.open && run_duration_ms(frames, run.start, run.last) >= t_ft_ms) {
            mark_run(mask, run.start, run.last, kFreeThrowDwell);
        }
        run.open = false;
    };

    for (std::size_t i = 0; i < frames.size(); ++i) {
        const bool joined = i > 0 && contiguous(frames, i - 1);
        for (const PlayerSample& s : frames[i].samples) {
            if (!in_ftsa(s.pos_x_cm, s.pos_y_cm, geom)) continue;
            const auto [it, inserted] = index.try_emplace(s.player_id, runs.size());
            if (inserted) runs.emplace_back();
            RunState& run = runs[it->second];
            if (run.open && run.last == i - 1 && joined) {
                run.last = i;
            } else {
                close(run);
                run.open = true;
                run.start = run.last = i;
            }
        }
    }
    for (RunState& run : runs) close(run);
    return mask;
}

DropMask criterion_low_speed(std::span<const Frame> frames, const CourtGeometry& geom,
                             double v_min_kmh, std::int64_t t_vel_ms) {
    geom.validate();
    if (!(v_min_kmh >= 0.0)) throw ContractError("v_min_kmh must be >= 0");
    if (t_vel_ms < 0) throw ContractError("t_vel_ms must be >= 0");
    require_ordered(frames);
    DropMask mask(frames.size());

    // The spell predicate: exactly five players on court, every one of them
    // below v_min_kmh. Frames with a different on-court count never satisfy
    // it; those are criterion 1-A's to drop.
    const auto slow_frame = [&](const Frame& frame) {
        int on_court = 0;
        bool all_slow = true;
        for (const PlayerSample& s : frame.samples) {
            if (!in_court(s.pos_x_cm, s.pos_y_cm, geom)) continue;
            ++on_court;
            if (planar_speed(s.vel_x_kmh, s.vel_y_kmh) >= v_min_kmh) all_slow = false;
        }
        return on_court == 5 && all_slow;
    };

    std::size_t start = 0;
    bool open = false;
    const auto close = [&](std::size_t last) {
        if (open && run_duration_ms(frames, start, last) >= t_vel_ms) {
            mark_run(mask, start, last, kLowSpeedSpell);
        }
        open = false;
    };

    for (std::size_t i = 0; i < frames.size(); ++i) {
        if (!slow_frame(frames[i])) {
            if (open) close(i - 1);
            continue;
        }
        if (open && !contiguous(frames, i - 1)) {
            close(i - 1);
        }
        if (!open) {
            open = true;
            start = i;
        }
    }
    if (open) close(frames.size() - 1);
    return mask;
}

FilterResult filter_measurements(std::span<const Frame> frames, const CourtGeometry& geom,
                                 const FilterParams& params) {
    params.validate();
    DropMask mask = criterion_not_five(frames, geom);
    mask.merge(criterion_free_throw(frames, geom, params.t_ft_ms));
    mask.merge(criterion_low_speed(frames, geom, params.v_min_kmh, params.t_vel_ms));

    FilterResult result{{}, std::move(mask)};
    result.xr.reserve(result.mask.kept_count());
    for (std::size_t i = 0; i < frames.size(); ++i) {
        if (result.mask.kept(i)) result.xr.push_back(frames[i]);
    }
    return result;
}

namespace {

constexpr std::string_view kMaskHeader = "t_ms,kept,reasons";

struct ReasonName {
    DropReason reason;
    std::string_view name;
};
constexpr ReasonName kReasonNames[] = {
    {kNotFivePlayers, "not_five_players"},
    {kFreeThrowDwell, "free_throw_dwell"},
    {kLowSpeedSpell, "low_speed_spell"},
};

}  // namespace

std::string serialize_mask(std::span<const Frame> frames, const DropMask& mask) {
    if (frames.size() != mask.size()) throw ContractError("mask length does not match frames");
    std::string out(kMaskHeader);
    out.push_back('\n');
    for (std::size_t i = 0; i < frames.size(); ++i) {
        out += std::to_string(frames[i].t_ms);
        out += mask.kept(i) ? ",1," : ",0,";
        bool first = true;
        for (const auto& [reason, name] : kReasonNames) {
            if (mask.reasons[i] & reason) {
                if (!first) out.push_back('|');
                out += name;
                first = false;
            }
        }
        out.push_back('\n');
    }
    return out;
}

std::vector<MaskRow> parse_mask(std::string_view text, std::string_view source) {
    detail::LineReader reader(text);
    {
        const auto line = reader.next();
        if (!line || *line != kMaskHeader) {
            throw ParseError(std::string(source), reader.line_number(),
                             "expected header '" + std::string(kMaskHeader) + "'");
        }
    }
    std::vector<MaskRow> rows;
    while (const auto line = reader.next()) {
        const std::size_t n = reader.line_number();
        const auto fields = detail::split(*line, ',');
        if (fields.size() != 3) {
            throw ParseError(std::string(source), n,
                             "expected 3 fields, got " + std::to_string(fields.size()));
        }
        const auto t = detail::parse_int(fields[0]);
        if (!t || *t < 0) throw ParseError(std::string(source), n, "bad t_ms");
        if (!rows.empty() && *t <= rows.back().t_ms) {
            throw ParseError(std::string(source), n, "t_ms must be strictly increasing");
        }
        std::uint8_t reasons = 0;
        if (!fields[2].empty()) {
            for (const auto token : detail::split(fields[2], '|')) {
                bool known = false;
                for (const auto& [reason, name] : kReasonNames) {
                    if (token == name) {
                        reasons |= reason;
                        known = true;
                        break;
                    }
                }
                if (!known) {
                    throw ParseError(std::string(source), n,
                                     "unknown drop reason '" + std::string(token) + "'");
                }
            }
        }
        if (fields[1] != "0" && fields[1] != "1") {
            throw ParseError(std::string(source), n, "kept must be 0 or 1");
        }
        if ((fields[1] == "1") != (reasons == 0)) {
            throw ParseError(std::string(source), n, "kept flag contradicts the reason list");
        }
        rows.push_back(MaskRow{*t, reasons});
    }
    return rows;
}

}  // namespace courtfilter
