#pragma once

// Test-only utilities: frame builders, deterministic random generators, and
// brute-force oracles kept independent of the library's run-length code
// paths. The oracles answer per-frame questions by expanding the full
// containing window instead of tracking open runs.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "courtfilter/core_model.hpp"
#include "courtfilter/filters.hpp"
#include "courtfilter/possession.hpp"
#include "courtfilter/timeline.hpp"

namespace courtfilter::testing {

inline PlayerSample sample(PlayerId id, double x, double y, double vx = 0.0, double vy = 0.0) {
    return PlayerSample{std::move(id), x, y, vx, vy};
}

/// Frame with five players on court at safe positions, all moving at `speed`.
inline Frame five_player_frame(std::int64_t t_ms, double speed_kmh) {
    Frame frame{t_ms, {}};
    const double xs[5] = {-400.0, -200.0, 0.0, 200.0, 400.0};
    for (int i = 0; i < 5; ++i) {
        frame.samples.push_back(sample("p" + std::to_string(i + 1), xs[i], 300.0, speed_kmh, 0.0));
    }
    return frame;
}

inline const PlayerSample* find_sample(const Frame& frame, const PlayerId& id) {
    for (const PlayerSample& s : frame.samples) {
        if (s.player_id == id) return &s;
    }
    return nullptr;
}

inline bool frames_adjacent(const std::vector<Frame>& frames, std::size_t left) {
    return frames[left + 1].t_ms - frames[left].t_ms <= kNominalPeriodMs;
}

/// Brute-force criterion 1-B: a frame is dropped iff some player's full
/// containing FTSA window (expanded frame by frame in both directions)
/// lasts at least t_ft_ms.
inline DropMask oracle_free_throw(const std::vector<Frame>& frames, const CourtGeometry& geom,
                                  std::int64_t t_ft_ms) {
    DropMask mask(frames.size());
    const auto player_in_ftsa = [&](std::size_t i, const PlayerId& id) {
        const PlayerSample* s = find_sample(frames[i], id);
        return s != nullptr && in_ftsa(s->pos_x_cm, s->pos_y_cm, geom);
    };
    for (std::size_t i = 0; i < frames.size(); ++i) {
        for (const PlayerSample& s : frames[i].samples) {
            if (!in_ftsa(s.pos_x_cm, s.pos_y_cm, geom)) continue;
            std::size_t lo = i;
            while (lo > 0 && frames_adjacent(frames, lo - 1) && player_in_ftsa(lo - 1, s.player_id)) {
                --lo;
            }
            std::size_t hi = i;
            while (hi + 1 < frames.size() && frames_adjacent(frames, hi) &&
                   player_in_ftsa(hi + 1, s.player_id)) {
                ++hi;
            }
            if (frames[hi].t_ms - frames[lo].t_ms + kNominalPeriodMs >= t_ft_ms) {
                mask.reasons[i] |= kFreeThrowDwell;
                break;
            }
        }
    }
    return mask;
}

/// Brute-force criterion 1-C: the spell predicate per frame, then a search
/// for a qualifying window containing the frame.
inline DropMask oracle_low_speed(const std::vector<Frame>& frames, const CourtGeometry& geom,
                                 double v_min_kmh, std::int64_t t_vel_ms) {
    std::vector<char> slow(frames.size());
    for (std::size_t i = 0; i < frames.size(); ++i) {
        int on_court = 0;
        bool all_slow = true;
        for (const PlayerSample& s : frames[i].samples) {
            if (!in_court(s.pos_x_cm, s.pos_y_cm, geom)) continue;
            ++on_court;
            if (planar_speed(s.vel_x_kmh, s.vel_y_kmh) >= v_min_kmh) all_slow = false;
        }
        slow[i] = on_court == 5 && all_slow;
    }
    DropMask mask(frames.size());
    for (std::size_t i = 0; i < frames.size(); ++i) {
        if (!slow[i]) continue;
        std::size_t lo = i;
        while (lo > 0 && slow[lo - 1] && frames_adjacent(frames, lo - 1)) --lo;
        std::size_t hi = i;
        while (hi + 1 < frames.size() && slow[hi + 1] && frames_adjacent(frames, hi)) ++hi;
        if (frames[hi].t_ms - frames[lo].t_ms + kNominalPeriodMs >= t_vel_ms) {
            mask.reasons[i] |= kLowSpeedSpell;
        }
    }
    return mask;
}

/// Naive recount of criterion 2-B rule firings.
inline std::int64_t oracle_final_ord(const std::vector<Poss>& poss) {
    std::int64_t firings = 0;
    for (std::size_t i = 1; i < poss.size(); ++i) {
        if (poss[i - 1] == Poss::Transition && poss[i] != Poss::Transition) ++firings;
    }
    return firings + 1;
}

/// Naive per-second recount of the majority votes.
inline PredictionTimeline oracle_aggregate(const std::vector<Frame>& frames, const DropMask& mask,
                                           const std::vector<PossessionLabel>& kept_labels,
                                           std::int64_t duration_s) {
    PredictionTimeline out;
    out.inactive.assign(static_cast<std::size_t>(duration_s), 0);
    out.poss.assign(static_cast<std::size_t>(duration_s), MajorityPoss::None);
    std::vector<std::size_t> kept_index_of(frames.size(), 0);
    std::size_t k = 0;
    for (std::size_t i = 0; i < frames.size(); ++i) {
        kept_index_of[i] = k;
        if (mask.kept(i)) ++k;
    }
    for (std::int64_t sec = 1; sec <= duration_s; ++sec) {
        std::int64_t total = 0;
        std::int64_t dropped = 0;
        std::int64_t count_off = 0;
        std::int64_t count_def = 0;
        std::int64_t count_trans = 0;
        for (std::size_t i = 0; i < frames.size(); ++i) {
            if (frames[i].t_ms / 1000 + 1 != sec) continue;
            ++total;
            if (!mask.kept(i)) {
                ++dropped;
            } else if (!kept_labels.empty()) {
                const Poss p = kept_labels[kept_index_of[i]].poss;
                if (p == Poss::Offensive) ++count_off;
                if (p == Poss::Defensive) ++count_def;
                if (p == Poss::Transition) ++count_trans;
            }
        }
        const auto at = static_cast<std::size_t>(sec - 1);
        out.inactive[at] = (total == 0 || 2 * dropped >= total) ? 1 : 0;
        const std::int64_t labeled = count_off + count_def + count_trans;
        if (labeled > 0) {
            if (2 * count_off > labeled) out.poss[at] = MajorityPoss::Off;
            if (2 * count_def > labeled) out.poss[at] = MajorityPoss::Def;
            if (2 * count_trans > labeled) out.poss[at] = MajorityPoss::Transition;
        }
    }
    return out;
}

/// Naive recount of the activity confusion.
inline ConfusionCounts oracle_confusion(const PredictionTimeline& pred,
                                        const ActivityTimeline& truth) {
    ConfusionCounts c;
    for (std::int64_t sec = 1; sec <= truth.duration_s(); ++sec) {
        const bool truth_inactive = !truth.is_active(sec);
        const bool pred_inactive = pred.is_pred_inactive(sec);
        if (truth_inactive && pred_inactive) ++c.tp;
        if (!truth_inactive && !pred_inactive) ++c.tn;
        if (!truth_inactive && pred_inactive) ++c.fp;
        if (truth_inactive && !pred_inactive) ++c.fn;
    }
    return c;
}

}  // namespace courtfilter::testing
