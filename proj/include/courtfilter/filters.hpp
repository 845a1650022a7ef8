#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "courtfilter/core_model.hpp"

namespace courtfilter {

/// Kinematic thresholds governing the drop criteria.
struct FilterParams {
    std::int64_t t_ft_ms = 10'000;
    double v_min_kmh = 9.25;
    std::int64_t t_vel_ms = 2'000;

    void validate() const;
};

/// Why a frame was dropped; a frame may carry several reasons.
enum DropReason : std::uint8_t {
    kNotFivePlayers = 1u << 0,
    kFreeThrowDwell = 1u << 1,
    kLowSpeedSpell = 1u << 2,
};

/// Per-frame keep/drop decision with reasons, aligned with the input frames.
struct DropMask {
    std::vector<std::uint8_t> reasons;  // bit-or of DropReason; 0 = kept

    explicit DropMask(std::size_t n = 0) : reasons(n, 0) {}

    std::size_t size() const { return reasons.size(); }
    bool kept(std::size_t i) const { return reasons[i] == 0; }
    std::size_t kept_count() const;
    std::size_t reason_count(DropReason reason) const;

    /// Unions another criterion's reasons into this mask (same length).
    void merge(const DropMask& other);

    bool operator==(const DropMask&) const = default;
};

/// Ids of the frame's samples lying inside the court, in sample order.
std::vector<PlayerId> on_court_ids(const Frame& frame, const CourtGeometry& geom);

/// Marks frames whose on-court player count differs from five.
DropMask criterion_not_five(std::span<const Frame> frames, const CourtGeometry& geom);

/// Marks every frame of any single player's contiguous stay inside an FTSA
/// disc lasting at least t_ft_ms. A run covers consecutive frames spaced at
/// most the nominal period apart; its duration counts one trailing period.
DropMask criterion_free_throw(std::span<const Frame> frames, const CourtGeometry& geom,
                              std::int64_t t_ft_ms);

/// Marks every frame of a contiguous spell during which exactly five players
/// are on court and all of them move slower than v_min_kmh (strict), when the
/// spell lasts at least t_vel_ms. Run accounting as in criterion_free_throw.
DropMask criterion_low_speed(std::span<const Frame> frames, const CourtGeometry& geom,
                             double v_min_kmh, std::int64_t t_vel_ms);

struct FilterResult {
    std::vector<Frame> xr;  // kept frames, original order
    DropMask mask;
};

/// Applies the three criteria to the raw stream and unions their masks.
FilterResult filter_measurements(std::span<const Frame> frames, const CourtGeometry& geom,
                                 const FilterParams& params);

// Mask file: header t_ms,kept,reasons with reasons a |-joined list of
// not_five_players / free_throw_dwell / low_speed_spell.
struct MaskRow {
    std::int64_t t_ms = 0;
    std::uint8_t reasons = 0;

    bool kept() const { return reasons == 0; }
    bool operator==(const MaskRow&) const = default;
};

std::string serialize_mask(std::span<const Frame> frames, const DropMask& mask);
std::vector<MaskRow> parse_mask(std::string_view text, std::string_view source = "mask");

}  // namespace courtfilter
