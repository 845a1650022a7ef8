#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "courtfilter/core_model.hpp"

namespace courtfilter {

enum class Poss { Offensive, Defensive, Transition };

/// Possession type plus the running possession ordinal (1-based).
struct PossessionLabel {
    Poss poss = Poss::Transition;
    std::int64_t ord = 1;

    bool operator==(const PossessionLabel&) const = default;
};

enum class AttackDirection { PlusX, MinusX };

/// Attack direction as a step function of time. Teams swap baskets between
/// halves, so the direction may flip at period boundaries.
class Orientation {
public:
    /// Single direction for the whole stream.
    static Orientation constant(AttackDirection direction);

    /// Per-period directions with explicit start times for periods 2..n.
    /// period_start_ms must be strictly increasing and one shorter than
    /// directions.
    static Orientation from_periods(std::span<const AttackDirection> directions,
                                    std::span<const std::int64_t> period_start_ms);

    AttackDirection at(std::int64_t t_ms) const;

private:
    std::vector<std::int64_t> starts_;  // starts of periods 2..n
    std::vector<AttackDirection> directions_;
};

/// Arithmetic mean of the five on-court players' x coordinates.
/// Throws ContractError when the on-court count is not five.
double mean_x(const Frame& frame, const CourtGeometry& geom);

/// Offensive beyond +band (attack +x), defensive beyond -band, transition
/// inside the closed band. Attack -x mirrors the signs.
Poss classify_poss(double mean_x_cm, AttackDirection orientation, double band_cm);

/// ord starts at 1 and increments exactly on transition -> offence/defence
/// steps. Throws ContractError on an empty sequence.
std::vector<std::int64_t> assign_ord(std::span<const Poss> poss);

struct LabeledFrame {
    std::int64_t t_ms = 0;
    double mean_x_cm = 0.0;
    Poss poss = Poss::Transition;
    std::int64_t ord = 1;

    bool operator==(const LabeledFrame&) const = default;
};

struct LabelResult {
    std::vector<LabeledFrame> frames;
    std::int64_t possession_count = 0;  // final ord; 0 for an empty stream
    // Direct offensive<->defensive flips with no transition frame between.
    // Such flips do not increment ord; the count surfaces possible
    // under-counting after aggressive filtering.
    std::int64_t direct_flips = 0;
};

/// Labels a filtered stream (five on-court players everywhere).
LabelResult label_possessions(std::span<const Frame> xr, const CourtGeometry& geom,
                              const Orientation& orientation, double band_cm);

// Labeled file: header t_ms,mean_x_cm,poss,ord with poss one of
// offensive / defensive / transition.
std::string serialize_labels(std::span<const LabeledFrame> frames);
std::vector<LabeledFrame> parse_labels(std::string_view text, std::string_view source = "labels");

std::string_view poss_name(Poss poss);

}  // namespace courtfilter
