#pragma once

#include <array>
#include <string>
#include <string_view>

#include "courtfilter/core_model.hpp"
#include "courtfilter/filters.hpp"
#include "courtfilter/possession.hpp"
#include "courtfilter/tuning.hpp"

namespace courtfilter {

/// Runtime configuration: geometry, kinematic thresholds, possession band,
/// per-period attack directions, and tuning grids. Defaults match the
/// international court and the reference thresholds (V_min 9.25 km/h,
/// T_vel 2 s, T_ft 10 s, band 400 cm, grids [0,20] stepped 0.25 km/h / 1 s).
struct Config {
    CourtGeometry geom;
    FilterParams params;
    double transition_band_cm = 400.0;
    std::array<AttackDirection, 4> attack_direction = {
        AttackDirection::PlusX, AttackDirection::PlusX,
        AttackDirection::MinusX, AttackDirection::MinusX};
    GridSpec grids;

    void validate() const;
};

// key = value lines, '#' comments, blank lines allowed. Keys:
//   half_length_cm half_width_cm ftsa_center_x_cm ftsa_radius_cm
//   t_ft_s v_min_kmh t_vel_s transition_band_cm
//   attack_direction_p1 .. attack_direction_p4            (+x or -x)
//   grid_vmin_min grid_vmin_max grid_vmin_step            (km/h)
//   grid_tvel_min grid_tvel_max grid_tvel_step            (s)
// Unknown keys, unparsable values, and invariant violations are rejected.
Config parse_config(std::string_view text, std::string_view source = "config");
Config load_config(const std::string& path);

AttackDirection parse_attack_direction(std::string_view token);
std::string_view attack_direction_name(AttackDirection direction);

}  // namespace courtfilter
