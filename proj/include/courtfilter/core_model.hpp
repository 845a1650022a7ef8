#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "courtfilter/errors.hpp"

namespace courtfilter {

// Canonical units: positions in cm, velocities in km/h, time in ms.
// Court origin is at the court center, x along the length, y along the width.

/// Nominal sampling period of the tracking system (50 Hz).
inline constexpr std::int64_t kNominalPeriodMs = 20;

using PlayerId = std::string;

/// One player's measurement at a single time instant.
struct PlayerSample {
    PlayerId player_id;
    double pos_x_cm = 0.0;
    double pos_y_cm = 0.0;
    double vel_x_kmh = 0.0;
    double vel_y_kmh = 0.0;

    bool operator==(const PlayerSample&) const = default;
};

/// All player samples sharing one time instant. Streams of frames are
/// strictly increasing in t_ms with nominal 20 ms spacing; player ids
/// within a frame are unique.
struct Frame {
    std::int64_t t_ms = 0;
    std::vector<PlayerSample> samples;

    bool operator==(const Frame&) const = default;
};

/// Court dimensions and free-throw shooting area placement. Defaults are
/// the 28 m x 15 m international court with the FTSA circle centers at
/// x = +-820 cm and radius 180 cm; all values are overridable.
struct CourtGeometry {
    double half_length_cm = 1400.0;
    double half_width_cm = 750.0;
    double ftsa_center_abs_x_cm = 820.0;
    double ftsa_radius_cm = 180.0;

    /// Throws ContractError if any field is non-positive, the FTSA center
    /// lies beyond the endline, or the FTSA radius exceeds the half width.
    void validate() const;
};

/// Euclidean norm of the planar velocity, in km/h.
/// Throws ContractError on non-finite input.
double planar_speed(double vel_x_kmh, double vel_y_kmh);

/// Closed-bounds containment test against the court rectangle.
bool in_court(double pos_x_cm, double pos_y_cm, const CourtGeometry& geom);

/// True iff the point lies within (closed) distance ftsa_radius_cm of
/// either FTSA circle center (+-ftsa_center_abs_x_cm, 0).
bool in_ftsa(double pos_x_cm, double pos_y_cm, const CourtGeometry& geom);

}  // namespace courtfilter
