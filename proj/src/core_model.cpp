#include "courtfilter/core_model.hpp"

#include <cmath>

namespace courtfilter {

void CourtGeometry::validate() const {
    if (!(half_length_cm > 0.0) || !(half_width_cm > 0.0) || !(ftsa_center_abs_x_cm > 0.0) ||
        !(ftsa_radius_cm > 0.0)) {
        throw ContractError("court geometry: all measures must be strictly positive");
    }
    if (!(ftsa_center_abs_x_cm < half_length_cm)) {
        throw ContractError("court geometry: FTSA center must lie inside the court length");
    }
    if (!(ftsa_radius_cm <= half_width_cm)) {
        throw ContractError("court geometry: FTSA radius cannot exceed the half width");
    }
}

double planar_speed(double vel_x_kmh, double vel_y_kmh) {
    if (!std::isfinite(vel_x_kmh) || !std::isfinite(vel_y_kmh)) {
        throw ContractError("planar_speed: non-finite velocity component");
    }
    // Magnitudes are bounded by human running speeds; plain sqrt cannot
    // overflow and is considerably faster than std::hypot here.
    return std::sqrt(vel_x_kmh * vel_x_kmh + vel_y_kmh * vel_y_kmh);
}

bool in_court(double pos_x_cm, double pos_y_cm, const CourtGeometry& geom) {
    return std::abs(pos_x_cm) <= geom.half_length_cm && std::abs(pos_y_cm) <= geom.half_width_cm;
}

bool in_ftsa(double pos_x_cm, double pos_y_cm, const CourtGeometry& geom) {
    const double dx = std::abs(pos_x_cm) - geom.ftsa_center_abs_x_cm;
    const double r2 = geom.ftsa_radius_cm * geom.ftsa_radius_cm;
    return dx * dx + pos_y_cm * pos_y_cm <= r2;
}

}  // namespace courtfilter
