#include "rfistat/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace rfistat {

void Geometry::validate() const {
    if (!(earth_radius_m > 0.0))
        throw std::invalid_argument("geometry.earth_radius_km: must be > 0");
    if (!(sat_center_distance_m > earth_radius_m))
        throw std::invalid_argument(
            "geometry.sat_center_distance_km: must exceed earth_radius_km");
    if (!(incidence_deg >= 0.0 && incidence_deg < 90.0))
        throw std::invalid_argument("geometry.incidence_deg: must be in [0, 90)");
    if (!(footprint_side_km > 0.0))
        throw std::invalid_argument("geometry.footprint_side_km: must be > 0");
}

double cap_half_angle(const Geometry& g) {
    return std::acos(g.earth_radius_m / g.sat_center_distance_m);
}

double exposed_cap_area_m2(const Geometry& g) {
    const double re = g.earth_radius_m;
    return 2.0 * M_PI * re * re * (1.0 - re / g.sat_center_distance_m);
}

DistanceBounds distance_bounds(const Geometry& g) {
    const double re = g.earth_radius_m;
    const double h = g.sat_center_distance_m;
    return {h - re, std::sqrt((h - re) * (h + re))};
}

double mainlobe_distance_m(const Geometry& g, MainlobeRootForm form) {
    // Evaluated in extended precision: the root feeds a residual check whose
    // budget (1e-3 m^2) is below plain double rounding noise at these scales.
    const long double re = g.earth_radius_m;
    const long double h = g.sat_center_distance_m;
    const long double i = static_cast<long double>(g.incidence_deg) * M_PIl / 180.0L;
    const long double t = (form == MainlobeRootForm::cosine) ? std::cos(i) : std::sin(i);
    const long double half_b = re * t;
    const long double d = -half_b + std::sqrt(half_b * half_b + (h - re) * (h + re));
    return static_cast<double>(d);
}

double expected_mainlobe_clusters(const Geometry& g, double lambda_c_per_km2) {
    if (lambda_c_per_km2 < 0.0)
        throw std::invalid_argument("lambda_c_per_km2: must be >= 0");
    return g.footprint_side_km * g.footprint_side_km * lambda_c_per_km2;
}

}  // namespace rfistat
