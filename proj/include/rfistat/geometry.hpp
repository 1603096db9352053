#pragma once

namespace rfistat {

// Earth-satellite spherical geometry. The Earth's center is the origin; the
// satellite sits at distance sat_center_distance_m from it. Lengths in
// meters, except the main-lobe footprint edge which pairs with per-km^2
// cluster densities and stays in km.
struct Geometry {
    double earth_radius_m = 6371.0e3;
    double sat_center_distance_m = 7056.0e3;
    double incidence_deg = 40.0;     // main-lobe Earth incidence angle
    double footprint_side_km = 40.0; // main-lobe footprint edge

    void validate() const;
};

// Which root of the boresight quadratic to use. The cosine form reproduces
// the reference geometry (865.5 km at 40 deg incidence); the sine form is
// kept selectable for comparison (gives 1000.7 km).
enum class MainlobeRootForm { cosine, sine };

// Half-angle of the spherical cap exposed to the satellite: arccos(r_e/h).
double cap_half_angle(const Geometry& g);

// Exposed cap area 2 pi r_e^2 (1 - r_e/h), in m^2.
double exposed_cap_area_m2(const Geometry& g);

struct DistanceBounds {
    double d_min_m; // h - r_e
    double d_max_m; // sqrt(h^2 - r_e^2)
};
DistanceBounds distance_bounds(const Geometry& g);

// Distance from the satellite to the main-lobe boresight point on the
// surface: positive root of d^2 + 2 d r_e cos(i) + r_e^2 - h^2 = 0.
double mainlobe_distance_m(const Geometry& g, MainlobeRootForm form = MainlobeRootForm::cosine);

// Expected cluster count inside the main-lobe footprint.
double expected_mainlobe_clusters(const Geometry& g, double lambda_c_per_km2);

}  // namespace rfistat
