#pragma once

#include <string>
#include <vector>

#include "rfistat/monte_carlo.hpp"
#include "rfistat/spectral.hpp"

namespace rfistat {

struct SweepSpec {
    std::vector<double> alpha_list;
    std::vector<double> lambda_bs_list;
    std::vector<double> tau_list;
};

// Full experiment description. Parsed from a sectioned key/value text file;
// lengths are given in km in the file and stored in SI here.
struct ScenarioConfig {
    Geometry geometry;
    MainlobeRootForm mainlobe_form = MainlobeRootForm::cosine;
    RadiometerParams radiometer;
    NetworkParams network;
    ChannelParams channel;
    IntraClusterParams intra;
    SimControls sim;
    SweepSpec sweep;

    void validate() const;
};

// Bundled default: the reference scenario (one cluster per 10,000 km^2,
// 20 W base stations at 1.413 GHz / 24 MHz, shadowed-Rician fading
// (0.158, 0.739, 8.97e-4), a 685 km radiometer with a 40 km footprint).
ScenarioConfig default_config();

// Canonical serialization: fixed section and key order, shortest
// round-tripping float format. parse(serialize(c)) reproduces c exactly and
// serialize is a byte-identical fixed point.
std::string serialize_config(const ScenarioConfig& c);
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config_file(const std::string& path);

// Shortest decimal representation that round-trips through strtod.
std::string format_double(double v);

}  // namespace rfistat
