#include "rfistat/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace rfistat {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

struct KvStore {
    std::map<std::string, std::string> values;  // "section.key" -> raw text
    std::map<std::string, bool> consumed;

    double number(const std::string& path) {
        auto it = values.find(path);
        if (it == values.end()) throw std::invalid_argument(path + ": missing required key");
        consumed[path] = true;
        const char* begin = it->second.c_str();
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin || *trim(end).c_str() != '\0')
            throw std::invalid_argument(path + ": not a number: '" + it->second + "'");
        return v;
    }

    long integer(const std::string& path) {
        const double v = number(path);
        const long r = static_cast<long>(v);
        if (static_cast<double>(r) != v)
            throw std::invalid_argument(path + ": expected an integer");
        return r;
    }

    bool boolean(const std::string& path) {
        auto it = values.find(path);
        if (it == values.end()) throw std::invalid_argument(path + ": missing required key");
        consumed[path] = true;
        const std::string v = trim(it->second);
        if (v == "true") return true;
        if (v == "false") return false;
        throw std::invalid_argument(path + ": expected true or false");
    }

    std::string word(const std::string& path) {
        auto it = values.find(path);
        if (it == values.end()) throw std::invalid_argument(path + ": missing required key");
        consumed[path] = true;
        return trim(it->second);
    }

    std::uint64_t unsigned64(const std::string& path) {
        auto it = values.find(path);
        if (it == values.end()) throw std::invalid_argument(path + ": missing required key");
        consumed[path] = true;
        const std::string v = trim(it->second);
        const char* begin = v.c_str();
        char* end = nullptr;
        const unsigned long long r = std::strtoull(begin, &end, 10);
        if (end == begin || *end != '\0')
            throw std::invalid_argument(path + ": expected an unsigned integer");
        return r;
    }

    bool has(const std::string& path) const { return values.count(path) != 0; }

    std::vector<double> list(const std::string& path) {
        auto it = values.find(path);
        if (it == values.end()) throw std::invalid_argument(path + ": missing required key");
        consumed[path] = true;
        std::vector<double> out;
        std::stringstream ss(it->second);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (item.empty()) continue;
            const char* begin = item.c_str();
            char* end = nullptr;
            const double v = std::strtod(begin, &end);
            if (end == begin || *trim(end).c_str() != '\0')
                throw std::invalid_argument(path + ": bad list element '" + item + "'");
            out.push_back(v);
        }
        if (out.empty()) throw std::invalid_argument(path + ": list must be non-empty");
        return out;
    }
};

KvStore tokenize(const std::string& text) {
    KvStore kv;
    std::string section;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::invalid_argument("config line " + std::to_string(lineno) +
                                            ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        if (section.empty() || key.empty())
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": key outside a [section]");
        kv.values[section + "." + key] = trim(line.substr(eq + 1));
    }
    return kv;
}

void append_kv(std::string& out, const char* key, const std::string& v) {
    out += key;
    out += " = ";
    out += v;
    out += '\n';
}

std::string format_list(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += format_double(v[i]);
    }
    return out;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) return buf;
    }
    return buf;
}

void ScenarioConfig::validate() const {
    geometry.validate();
    radiometer.validate();
    network.validate();
    channel.validate();
    intra.validate();
    sim.validate();
    for (double a : sweep.alpha_list)
        if (!(a > 2.0)) throw std::invalid_argument("sweep.alpha_list: entries must be > 2");
    for (double l : sweep.lambda_bs_list)
        if (!(l >= 0.0))
            throw std::invalid_argument("sweep.lambda_bs_list: entries must be >= 0");
    for (double t : sweep.tau_list)
        if (!(t > 0.0)) throw std::invalid_argument("sweep.tau_list: entries must be > 0");
}

ScenarioConfig default_config() {
    ScenarioConfig c;
    c.geometry = Geometry{6371.0e3, 7056.0e3, 40.0, 40.0};
    c.mainlobe_form = MainlobeRootForm::cosine;
    c.radiometer = RadiometerParams{1.0, 1e-5, 24e6, 1.413e9, 1.2};
    c.network = NetworkParams{1e-4, 800.0, 20.0, 2.1, 4000.0};
    c.channel = ChannelParams{0.158, 0.739, 8.97e-4};
    c.intra = IntraClusterParams{150.0, 4000.0, 20.0, 4.0, -174.0, 24e6, 1.413e9};
    c.sim = SimControls{10000, 20240901ull, false, 2};
    c.sweep.alpha_list = {2.01, 2.042, 2.074, 2.106, 2.138, 2.170, 2.202};
    c.sweep.lambda_bs_list = {500.0, 800.0, 1200.0};
    c.sweep.tau_list = {0.6, 0.8, 1.0, 1.3};
    return c;
}

std::string serialize_config(const ScenarioConfig& c) {
    std::string out;
    out += "[geometry]\n";
    append_kv(out, "earth_radius_km", format_double(c.geometry.earth_radius_m * 1e-3));
    append_kv(out, "sat_center_distance_km",
              format_double(c.geometry.sat_center_distance_m * 1e-3));
    append_kv(out, "incidence_deg", format_double(c.geometry.incidence_deg));
    append_kv(out, "footprint_side_km", format_double(c.geometry.footprint_side_km));
    append_kv(out, "mainlobe_root_form",
              c.mainlobe_form == MainlobeRootForm::cosine ? "cos" : "sin");
    out += "\n[radiometer]\n";
    append_kv(out, "g_ml_db", format_double(10.0 * std::log10(c.radiometer.g_ml)));
    append_kv(out, "g_sl_db", format_double(10.0 * std::log10(c.radiometer.g_sl)));
    append_kv(out, "bandwidth_hz", format_double(c.radiometer.bandwidth_hz));
    append_kv(out, "center_freq_hz", format_double(c.radiometer.center_freq_hz));
    append_kv(out, "beamwidth_half_deg", format_double(c.radiometer.beamwidth_half_deg));
    out += "\n[network]\n";
    append_kv(out, "lambda_c_per_km2", format_double(c.network.lambda_c_per_km2));
    append_kv(out, "lambda_bs", format_double(c.network.lambda_bs));
    append_kv(out, "p_tx_w", format_double(c.network.p_tx_w));
    append_kv(out, "alpha", format_double(c.network.alpha));
    append_kv(out, "sigma_c_km", format_double(c.network.sigma_c_m * 1e-3));
    out += "\n[channel]\n";
    append_kv(out, "b0", format_double(c.channel.b0));
    append_kv(out, "m", format_double(c.channel.m));
    append_kv(out, "omega", format_double(c.channel.omega));
    out += "\n[intra]\n";
    append_kv(out, "lambda_bs", format_double(c.intra.lambda_bs));
    append_kv(out, "alpha", format_double(c.intra.alpha_intra));
    append_kv(out, "noise_density_dbm_hz", format_double(c.intra.noise_density_dbm_hz));
    out += "\n[sim]\n";
    append_kv(out, "rounds", std::to_string(c.sim.rounds));
    append_kv(out, "seed", std::to_string(c.sim.seed));
    append_kv(out, "bs_offsets", c.sim.bs_offsets_enabled ? "true" : "false");
    append_kv(out, "workers", std::to_string(c.sim.workers));
    out += "\n[sweep]\n";
    append_kv(out, "alpha_list", format_list(c.sweep.alpha_list));
    append_kv(out, "lambda_bs_list", format_list(c.sweep.lambda_bs_list));
    append_kv(out, "tau_list", format_list(c.sweep.tau_list));
    return out;
}

ScenarioConfig parse_config(const std::string& text) {
    KvStore kv = tokenize(text);
    ScenarioConfig c;
    c.geometry.earth_radius_m = kv.number("geometry.earth_radius_km") * 1e3;
    c.geometry.sat_center_distance_m = kv.number("geometry.sat_center_distance_km") * 1e3;
    c.geometry.incidence_deg = kv.number("geometry.incidence_deg");
    c.geometry.footprint_side_km = kv.number("geometry.footprint_side_km");
    const std::string form = kv.word("geometry.mainlobe_root_form");
    if (form == "cos")
        c.mainlobe_form = MainlobeRootForm::cosine;
    else if (form == "sin")
        c.mainlobe_form = MainlobeRootForm::sine;
    else
        throw std::invalid_argument("geometry.mainlobe_root_form: expected cos or sin");

    c.radiometer.g_ml = std::pow(10.0, kv.number("radiometer.g_ml_db") / 10.0);
    c.radiometer.g_sl = std::pow(10.0, kv.number("radiometer.g_sl_db") / 10.0);
    c.radiometer.bandwidth_hz = kv.number("radiometer.bandwidth_hz");
    c.radiometer.center_freq_hz = kv.number("radiometer.center_freq_hz");
    c.radiometer.beamwidth_half_deg = kv.number("radiometer.beamwidth_half_deg");

    c.network.lambda_c_per_km2 = kv.number("network.lambda_c_per_km2");
    c.network.lambda_bs = kv.number("network.lambda_bs");
    c.network.p_tx_w = kv.number("network.p_tx_w");
    c.network.alpha = kv.number("network.alpha");
    c.network.sigma_c_m = kv.number("network.sigma_c_km") * 1e3;

    c.channel.b0 = kv.number("channel.b0");
    c.channel.m = kv.number("channel.m");
    c.channel.omega = kv.number("channel.omega");

    c.intra.lambda_bs = kv.number("intra.lambda_bs");
    c.intra.alpha_intra = kv.number("intra.alpha");
    c.intra.noise_density_dbm_hz = kv.number("intra.noise_density_dbm_hz");
    c.intra.sigma_c_m = c.network.sigma_c_m;
    c.intra.p_tx_w = c.network.p_tx_w;
    c.intra.bandwidth_hz = c.radiometer.bandwidth_hz;
    c.intra.carrier_hz = c.radiometer.center_freq_hz;

    c.sim.rounds = kv.integer("sim.rounds");
    c.sim.seed = kv.unsigned64("sim.seed");
    c.sim.bs_offsets_enabled = kv.boolean("sim.bs_offsets");
    c.sim.workers = static_cast<int>(kv.integer("sim.workers"));

    // An absent [sweep] section collapses to the single point the scalar
    // config describes.
    c.sweep.alpha_list =
        kv.has("sweep.alpha_list") ? kv.list("sweep.alpha_list")
                                   : std::vector<double>{c.network.alpha};
    c.sweep.lambda_bs_list = kv.has("sweep.lambda_bs_list")
                                 ? kv.list("sweep.lambda_bs_list")
                                 : std::vector<double>{c.network.lambda_bs};
    c.sweep.tau_list = kv.has("sweep.tau_list") ? kv.list("sweep.tau_list")
                                                : std::vector<double>{1.3};

    for (const auto& [key, value] : kv.values)
        if (!kv.consumed[key]) throw std::invalid_argument(key + ": unknown key");

    c.validate();
    return c;
}

ScenarioConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace rfistat
