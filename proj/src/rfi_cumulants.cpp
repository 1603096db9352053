#include "rfistat/rfi_cumulants.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "rfistat/special.hpp"

namespace rfistat {

namespace {

constexpr double kBoltzmann = 1.380649e-23;
constexpr double kSpeedOfLight = 3.0e8;  // m/s
// Path-loss reference distance: x^-alpha is anchored at 1 km, so SI omega
// picks up the aperture-area conversion m^2 -> km^2.
constexpr double kOmegaSiToKm = 1e-6;

}  // namespace

void RadiometerParams::validate() const {
    if (!(g_sl > 0.0 && g_ml > g_sl))
        throw std::invalid_argument("radiometer: requires 0 < g_sl < g_ml");
    if (!(bandwidth_hz > 0.0))
        throw std::invalid_argument("radiometer.bandwidth_hz: must be > 0");
    if (!(center_freq_hz > 0.0))
        throw std::invalid_argument("radiometer.center_freq_hz: must be > 0");
    if (!(beamwidth_half_deg > 0.0))
        throw std::invalid_argument("radiometer.beamwidth_half_deg: must be > 0");
}

void NetworkParams::validate() const {
    if (!(lambda_c_per_km2 >= 0.0))
        throw std::invalid_argument("network.lambda_c_per_km2: must be >= 0");
    if (!(lambda_bs >= 0.0)) throw std::invalid_argument("network.lambda_bs: must be >= 0");
    if (!(p_tx_w > 0.0)) throw std::invalid_argument("network.p_tx_w: must be > 0");
    if (!(alpha > 2.0)) throw std::invalid_argument("network.alpha: must be > 2");
    if (!(sigma_c_m > 0.0)) throw std::invalid_argument("network.sigma_c_km: must be > 0");
}

double omega_const(const NetworkParams& net, const RadiometerParams& rad) {
    const double wavelength_factor = kSpeedOfLight / (4.0 * M_PI * rad.center_freq_hz);
    return net.p_tx_w / (2.0 * kBoltzmann * rad.bandwidth_hz) * wavelength_factor *
           wavelength_factor;
}

double p_n_rayleigh(int n, double lambda_bs, const ChannelParams& p) {
    if (n < 0) throw std::domain_error("p_n_rayleigh: requires n >= 0");
    if (n == 0) return 1.0;
    // (2 b0)^n n! L_n^(-1)(-lambda_bs); the n! (= Gamma(n+1)) factor is what
    // the p1/p2 closed forms and the Laguerre generating function require.
    return std::pow(2.0 * p.b0, n) * special::gamma_fn(n + 1.0) *
           special::gen_laguerre(n, -1.0, -lambda_bs);
}

double p_n_srf(int n, double lambda_bs, const ChannelParams& p) {
    if (n < 0) throw std::domain_error("p_n_srf: requires n >= 0");
    if (n == 0) return 1.0;
    std::vector<double> a(n);
    for (int j = 1; j <= n; ++j) a[j - 1] = srf_moment(j, p);
    double total = 0.0;
    double lam_pow = 1.0;
    for (int i = 1; i <= n; ++i) {
        lam_pow *= lambda_bs;
        total += special::partial_bell(n, i, std::span<const double>(a.data(), n - i + 1)) *
                 lam_pow;
    }
    return total;
}

double p_n(int n, double lambda_bs, const ChannelParams& p) {
    return p.is_rayleigh() ? p_n_rayleigh(n, lambda_bs, p) : p_n_srf(n, lambda_bs, p);
}

double cluster_mgf(double eta, double x_m, double gain, double lambda_bs,
                   const ChannelParams& ch, double omega_si, double alpha) {
    const double x_km = x_m * 1e-3;
    const double scale = gain * omega_si * kOmegaSiToKm * std::pow(x_km, -alpha);
    return std::exp(lambda_bs * (srf_mgf_gain(scale * eta, ch) - 1.0));
}

double lobe_cumulant(Lobe lobe, int n, const Geometry& geo, const RadiometerParams& rad,
                     const NetworkParams& net, const ChannelParams& ch, MainlobeRootForm form) {
    if (n < 1 || n > 4) throw std::domain_error("lobe_cumulant: requires 1 <= n <= 4");
    const double om_km = omega_const(net, rad) * kOmegaSiToKm;
    const double pn = p_n(n, net.lambda_bs, ch);
    if (lobe == Lobe::main) {
        const double g = rad.g_ml;
        const double d_km = mainlobe_distance_m(geo, form) * 1e-3;
        const double footprint_km2 = geo.footprint_side_km * geo.footprint_side_km;
        return footprint_km2 * net.lambda_c_per_km2 * std::pow(g * om_km, n) * pn *
               std::pow(d_km, -static_cast<double>(n) * net.alpha);
    }
    const auto [dmin_m, dmax_m] = distance_bounds(geo);
    const double dmin = dmin_m * 1e-3, dmax = dmax_m * 1e-3;
    const double e = 2.0 - static_cast<double>(n) * net.alpha;  // < 0 since alpha > 2
    const double ratio = geo.earth_radius_m / geo.sat_center_distance_m;
    return (2.0 * M_PI / e) * ratio * std::pow(rad.g_sl * om_km, n) * net.lambda_c_per_km2 *
           pn * (std::pow(dmax, e) - std::pow(dmin, e));
}

LobeCumulants lobe_stats(Lobe lobe, const Geometry& geo, const RadiometerParams& rad,
                         const NetworkParams& net, const ChannelParams& ch,
                         MainlobeRootForm form) {
    LobeCumulants out;
    out.lobe = lobe;
    for (int n = 1; n <= 4; ++n) out.k[n - 1] = lobe_cumulant(lobe, n, geo, rad, net, ch, form);
    out.mean_k = out.k[0];
    out.var_k2 = out.k[1];
    out.std_k = std::sqrt(out.k[1]);
    out.mu4_k4 = out.k[3] + 3.0 * out.k[1] * out.k[1];
    return out;
}

SopBound sop_upper_bound(const LobeCumulants& stats, double tau_k) {
    if (!(tau_k > 0.0)) throw std::domain_error("sop_upper_bound: requires tau > 0");
    const double t2 = tau_k * tau_k;
    const double raw = std::min(stats.var_k2 / t2, stats.mu4_k4 / (t2 * t2));
    return {raw, std::min(raw, 1.0)};
}

double mitigate(double measured_k, double expected_sl_k) { return measured_k - expected_sl_k; }

double heterogeneous_cumulant(Lobe lobe, int n, const Geometry& geo, const RadiometerParams& rad,
                              std::span<const MixtureComponent> mixture, MainlobeRootForm form) {
    double wsum = 0.0;
    for (const auto& c : mixture) wsum += c.weight;
    if (std::fabs(wsum - 1.0) > 1e-9)
        throw std::invalid_argument("heterogeneous_cumulant: mixture weights must sum to 1");
    double acc = 0.0;
    for (const auto& c : mixture)
        acc += c.weight * lobe_cumulant(lobe, n, geo, rad, c.net, c.ch, form);
    return acc;
}

double mgf_sidelobe(double eta, const Geometry& geo, const RadiometerParams& rad,
                    const NetworkParams& net, const ChannelParams& ch,
                    const QuadratureSpec& spec) {
    if (net.lambda_c_per_km2 == 0.0) return 1.0;  // empty process, any eta
    const auto [dmin_m, dmax_m] = distance_bounds(geo);
    const double om = omega_const(net, rad);
    const double ratio = geo.earth_radius_m / geo.sat_center_distance_m;
    // lambda_c per km^2 and x in km keep the x dx measure consistent.
    auto integrand = [&](double x_km) {
        return (1.0 - cluster_mgf(eta, x_km * 1e3, rad.g_sl, net.lambda_bs, ch, om, net.alpha)) *
               x_km;
    };
    const auto r = integrate(integrand, dmin_m * 1e-3, dmax_m * 1e-3, spec);
    return std::exp(-2.0 * M_PI * ratio * net.lambda_c_per_km2 * r.value);
}

double mgf_mainlobe(double eta, const Geometry& geo, const RadiometerParams& rad,
                    const NetworkParams& net, const ChannelParams& ch, MainlobeRootForm form) {
    if (net.lambda_c_per_km2 == 0.0) return 1.0;
    const double om = omega_const(net, rad);
    const double d_m = mainlobe_distance_m(geo, form);
    const double footprint_km2 = geo.footprint_side_km * geo.footprint_side_km;
    return std::exp(footprint_km2 * net.lambda_c_per_km2 *
                    (cluster_mgf(eta, d_m, rad.g_ml, net.lambda_bs, ch, om, net.alpha) - 1.0));
}

}  // namespace rfistat
