#pragma once

#include <array>
#include <span>

#include "rfistat/channel.hpp"
#include "rfistat/geometry.hpp"
#include "rfistat/quadrature.hpp"

namespace rfistat {

enum class Lobe { main, side };

struct RadiometerParams {
    double g_ml = 1.0;     // main-lobe gain, linear (0 dB)
    double g_sl = 1e-5;    // side-lobe gain, linear (-50 dB)
    double bandwidth_hz = 24e6;
    double center_freq_hz = 1.413e9;
    double beamwidth_half_deg = 1.2;  // |deviation| threshold between lobes

    void validate() const;
};

struct NetworkParams {
    double lambda_c_per_km2 = 1e-4;  // cluster density
    double lambda_bs = 800.0;        // mean base stations per cluster
    double p_tx_w = 20.0;            // per-BS transmit power
    double alpha = 2.1;              // Earth-space path loss exponent
    double sigma_c_m = 4000.0;       // cluster scale

    void validate() const;
};

struct LobeCumulants {
    Lobe lobe = Lobe::side;
    std::array<double, 4> k{};  // k1..k4 in Kelvin^n
    double mean_k = 0.0;
    double var_k2 = 0.0;
    double std_k = 0.0;
    double mu4_k4 = 0.0;  // k4 + 3 k2^2
};

struct SopBound {
    double raw;      // min(mu2/tau^2, mu4/tau^4), may exceed 1
    double bounded;  // clamped to [0, 1]
};

// Radiometric constant omega = p_tx / (2 k_b beta) * (c / (4 pi f))^2 in SI
// (Kelvin times m^2 of aperture-equivalent area). The per-polarization 1/2
// lives here. Path-loss kernels downstream anchor x^-alpha at a 1 km
// reference distance, i.e. they use omega * 1e-6 with distances in km.
double omega_const(const NetworkParams& net, const RadiometerParams& rad);

// Per-cluster MGF series coefficients p_n, Rayleigh and shadowed-Rician.
// p0 = 1 in both families.
double p_n_rayleigh(int n, double lambda_bs, const ChannelParams& p);
double p_n_srf(int n, double lambda_bs, const ChannelParams& p);
double p_n(int n, double lambda_bs, const ChannelParams& p);

// MGF of the RFI brightness temperature contributed by one cluster whose
// base stations sit at distance x_m with antenna gain `gain`:
// exp(lambda_bs * (M_BS(eta) - 1)).
double cluster_mgf(double eta, double x_m, double gain, double lambda_bs,
                   const ChannelParams& ch, double omega_si, double alpha);

// n-th cumulant (n in 1..4) of the aggregate RFI brightness temperature on
// one lobe, Kelvin^n.
double lobe_cumulant(Lobe lobe, int n, const Geometry& geo, const RadiometerParams& rad,
                     const NetworkParams& net, const ChannelParams& ch,
                     MainlobeRootForm form = MainlobeRootForm::cosine);

LobeCumulants lobe_stats(Lobe lobe, const Geometry& geo, const RadiometerParams& rad,
                         const NetworkParams& net, const ChannelParams& ch,
                         MainlobeRootForm form = MainlobeRootForm::cosine);

// Chebyshev bound on P(|T - E[T]| > tau) using the smaller of the
// second- and fourth-moment bounds.
SopBound sop_upper_bound(const LobeCumulants& stats, double tau_k);

// Corrected measurement: measured minus the expected side-lobe RFI.
double mitigate(double measured_k, double expected_sl_k);

struct MixtureComponent {
    double weight;
    NetworkParams net;
    ChannelParams ch;
};

// Cumulant averaged over a discrete parameter mixture; weights must sum to 1.
double heterogeneous_cumulant(Lobe lobe, int n, const Geometry& geo,
                              const RadiometerParams& rad,
                              std::span<const MixtureComponent> mixture,
                              MainlobeRootForm form = MainlobeRootForm::cosine);

// Aggregate MGFs. The side lobe integrates the cluster MGF over the exposed
// cap by quadrature; the main lobe is closed-form.
double mgf_sidelobe(double eta, const Geometry& geo, const RadiometerParams& rad,
                    const NetworkParams& net, const ChannelParams& ch,
                    const QuadratureSpec& spec = {});
double mgf_mainlobe(double eta, const Geometry& geo, const RadiometerParams& rad,
                    const NetworkParams& net, const ChannelParams& ch,
                    MainlobeRootForm form = MainlobeRootForm::cosine);

}  // namespace rfistat
