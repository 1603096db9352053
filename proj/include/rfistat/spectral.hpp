#pragma once

#include <memory>

#include "rfistat/geometry.hpp"
#include "rfistat/quadrature.hpp"

namespace rfistat {

// Intra-cluster downlink scenario: Poisson(lambda_bs) base stations and a
// user both Gaussian-scattered around the cluster center, nearest-BS
// association, Rayleigh fading, noise floor at noise_density over bandwidth.
struct IntraClusterParams {
    double lambda_bs = 150.0;
    double sigma_c_m = 4000.0;
    double p_tx_w = 20.0;
    double alpha_intra = 4.0;
    double noise_density_dbm_hz = -174.0;
    double bandwidth_hz = 24e6;
    double carrier_hz = 1.413e9;

    void validate() const;
};

double noise_power_w(const IntraClusterParams& p);

// Rayleigh pdf of the UE-to-cluster-center distance. Unit-agnostic: pass z
// and sigma in the same unit.
double ue_center_distance_pdf(double z, double sigma_c);

// Rician pdf/cdf of the distance between a randomly placed BS and a UE at
// distance z from the cluster center.
double bs_ue_distance_pdf(double r, double z, double sigma_c);
double bs_ue_distance_cdf(double r, double z, double sigma_c);

// Defective pdf of the serving (nearest) BS distance; total mass
// 1 - exp(-lambda_bs).
double serving_distance_pdf(double q, double z, double lambda_bs, double sigma_c);

// Laplace transforms of total received power P and interference I at the
// typical UE. Values in (0, 1].
double laplace_total_power(double s, const IntraClusterParams& p);
double laplace_interference(double s, const IntraClusterParams& p);

// Average spectral efficiency E[ln(1 + SINR)] in nats per channel use,
// through the Laplace-transform identity.
double spectral_efficiency(const IntraClusterParams& p, const QuadratureSpec& spec = {
                               .rel_tol = 1e-5, .abs_tol = 1e-9, .max_subdivisions = 300});

// Network sum rate beta * s_e * lambda_bs * lambda_c * cap_area, in the
// nats-based reporting convention; multiply by 1/ln 2 for bits/s.
double sum_throughput_nats(double s_e, const Geometry& geo, double lambda_bs,
                           double lambda_c_per_km2, double bandwidth_hz);

namespace detail {

// Precomputed quadrature tables for the nested Laplace transforms: the z, q
// and r nodes do not depend on s, so a sweep over s reuses them and each
// evaluation is pure arithmetic.
class LaplaceTables {
  public:
    explicit LaplaceTables(const IntraClusterParams& p);
    ~LaplaceTables();
    LaplaceTables(LaplaceTables&&) noexcept;

    double total_power(double s) const;
    double interference(double s) const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace detail

}  // namespace rfistat
