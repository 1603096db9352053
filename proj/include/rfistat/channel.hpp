#pragma once

#include "rfistat/rng.hpp"

namespace rfistat {

// Shadowed Rician fading parameters. The line-of-sight amplitude is
// Nakagami-m with average power omega; the scatter component is complex
// Gaussian with average power 2*b0. omega = 0 or m = 0 degenerates to
// Rayleigh fading (|H|^2 exponential with mean 2*b0).
struct ChannelParams {
    double b0 = 0.158;
    double m = 0.739;
    double omega = 8.97e-4;

    bool is_rayleigh() const { return omega == 0.0 || m == 0.0; }
    void validate() const;
};

// MGF of |H|^2 at eta (the g*omega*x^-alpha scale factored out). Throws
// std::domain_error at or beyond the singularity.
double srf_mgf_gain(double eta, const ChannelParams& p);

// Largest eta for which srf_mgf_gain is finite.
double srf_mgf_gain_eta_sup(const ChannelParams& p);

// n-th raw moment a_n of |H|^2.
double srf_moment(int n, const ChannelParams& p);

// One draw of |H|^2 = |A e^{j phi} + W|^2: A^2 ~ Gamma(m, omega/m), phi
// uniform, W circular complex Gaussian with E|W|^2 = 2 b0.
double sample_gain_sq(RandomStream& rng, const ChannelParams& p);

// Sum of `count` i.i.d. |H|^2 draws in one shot via the conditional
// decomposition: sum A^2 ~ Gamma(m*count, omega/m), K ~ Poisson(sum A^2 /
// (2 b0)), sum |H|^2 ~ Gamma(count + K, 2 b0). Distribution-exact; used by
// the Monte Carlo engine when a cluster's base stations share one distance.
double sample_gain_sq_sum(RandomStream& rng, long count, const ChannelParams& p);

}  // namespace rfistat
