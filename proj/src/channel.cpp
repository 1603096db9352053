#include "rfistat/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "rfistat/special.hpp"

namespace rfistat {

void ChannelParams::validate() const {
    if (!(b0 > 0.0)) throw std::invalid_argument("channel.b0: must be > 0");
    if (!(m >= 0.0)) throw std::invalid_argument("channel.m: must be >= 0");
    if (!(omega >= 0.0)) throw std::invalid_argument("channel.omega: must be >= 0");
}

double srf_mgf_gain_eta_sup(const ChannelParams& p) {
    const double tb = 2.0 * p.b0;
    if (p.is_rayleigh()) return 1.0 / tb;
    // (2b0m + omega)(1 - 2b0 eta) > omega binds before 2b0 eta < 1
    return p.m / (tb * p.m + p.omega);
}

double srf_mgf_gain(double eta, const ChannelParams& p) {
    const double tb = 2.0 * p.b0;
    const double one_minus = 1.0 - tb * eta;
    if (p.is_rayleigh()) {
        if (one_minus <= 0.0)
            throw std::domain_error("srf_mgf_gain: eta at or beyond 1/(2 b0) singularity");
        return 1.0 / one_minus;
    }
    const double tbm = tb * p.m;
    const double denom = (tbm + p.omega) * one_minus - p.omega;
    if (one_minus <= 0.0 || denom <= 0.0)
        throw std::domain_error("srf_mgf_gain: eta at or beyond the MGF singularity");
    return std::pow(tbm, p.m) * std::pow(one_minus, p.m - 1.0) / std::pow(denom, p.m);
}

double srf_moment(int n, const ChannelParams& p) {
    if (n < 0) throw std::domain_error("srf_moment: requires n >= 0");
    if (n == 0) return 1.0;
    const double tb = 2.0 * p.b0;
    if (p.is_rayleigh()) {
        // exponential moments: (2 b0)^n n!
        return std::pow(tb, n) * special::gamma_fn(n + 1.0);
    }
    const double tbm = tb * p.m;
    const double x = p.omega / (tbm + p.omega);
    return std::pow(tbm / (tbm + p.omega), p.m) * std::pow(tb, n) *
           special::gamma_fn(n + 1.0) * special::gauss_2f1(p.m, n + 1.0, 1.0, x);
}

double sample_gain_sq(RandomStream& rng, const ChannelParams& p) {
    const double tb = 2.0 * p.b0;
    if (p.is_rayleigh()) return sample_exponential(rng, tb);
    const double a = std::sqrt(sample_gamma(rng, p.m, p.omega / p.m));
    const double phi = 2.0 * M_PI * rng.uniform();
    const double s = std::sqrt(p.b0);
    const double re = a * std::cos(phi) + s * sample_normal(rng);
    const double im = a * std::sin(phi) + s * sample_normal(rng);
    return re * re + im * im;
}

double sample_gain_sq_sum(RandomStream& rng, long count, const ChannelParams& p) {
    if (count <= 0) return 0.0;
    const double tb = 2.0 * p.b0;
    if (p.is_rayleigh()) return sample_gamma(rng, static_cast<double>(count), tb);
    const double sum_a2 = sample_gamma(rng, p.m * static_cast<double>(count), p.omega / p.m);
    const long k = sample_poisson(rng, sum_a2 / tb);
    return sample_gamma(rng, static_cast<double>(count + k), tb);
}

}  // namespace rfistat
