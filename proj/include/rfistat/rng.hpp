#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace rfistat {

// Small-state counter-seedable generator so that every Monte Carlo round and
// cluster can own an independent, cheaply constructed stream. xoshiro256++
// (Blackman & Vigna, public domain) seeded through SplitMix64.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
};

class RandomStream {
  public:
    RandomStream() : RandomStream(0x853c49e6748fea9bull) {}

    explicit RandomStream(std::uint64_t seed) {
        SplitMix64 sm(seed);
        for (auto& w : s_) w = sm.next();
        if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform on [0,1), 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform on (0,1]; safe under log().
    double uniform_pos() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4];
};

// Deterministic substream addressing: (master seed, up to three ids) -> stream.
// Worker count never enters, so parallel sweeps reproduce bit-identically.
inline RandomStream substream(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0,
                              std::uint64_t c = 0) {
    SplitMix64 sm(master);
    std::uint64_t k = sm.next();
    k ^= (a + 0x9e3779b97f4a7c15ull) * 0xff51afd7ed558ccdull;
    k = (k ^ (k >> 33)) * 0xc4ceb9fe1a85ec53ull;
    k ^= (b + 0x632be59bd9b4e019ull) * 0xff51afd7ed558ccdull;
    k = (k ^ (k >> 29)) * 0xc4ceb9fe1a85ec53ull;
    k ^= (c + 0x9e3779b97f4a7c15ull);
    return RandomStream(k ^ (k >> 32));
}

inline double sample_exponential(RandomStream& rng, double mean) {
    return -mean * std::log(rng.uniform_pos());
}

// Marsaglia polar method; the spare deviate is discarded to keep the draw
// count per call fixed.
inline double sample_normal(RandomStream& rng) {
    for (;;) {
        const double u = 2.0 * rng.uniform() - 1.0;
        const double v = 2.0 * rng.uniform() - 1.0;
        const double s = u * u + v * v;
        if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
    }
}

// Marsaglia-Tsang squeeze for shape >= 1, boosted for shape < 1.
inline double sample_gamma(RandomStream& rng, double shape, double scale) {
    if (shape < 1.0) {
        const double u = rng.uniform_pos();
        return sample_gamma(rng, shape + 1.0, scale) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = sample_normal(rng);
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform_pos();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v * scale;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v * scale;
    }
}

namespace detail {

inline double log_factorial(std::uint64_t k) {
    static constexpr int kTable = 4096;
    static const auto table = [] {
        struct T {
            double v[kTable];
        } t{};
        t.v[0] = 0.0;
        for (int i = 1; i < kTable; ++i) t.v[i] = t.v[i - 1] + std::log(static_cast<double>(i));
        return t;
    }();
    if (k < kTable) return table.v[k];
    return std::lgamma(static_cast<double>(k) + 1.0);
}

// Hoermann's PTRS transformed rejection, exact for mu >= 10.
inline long poisson_ptrs(RandomStream& rng, double mu) {
    const double slam = std::sqrt(mu);
    const double loglam = std::log(mu);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double vr = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
        const double u = rng.uniform() - 0.5;
        const double v = rng.uniform_pos();
        const double us = 0.5 - std::fabs(u);
        const double k = std::floor((2.0 * a / us + b) * u + mu + 0.43);
        if (us >= 0.07 && v <= vr) return static_cast<long>(k);
        if (k < 0.0 || (us < 0.013 && v > us)) continue;
        const double lhs = std::log(v * inv_alpha / (a / (us * us) + b));
        const double rhs = -mu + k * loglam - log_factorial(static_cast<std::uint64_t>(k));
        if (lhs <= rhs) return static_cast<long>(k);
    }
}

}  // namespace detail

inline long sample_poisson(RandomStream& rng, double mean) {
    if (mean <= 0.0) return 0;
    if (mean < 10.0) {
        const double limit = std::exp(-mean);
        long k = 0;
        double prod = rng.uniform();
        while (prod > limit) {
            ++k;
            prod *= rng.uniform();
        }
        return k;
    }
    return detail::poisson_ptrs(rng, mean);
}

}  // namespace rfistat
