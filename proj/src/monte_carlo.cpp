#include "rfistat/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "rfistat/rng.hpp"

namespace rfistat {

namespace {

// Substream tags; combined with (round, cluster) they address every draw.
enum StreamTag : std::uint64_t {
    kSideCount = 1,
    kSideGeo = 2,
    kSideGain = 3,
    kMainCount = 4,
    kMainGeo = 5,
    kMainGain = 6,
};

constexpr double kOmegaSiToKm = 1e-6;

struct Scene {
    double re_km, h_km, chord_a, chord_b;  // x^2 = chord_a - chord_b * cos(theta)
    double cos_cap;                        // r_e / h
    double lambda_side;                    // expected clusters on the cap
    double lambda_main;                    // expected clusters in the footprint
    double lambda_bs, alpha, sigma_km;
    double scale_sl, scale_ml;             // g * omega_km
    double cos_ml, dml_km;
};

Scene make_scene(const Geometry& geo, const RadiometerParams& rad, const NetworkParams& net,
                 MainlobeRootForm form) {
    Scene s;
    s.re_km = geo.earth_radius_m * 1e-3;
    s.h_km = geo.sat_center_distance_m * 1e-3;
    s.chord_a = s.re_km * s.re_km + s.h_km * s.h_km;
    s.chord_b = 2.0 * s.re_km * s.h_km;
    s.cos_cap = s.re_km / s.h_km;
    s.lambda_side = exposed_cap_area_m2(geo) * 1e-6 * net.lambda_c_per_km2;
    s.lambda_main = expected_mainlobe_clusters(geo, net.lambda_c_per_km2);
    s.lambda_bs = net.lambda_bs;
    s.alpha = net.alpha;
    s.sigma_km = net.sigma_c_m * 1e-3;
    const double om_km = omega_const(net, rad) * kOmegaSiToKm;
    s.scale_sl = rad.g_sl * om_km;
    s.scale_ml = rad.g_ml * om_km;
    s.dml_km = mainlobe_distance_m(geo, form) * 1e-3;
    s.cos_ml = (s.chord_a - s.dml_km * s.dml_km) / s.chord_b;
    return s;
}

// Sum of per-BS gain * x^-alpha for one cluster whose center sits at
// cos(theta) = cos_c, with every BS displaced by a Rayleigh(sigma) arc in a
// uniform tangent direction.
double cluster_offset_sum(RandomStream& geo_rng, RandomStream& gain_rng, long n_bs,
                          const Scene& s, const ChannelParams& ch, double cos_c) {
    const double sin_c = std::sqrt(std::max(0.0, 1.0 - cos_c * cos_c));
    double acc = 0.0;
    for (long j = 0; j < n_bs; ++j) {
        const double g2 = sample_gain_sq(gain_rng, ch);
        const double r_km = s.sigma_km * std::sqrt(-2.0 * std::log(geo_rng.uniform_pos()));
        const double cpsi = std::cos(2.0 * M_PI * geo_rng.uniform());
        const double phi = r_km / s.re_km;  // geodesic displacement angle
        const double cos_b = cos_c * std::cos(phi) + sin_c * std::sin(phi) * cpsi;
        const double x2 = s.chord_a - s.chord_b * cos_b;
        acc += g2 * std::exp(-0.5 * s.alpha * std::log(x2));
    }
    return acc;
}

double side_lobe_round(const Scene& s, const ChannelParams& ch, const SimControls& controls,
                       std::uint64_t round, long* cluster_count = nullptr) {
    auto count_rng = substream(controls.seed, kSideCount, round);
    const long m = sample_poisson(count_rng, s.lambda_side);
    if (cluster_count) *cluster_count = m;
    double total = 0.0;
    for (long c = 0; c < m; ++c) {
        auto geo_rng = substream(controls.seed, kSideGeo, round, static_cast<std::uint64_t>(c));
        const double cos_t = s.cos_cap + (1.0 - s.cos_cap) * geo_rng.uniform();
        const long n = sample_poisson(geo_rng, s.lambda_bs);
        if (n == 0) continue;
        auto gain_rng = substream(controls.seed, kSideGain, round, static_cast<std::uint64_t>(c));
        if (controls.bs_offsets_enabled) {
            total += s.scale_sl * cluster_offset_sum(geo_rng, gain_rng, n, s, ch, cos_t);
        } else {
            const double x2 = s.chord_a - s.chord_b * cos_t;
            const double sum = sample_gain_sq_sum(gain_rng, n, ch);
            total += s.scale_sl * sum * std::exp(-0.5 * s.alpha * std::log(x2));
        }
    }
    return total;
}

double main_lobe_round(const Scene& s, const ChannelParams& ch, const SimControls& controls,
                       std::uint64_t round) {
    auto count_rng = substream(controls.seed, kMainCount, round);
    const long m = sample_poisson(count_rng, s.lambda_main);
    double total = 0.0;
    const double dml_pow = std::pow(s.dml_km, -s.alpha);
    for (long c = 0; c < m; ++c) {
        auto geo_rng = substream(controls.seed, kMainGeo, round, static_cast<std::uint64_t>(c));
        const long n = sample_poisson(geo_rng, s.lambda_bs);
        if (n == 0) continue;
        auto gain_rng = substream(controls.seed, kMainGain, round, static_cast<std::uint64_t>(c));
        if (controls.bs_offsets_enabled) {
            total += s.scale_ml * cluster_offset_sum(geo_rng, gain_rng, n, s, ch, s.cos_ml);
        } else {
            total += s.scale_ml * sample_gain_sq_sum(gain_rng, n, ch) * dml_pow;
        }
    }
    return total;
}

// One-pass central moment accumulation with Pebay's pairwise merge, so block
// results combine in a fixed order regardless of thread scheduling.
struct MomentAccum {
    long n = 0;
    double mean = 0.0, m2 = 0.0, m3 = 0.0, m4 = 0.0;

    void add(double x) {
        const double n1 = static_cast<double>(n);
        ++n;
        const double nn = static_cast<double>(n);
        const double delta = x - mean;
        const double dn = delta / nn;
        const double dn2 = dn * dn;
        const double t1 = delta * dn * n1;
        mean += dn;
        m4 += t1 * dn2 * (nn * nn - 3.0 * nn + 3.0) + 6.0 * dn2 * m2 - 4.0 * dn * m3;
        m3 += t1 * dn * (nn - 2.0) - 3.0 * dn * m2;
        m2 += t1;
    }

    void merge(const MomentAccum& o) {
        if (o.n == 0) return;
        if (n == 0) {
            *this = o;
            return;
        }
        const double na = static_cast<double>(n), nb = static_cast<double>(o.n);
        const double nt = na + nb;
        const double d = o.mean - mean;
        const double d2 = d * d;
        const double m2t = m2 + o.m2 + d2 * na * nb / nt;
        const double m3t = m3 + o.m3 + d2 * d * na * nb * (na - nb) / (nt * nt) +
                           3.0 * d * (na * o.m2 - nb * m2) / nt;
        const double m4t =
            m4 + o.m4 +
            d2 * d2 * na * nb * (na * na - na * nb + nb * nb) / (nt * nt * nt) +
            6.0 * d2 * (na * na * o.m2 + nb * nb * m2) / (nt * nt) +
            4.0 * d * (na * o.m3 - nb * m3) / nt;
        mean = (na * mean + nb * o.mean) / nt;
        m2 = m2t;
        m3 = m3t;
        m4 = m4t;
        n += o.n;
    }

    LobeSummary summary() const {
        LobeSummary out;
        out.rounds = n;
        out.mean_k = mean;
        if (n > 1) {
            const double nn = static_cast<double>(n);
            const double var = m2 / (nn - 1.0);
            out.std_k = std::sqrt(var);
            out.stderr_mean_k = out.std_k / std::sqrt(nn);
            out.mu4_k4 = m4 / nn;
            const double kurt = (m2 > 0.0) ? nn * m4 / (m2 * m2) : 3.0;
            out.stderr_std_k = out.std_k * std::sqrt(std::max(kurt - 1.0, 0.0) / (4.0 * nn));
        }
        return out;
    }
};

struct BlockResult {
    MomentAccum main, side;
    long cluster_sum = 0;
};

constexpr long kBlockRounds = 256;

template <class RoundFn>
std::vector<BlockResult> run_blocks(long rounds, int workers, const RoundFn& fn) {
    const long blocks = (rounds + kBlockRounds - 1) / kBlockRounds;
    std::vector<BlockResult> results(static_cast<std::size_t>(blocks));
    std::atomic<long> next{0};
    std::exception_ptr first_error = nullptr;
    std::mutex err_mutex;

    auto work = [&] {
        for (;;) {
            const long b = next.fetch_add(1);
            if (b >= blocks) return;
            const long lo = b * kBlockRounds;
            const long hi = std::min(rounds, lo + kBlockRounds);
            try {
                fn(lo, hi, results[static_cast<std::size_t>(b)]);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };

    const int nthreads = std::max(1, workers);
    if (nthreads == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(nthreads));
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);
    return results;
}

}  // namespace

void SimControls::validate() const {
    if (rounds < 1) throw std::invalid_argument("sim.rounds: must be >= 1");
    if (workers < 1) throw std::invalid_argument("sim.workers: must be >= 1");
}

RfiSample run_round(const Geometry& geo, const RadiometerParams& rad, const NetworkParams& net,
                    const ChannelParams& ch, const SimControls& controls,
                    std::uint64_t round_index, MainlobeRootForm form) {
    const Scene s = make_scene(geo, rad, net, form);
    RfiSample out;
    out.t_sl_k = side_lobe_round(s, ch, controls, round_index);
    out.t_ml_k = main_lobe_round(s, ch, controls, round_index);
    return out;
}

SimSummary simulate(const Geometry& geo, const RadiometerParams& rad, const NetworkParams& net,
                    const ChannelParams& ch, const SimControls& controls, LobeSelect select,
                    std::vector<RfiSample>* dump, MainlobeRootForm form) {
    geo.validate();
    rad.validate();
    net.validate();
    ch.validate();
    controls.validate();
    const Scene s = make_scene(geo, rad, net, form);
    const bool do_main = select != LobeSelect::side_only;
    const bool do_side = select != LobeSelect::main_only;
    if (dump) dump->assign(static_cast<std::size_t>(controls.rounds), RfiSample{});

    auto round_fn = [&](long lo, long hi, BlockResult& res) {
        for (long r = lo; r < hi; ++r) {
            RfiSample sample;
            if (do_side) {
                long clusters = 0;
                sample.t_sl_k = side_lobe_round(s, ch, controls, static_cast<std::uint64_t>(r),
                                                &clusters);
                res.cluster_sum += clusters;
                res.side.add(sample.t_sl_k);
            }
            if (do_main) {
                sample.t_ml_k = main_lobe_round(s, ch, controls, static_cast<std::uint64_t>(r));
                res.main.add(sample.t_ml_k);
            }
            if (dump) (*dump)[static_cast<std::size_t>(r)] = sample;
        }
    };

    const auto blocks = run_blocks(controls.rounds, controls.workers, round_fn);
    MomentAccum main_acc, side_acc;
    long cluster_sum = 0;
    for (const auto& b : blocks) {
        main_acc.merge(b.main);
        side_acc.merge(b.side);
        cluster_sum += b.cluster_sum;
    }
    SimSummary out;
    out.main = main_acc.summary();
    out.side = side_acc.summary();
    out.mean_cluster_count =
        do_side ? static_cast<double>(cluster_sum) / static_cast<double>(controls.rounds) : 0.0;
    return out;
}

SopEstimate estimate_sop(const Geometry& geo, const RadiometerParams& rad,
                         const NetworkParams& net, const ChannelParams& ch,
                         const SimControls& controls, double tau_k, SopCenter center) {
    if (!(tau_k > 0.0)) throw std::domain_error("estimate_sop: requires tau > 0");
    std::vector<RfiSample> samples;
    const SimSummary summary =
        simulate(geo, rad, net, ch, controls, LobeSelect::side_only, &samples);

    SopEstimate out;
    out.rounds = controls.rounds;
    out.center_k = (center == SopCenter::analytic_mean)
                       ? lobe_stats(Lobe::side, geo, rad, net, ch).mean_k
                       : summary.side.mean_k;
    for (const auto& s : samples)
        if (std::fabs(s.t_sl_k - out.center_k) > tau_k) ++out.exceed_count;
    out.p_hat = static_cast<double>(out.exceed_count) / static_cast<double>(out.rounds);
    std::tie(out.wilson_lo, out.wilson_hi) = wilson_interval(out.exceed_count, out.rounds);
    return out;
}

std::pair<double, double> wilson_interval(long k, long n, double z) {
    if (n <= 0) return {0.0, 1.0};
    const double p = static_cast<double>(k) / static_cast<double>(n);
    const double nn = static_cast<double>(n);
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double mid = p + z2 / (2.0 * nn);
    const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn));
    return {std::max(0.0, (mid - half) / denom), std::min(1.0, (mid + half) / denom)};
}

}  // namespace rfistat
