#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "rfistat/rfi_cumulants.hpp"

namespace rfistat {

struct SimControls {
    long rounds = 10000;
    std::uint64_t seed = 1;
    // Place each base station at a Rayleigh(sigma_c) tangent offset from its
    // cluster center (reprojected to the sphere) instead of collapsing the
    // cluster to its center. The collapsed mode matches the analytic model
    // and is orders of magnitude faster; the offset mode is the
    // full-fidelity oracle.
    bool bs_offsets_enabled = false;
    int workers = 1;

    void validate() const;
};

struct RfiSample {
    double t_ml_k = 0.0;
    double t_sl_k = 0.0;
};

enum class LobeSelect { both, main_only, side_only };
enum class SopCenter { analytic_mean, empirical_mean };

struct LobeSummary {
    long rounds = 0;
    double mean_k = 0.0;
    double stderr_mean_k = 0.0;
    double std_k = 0.0;        // sample standard deviation across rounds
    double stderr_std_k = 0.0;
    double mu4_k4 = 0.0;       // fourth central moment across rounds
};

struct SimSummary {
    LobeSummary main;
    LobeSummary side;
    double mean_cluster_count = 0.0;  // side-lobe parent process, per round
};

// One Monte Carlo realization. Substreams are derived from
// (controls.seed, round_index, cluster), so any round can be generated
// independently and results do not depend on worker count.
RfiSample run_round(const Geometry& geo, const RadiometerParams& rad, const NetworkParams& net,
                    const ChannelParams& ch, const SimControls& controls,
                    std::uint64_t round_index,
                    MainlobeRootForm form = MainlobeRootForm::cosine);

// Aggregate statistics over controls.rounds realizations. Deterministic for
// a given seed and bit-identical across worker counts. `dump`, when
// non-null, receives every per-round sample in round order.
SimSummary simulate(const Geometry& geo, const RadiometerParams& rad, const NetworkParams& net,
                    const ChannelParams& ch, const SimControls& controls,
                    LobeSelect select = LobeSelect::both,
                    std::vector<RfiSample>* dump = nullptr,
                    MainlobeRootForm form = MainlobeRootForm::cosine);

struct SopEstimate {
    double p_hat = 0.0;
    double wilson_lo = 0.0;   // 95% Wilson interval
    double wilson_hi = 0.0;
    long exceed_count = 0;
    long rounds = 0;
    double center_k = 0.0;    // mitigation center actually used
};

// Empirical sensing outage probability: fraction of rounds whose side-lobe
// RFI deviates from the mitigation center by more than tau.
SopEstimate estimate_sop(const Geometry& geo, const RadiometerParams& rad,
                         const NetworkParams& net, const ChannelParams& ch,
                         const SimControls& controls, double tau_k,
                         SopCenter center = SopCenter::analytic_mean);

// Wilson score interval for k successes in n trials at normal quantile z.
std::pair<double, double> wilson_interval(long k, long n, double z = 1.959963984540054);

}  // namespace rfistat
