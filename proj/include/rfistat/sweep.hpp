#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rfistat/config.hpp"

namespace rfistat {

// One (alpha, lambda_bs, lobe) grid point. Analytic cells are always
// populated; empirical cells only after a Monte Carlo command.
struct SweepRow {
    double alpha = 0.0;
    double lambda_bs = 0.0;
    Lobe lobe = Lobe::side;
    LobeCumulants analytic;
    std::vector<SopBound> sop_bounds;  // one per tau in the sweep

    bool has_empirical = false;
    LobeSummary empirical;
    long rounds = 0;
};

struct SweepGrid {
    std::vector<double> tau_list;
    std::vector<SweepRow> rows;
};

struct SopRow {
    double alpha = 0.0;
    double lambda_bs = 0.0;
    double tau = 0.0;
    SopBound bound;
    SopEstimate estimate;
};

struct TradeoffRow {
    double lambda_bs = 0.0;
    double s_e_nats = 0.0;
    double t_p_nats_per_s = 0.0;
    double t_p_bits_per_s = 0.0;
    std::vector<SopBound> sop_bounds;  // one per tau
};

// Analytic statistics and Chebyshev bounds over the configured grid.
SweepGrid run_analytic(const ScenarioConfig& config);

// Same grid with empirical columns appended. rounds_override replaces
// config.sim.rounds when set.
SweepGrid run_montecarlo(const ScenarioConfig& config,
                         std::optional<long> rounds_override = std::nullopt);

// Side-lobe SOP study: analytic bound and Monte Carlo estimate per
// (alpha, lambda_bs, tau) cell.
std::vector<SopRow> run_sop(const ScenarioConfig& config,
                            std::optional<long> rounds_override = std::nullopt,
                            SopCenter center = SopCenter::analytic_mean);

// Spectral efficiency / sum throughput / SOP-bound trade-off over a
// lambda_bs ramp (0..1500 by default).
std::vector<TradeoffRow> run_tradeoff(const ScenarioConfig& config,
                                      const std::vector<double>& lambda_bs_grid = {});

// Serialization. CSV carries a schema comment line and unit-bearing column
// names; JSON mirrors the same fields.
std::string to_csv(const SweepGrid& grid);
std::string to_json(const SweepGrid& grid);
std::string to_csv(const std::vector<SopRow>& rows);
std::string to_json(const std::vector<SopRow>& rows);
std::string to_csv(const std::vector<TradeoffRow>& rows, const std::vector<double>& tau_list);
std::string to_json(const std::vector<TradeoffRow>& rows, const std::vector<double>& tau_list);

// Raw Monte Carlo sample dump (round,t_ml_k,t_sl_k).
std::string samples_to_csv(const std::vector<RfiSample>& samples);

}  // namespace rfistat
