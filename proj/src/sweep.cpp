#include "rfistat/sweep.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace rfistat {

namespace {

using nlohmann::json;

const char* lobe_name(Lobe l) { return l == Lobe::main ? "main" : "side"; }

void check_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw std::runtime_error(std::string("non-finite cell: ") + what);
}

SweepRow analytic_row(const ScenarioConfig& c, double alpha, double lambda_bs, Lobe lobe) {
    NetworkParams net = c.network;
    net.alpha = alpha;
    net.lambda_bs = lambda_bs;
    SweepRow row;
    row.alpha = alpha;
    row.lambda_bs = lambda_bs;
    row.lobe = lobe;
    row.analytic = lobe_stats(lobe, c.geometry, c.radiometer, net, c.channel, c.mainlobe_form);
    for (double tau : c.sweep.tau_list)
        row.sop_bounds.push_back(sop_upper_bound(row.analytic, tau));
    check_finite(row.analytic.mean_k, "analytic mean");
    check_finite(row.analytic.mu4_k4, "analytic mu4");
    return row;
}

}  // namespace

SweepGrid run_analytic(const ScenarioConfig& config) {
    config.validate();
    SweepGrid grid;
    grid.tau_list = config.sweep.tau_list;
    for (double lambda_bs : config.sweep.lambda_bs_list)
        for (double alpha : config.sweep.alpha_list)
            for (Lobe lobe : {Lobe::main, Lobe::side})
                grid.rows.push_back(analytic_row(config, alpha, lambda_bs, lobe));
    return grid;
}

SweepGrid run_montecarlo(const ScenarioConfig& config, std::optional<long> rounds_override) {
    SweepGrid grid = run_analytic(config);
    SimControls controls = config.sim;
    if (rounds_override) controls.rounds = *rounds_override;
    for (auto& row : grid.rows) {
        NetworkParams net = config.network;
        net.alpha = row.alpha;
        net.lambda_bs = row.lambda_bs;
        const LobeSelect select =
            row.lobe == Lobe::main ? LobeSelect::main_only : LobeSelect::side_only;
        const SimSummary summary =
            simulate(config.geometry, config.radiometer, net, config.channel, controls, select,
                     nullptr, config.mainlobe_form);
        row.empirical = row.lobe == Lobe::main ? summary.main : summary.side;
        row.has_empirical = true;
        row.rounds = controls.rounds;
    }
    return grid;
}

std::vector<SopRow> run_sop(const ScenarioConfig& config, std::optional<long> rounds_override,
                            SopCenter center) {
    config.validate();
    SimControls controls = config.sim;
    controls.rounds = rounds_override.value_or(20000);
    std::vector<SopRow> out;
    for (double lambda_bs : config.sweep.lambda_bs_list) {
        for (double alpha : config.sweep.alpha_list) {
            NetworkParams net = config.network;
            net.alpha = alpha;
            net.lambda_bs = lambda_bs;
            const LobeCumulants stats =
                lobe_stats(Lobe::side, config.geometry, config.radiometer, net, config.channel,
                           config.mainlobe_form);
            for (double tau : config.sweep.tau_list) {
                SopRow row;
                row.alpha = alpha;
                row.lambda_bs = lambda_bs;
                row.tau = tau;
                row.bound = sop_upper_bound(stats, tau);
                row.estimate = estimate_sop(config.geometry, config.radiometer, net,
                                            config.channel, controls, tau, center);
                out.push_back(row);
            }
        }
    }
    return out;
}

std::vector<TradeoffRow> run_tradeoff(const ScenarioConfig& config,
                                      const std::vector<double>& lambda_bs_grid) {
    config.validate();
    std::vector<double> grid = lambda_bs_grid;
    if (grid.empty())
        grid = {0,  10,  25,  50,  75,  100, 150, 200,
                300, 500, 750, 1000, 1250, 1500};
    std::vector<TradeoffRow> out;
    for (double lambda_bs : grid) {
        TradeoffRow row;
        row.lambda_bs = lambda_bs;
        IntraClusterParams intra = config.intra;
        intra.lambda_bs = lambda_bs;
        row.s_e_nats = spectral_efficiency(intra);
        row.t_p_nats_per_s =
            sum_throughput_nats(row.s_e_nats, config.geometry, lambda_bs,
                                config.network.lambda_c_per_km2, config.radiometer.bandwidth_hz);
        row.t_p_bits_per_s = row.t_p_nats_per_s / std::log(2.0);
        NetworkParams net = config.network;
        net.lambda_bs = lambda_bs;
        if (lambda_bs == 0.0) {
            for (double tau : config.sweep.tau_list) {
                (void)tau;
                row.sop_bounds.push_back(SopBound{0.0, 0.0});
            }
        } else {
            const LobeCumulants stats =
                lobe_stats(Lobe::side, config.geometry, config.radiometer, net, config.channel,
                           config.mainlobe_form);
            for (double tau : config.sweep.tau_list)
                row.sop_bounds.push_back(sop_upper_bound(stats, tau));
        }
        out.push_back(row);
    }
    return out;
}

namespace {

std::string tau_suffix(double tau) {
    std::string s = format_double(tau);
    for (auto& ch : s)
        if (ch == '.') ch = 'p';
    return s;
}

}  // namespace

std::string to_csv(const SweepGrid& grid) {
    std::string out = "# rfistat sweep schema v1; units: K (kelvin), K2, K3, K4 = kelvin^n\n";
    out += "alpha,lambda_bs,lobe,k1_K,k2_K2,k3_K3,k4_K4,mean_K,std_K,mu4_K4";
    for (double tau : grid.tau_list)
        out += ",sop_bound_raw_tau" + tau_suffix(tau) + ",sop_bound_tau" + tau_suffix(tau);
    bool emp = !grid.rows.empty() && grid.rows.front().has_empirical;
    if (emp) out += ",emp_mean_K,emp_mean_stderr_K,emp_std_K,emp_std_stderr_K,emp_mu4_K4,rounds";
    out += "\n";
    for (const auto& r : grid.rows) {
        out += format_double(r.alpha) + "," + format_double(r.lambda_bs) + "," +
               lobe_name(r.lobe);
        for (double k : r.analytic.k) out += "," + format_double(k);
        out += "," + format_double(r.analytic.mean_k) + "," + format_double(r.analytic.std_k) +
               "," + format_double(r.analytic.mu4_k4);
        for (const auto& b : r.sop_bounds)
            out += "," + format_double(b.raw) + "," + format_double(b.bounded);
        if (r.has_empirical) {
            out += "," + format_double(r.empirical.mean_k) + "," +
                   format_double(r.empirical.stderr_mean_k) + "," +
                   format_double(r.empirical.std_k) + "," +
                   format_double(r.empirical.stderr_std_k) + "," +
                   format_double(r.empirical.mu4_k4) + "," + std::to_string(r.rounds);
        }
        out += "\n";
    }
    return out;
}

std::string to_json(const SweepGrid& grid) {
    json rows = json::array();
    for (const auto& r : grid.rows) {
        json jr{{"alpha", r.alpha},
                {"lambda_bs", r.lambda_bs},
                {"lobe", lobe_name(r.lobe)},
                {"k_K", {r.analytic.k[0], r.analytic.k[1], r.analytic.k[2], r.analytic.k[3]}},
                {"mean_K", r.analytic.mean_k},
                {"std_K", r.analytic.std_k},
                {"mu4_K4", r.analytic.mu4_k4}};
        json bounds = json::array();
        for (std::size_t i = 0; i < r.sop_bounds.size(); ++i)
            bounds.push_back({{"tau_K", grid.tau_list[i]},
                              {"raw", r.sop_bounds[i].raw},
                              {"bounded", r.sop_bounds[i].bounded}});
        jr["sop_bounds"] = bounds;
        if (r.has_empirical) {
            jr["empirical"] = {{"mean_K", r.empirical.mean_k},
                               {"mean_stderr_K", r.empirical.stderr_mean_k},
                               {"std_K", r.empirical.std_k},
                               {"std_stderr_K", r.empirical.stderr_std_k},
                               {"mu4_K4", r.empirical.mu4_k4},
                               {"rounds", r.rounds}};
        }
        rows.push_back(jr);
    }
    json doc{{"schema", "rfistat sweep v1"}, {"rows", rows}};
    return doc.dump(2) + "\n";
}

std::string to_csv(const std::vector<SopRow>& rows) {
    std::string out = "# rfistat sop schema v1; probabilities dimensionless, tau/center in K\n";
    out +=
        "alpha,lambda_bs,tau_K,center_K,sop_bound_raw,sop_bound,sop_emp,sop_emp_wilson95_lo,"
        "sop_emp_wilson95_hi,exceed_count,rounds\n";
    for (const auto& r : rows) {
        out += format_double(r.alpha) + "," + format_double(r.lambda_bs) + "," +
               format_double(r.tau) + "," + format_double(r.estimate.center_k) + "," +
               format_double(r.bound.raw) + "," + format_double(r.bound.bounded) + "," +
               format_double(r.estimate.p_hat) + "," + format_double(r.estimate.wilson_lo) +
               "," + format_double(r.estimate.wilson_hi) + "," +
               std::to_string(r.estimate.exceed_count) + "," +
               std::to_string(r.estimate.rounds) + "\n";
    }
    return out;
}

std::string to_json(const std::vector<SopRow>& rows) {
    json arr = json::array();
    for (const auto& r : rows)
        arr.push_back({{"alpha", r.alpha},
                       {"lambda_bs", r.lambda_bs},
                       {"tau_K", r.tau},
                       {"center_K", r.estimate.center_k},
                       {"sop_bound_raw", r.bound.raw},
                       {"sop_bound", r.bound.bounded},
                       {"sop_emp", r.estimate.p_hat},
                       {"wilson95", {r.estimate.wilson_lo, r.estimate.wilson_hi}},
                       {"exceed_count", r.estimate.exceed_count},
                       {"rounds", r.estimate.rounds}});
    json doc{{"schema", "rfistat sop v1"}, {"rows", arr}};
    return doc.dump(2) + "\n";
}

std::string to_csv(const std::vector<TradeoffRow>& rows, const std::vector<double>& tau_list) {
    std::string out =
        "# rfistat tradeoff schema v1; s_e in nats per channel use, t_p in the "
        "nats-based reporting convention and in bits/s\n";
    out += "lambda_bs,s_e_nats,t_p_nats_per_s,t_p_bits_per_s";
    for (double tau : tau_list) out += ",sop_bound_tau" + tau_suffix(tau);
    out += "\n";
    for (const auto& r : rows) {
        out += format_double(r.lambda_bs) + "," + format_double(r.s_e_nats) + "," +
               format_double(r.t_p_nats_per_s) + "," + format_double(r.t_p_bits_per_s);
        for (const auto& b : r.sop_bounds) out += "," + format_double(b.bounded);
        out += "\n";
    }
    return out;
}

std::string to_json(const std::vector<TradeoffRow>& rows, const std::vector<double>& tau_list) {
    json arr = json::array();
    for (const auto& r : rows) {
        json bounds = json::array();
        for (std::size_t i = 0; i < r.sop_bounds.size(); ++i)
            bounds.push_back({{"tau_K", tau_list[i]}, {"bounded", r.sop_bounds[i].bounded}});
        arr.push_back({{"lambda_bs", r.lambda_bs},
                       {"s_e_nats", r.s_e_nats},
                       {"t_p_nats_per_s", r.t_p_nats_per_s},
                       {"t_p_bits_per_s", r.t_p_bits_per_s},
                       {"sop_bounds", bounds}});
    }
    json doc{{"schema", "rfistat tradeoff v1"}, {"rows", arr}};
    return doc.dump(2) + "\n";
}

std::string samples_to_csv(const std::vector<RfiSample>& samples) {
    std::string out = "round,t_ml_k,t_sl_k\n";
    for (std::size_t i = 0; i < samples.size(); ++i)
        out += std::to_string(i) + "," + format_double(samples[i].t_ml_k) + "," +
               format_double(samples[i].t_sl_k) + "\n";
    return out;
}

}  // namespace rfistat
