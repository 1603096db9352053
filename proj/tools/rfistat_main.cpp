#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rfistat/sweep.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_path;
    std::string format = "csv";
    std::optional<std::uint64_t> seed;
    std::optional<long> rounds;
    std::optional<int> workers;
    std::optional<bool> bs_offsets;
    std::string eq28_form;
    std::string dump_samples;
};

rfistat::ScenarioConfig resolve_config(const CommonOpts& o) {
    rfistat::ScenarioConfig c = o.config_path.empty() ? rfistat::default_config()
                                                      : rfistat::load_config_file(o.config_path);
    if (o.seed) c.sim.seed = *o.seed;
    if (o.rounds) c.sim.rounds = *o.rounds;
    if (o.workers) c.sim.workers = *o.workers;
    if (o.bs_offsets) c.sim.bs_offsets_enabled = *o.bs_offsets;
    if (!o.eq28_form.empty()) {
        if (o.eq28_form == "cos")
            c.mainlobe_form = rfistat::MainlobeRootForm::cosine;
        else if (o.eq28_form == "sin")
            c.mainlobe_form = rfistat::MainlobeRootForm::sine;
        else
            throw std::invalid_argument("--eq28-form: expected cos or sin");
    }
    c.validate();
    return c;
}

void emit(const CommonOpts& o, const std::string& text) {
    if (o.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(o.out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + o.out_path);
    out << text;
}

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "scenario config file (default: built-in scenario, = configs/table1.cfg)");
    cmd->add_option("--out", o.out_path, "output file (default: stdout)");
    cmd->add_option("--format", o.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--seed", o.seed, "master RNG seed override");
    cmd->add_option("--rounds", o.rounds, "Monte Carlo round count override");
    cmd->add_option("--workers", o.workers, "worker thread count override");
    cmd->add_option("--bs-offsets", o.bs_offsets,
                    "simulate per-BS Rayleigh offsets (true/false)");
    cmd->add_option("--eq28-form", o.eq28_form, "main-lobe boresight root: cos or sin")
        ->check(CLI::IsMember({"cos", "sin"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"aggregate RFI brightness-temperature statistics, sensing outage and "
                 "throughput trade-off for a clustered terrestrial network under a passive "
                 "radiometry satellite"};
    app.require_subcommand(1);

    CommonOpts o;
    std::string sop_center = "analytic";

    auto* analytic = app.add_subcommand("analytic", "analytic cumulants and SOP bounds");
    add_common(analytic, o);
    auto* mc = app.add_subcommand("montecarlo", "analytic grid plus Monte Carlo statistics");
    add_common(mc, o);
    mc->add_option("--dump-samples", o.dump_samples,
                   "write per-round samples (round,t_ml_k,t_sl_k) for the last grid point");
    auto* sop = app.add_subcommand("sop", "sensing outage probability: bound vs Monte Carlo");
    add_common(sop, o);
    sop->add_option("--center", sop_center, "mitigation center: analytic or empirical")
        ->check(CLI::IsMember({"analytic", "empirical"}));
    auto* tradeoff =
        app.add_subcommand("tradeoff", "spectral efficiency and throughput vs SOP bound");
    add_common(tradeoff, o);
    std::vector<double> tradeoff_grid;
    tradeoff
        ->add_option("--lambda-bs-list", tradeoff_grid,
                     "lambda_bs ramp (default 0..1500 in 14 steps)")
        ->delimiter(',');

    CLI11_PARSE(app, argc, argv);

    try {
        if (analytic->parsed()) {
            const rfistat::ScenarioConfig c = resolve_config(o);
            const auto grid = rfistat::run_analytic(c);
            emit(o, o.format == "csv" ? rfistat::to_csv(grid) : rfistat::to_json(grid));
        } else if (mc->parsed()) {
            const rfistat::ScenarioConfig c = resolve_config(o);
            const auto grid = rfistat::run_montecarlo(c);
            emit(o, o.format == "csv" ? rfistat::to_csv(grid) : rfistat::to_json(grid));
            if (!o.dump_samples.empty()) {
                rfistat::NetworkParams net = c.network;
                net.alpha = c.sweep.alpha_list.back();
                net.lambda_bs = c.sweep.lambda_bs_list.back();
                std::vector<rfistat::RfiSample> samples;
                rfistat::simulate(c.geometry, c.radiometer, net, c.channel, c.sim,
                                  rfistat::LobeSelect::both, &samples);
                std::ofstream dump(o.dump_samples, std::ios::binary);
                if (!dump)
                    throw std::runtime_error("cannot open dump file: " + o.dump_samples);
                dump << rfistat::samples_to_csv(samples);
            }
        } else if (sop->parsed()) {
            const rfistat::ScenarioConfig c = resolve_config(o);
            const auto center = sop_center == "analytic" ? rfistat::SopCenter::analytic_mean
                                                         : rfistat::SopCenter::empirical_mean;
            // 20,000 rounds by default for outage studies unless overridden.
            const auto rows = rfistat::run_sop(c, o.rounds, center);
            emit(o, o.format == "csv" ? rfistat::to_csv(rows) : rfistat::to_json(rows));
        } else if (tradeoff->parsed()) {
            const rfistat::ScenarioConfig c = resolve_config(o);
            const auto rows = rfistat::run_tradeoff(c, tradeoff_grid);
            emit(o, o.format == "csv" ? rfistat::to_csv(rows, c.sweep.tau_list)
                                      : rfistat::to_json(rows, c.sweep.tau_list));
        }
    } catch (const rfistat::QuadratureError& e) {
        std::cerr << "rfistat: tolerance failure: " << e.what()
                  << " (best estimate " << e.best_estimate << ", bound " << e.error_bound
                  << ")\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "rfistat: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
