#include <doctest.h>

#include <cmath>
#include <string>

#include "rfistat/sweep.hpp"

using namespace rfistat;

namespace {

ScenarioConfig single_point_config() {
    ScenarioConfig c = default_config();
    c.sweep.alpha_list = {2.1};
    c.sweep.lambda_bs_list = {800.0};
    c.sweep.tau_list = {0.6, 0.8, 1.0, 1.3};
    c.sim.workers = 2;
    return c;
}

bool clean_cells(const std::string& csv) {
    return csv.find("nan") == std::string::npos && csv.find("inf") == std::string::npos;
}

}  // namespace

TEST_SUITE("sweep") {

TEST_CASE("analytic grid shape and stability") {
    const ScenarioConfig c = default_config();
    const SweepGrid grid = run_analytic(c);
    // 7 alpha x 3 lambda x 2 lobes
    CHECK(grid.rows.size() == 42);
    const std::string csv1 = to_csv(grid);
    const std::string csv2 = to_csv(run_analytic(c));
    CHECK(csv1 == csv2);
    CHECK(clean_cells(csv1));

    // single-point collapse
    const SweepGrid point = run_analytic(single_point_config());
    CHECK(point.rows.size() == 2);
}

TEST_CASE("monte carlo grid carries empirical columns") {
    ScenarioConfig c = single_point_config();
    const SweepGrid grid = run_montecarlo(c, 25);
    REQUIRE(grid.rows.size() == 2);
    for (const auto& row : grid.rows) {
        CHECK(row.has_empirical);
        CHECK(row.rounds == 25);
        CHECK(std::isfinite(row.empirical.mean_k));
        CHECK(std::isfinite(row.empirical.std_k));
    }
    CHECK(clean_cells(to_csv(grid)));
    CHECK(to_json(grid).find("empirical") != std::string::npos);
}

TEST_CASE("sop rows at small round counts stay well-formed") {
    ScenarioConfig c = single_point_config();
    c.sweep.tau_list = {0.8};
    const auto rows = run_sop(c, 10);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].estimate.rounds == 10);
    CHECK(rows[0].estimate.wilson_hi - rows[0].estimate.wilson_lo > 0.1);  // wide CI
    CHECK(rows[0].estimate.p_hat >= 0.0);
    CHECK(rows[0].estimate.p_hat <= 1.0);
    CHECK(clean_cells(to_csv(rows)));
}

TEST_CASE("tradeoff rows") {
    ScenarioConfig c = single_point_config();
    const auto rows = run_tradeoff(c, {0.0, 150.0});
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].lambda_bs == 0.0);
    CHECK(rows[0].s_e_nats == 0.0);
    CHECK(rows[0].t_p_nats_per_s == 0.0);
    for (const auto& b : rows[0].sop_bounds) CHECK(b.bounded == 0.0);

    CHECK(rows[1].s_e_nats > 1.0);
    CHECK(rows[1].t_p_bits_per_s ==
          doctest::Approx(rows[1].t_p_nats_per_s / std::log(2.0)));
    // tau ordering on every row
    for (std::size_t i = 1; i < rows[1].sop_bounds.size(); ++i)
        CHECK(rows[1].sop_bounds[i].bounded <= rows[1].sop_bounds[i - 1].bounded);
    CHECK(clean_cells(to_csv(rows, c.sweep.tau_list)));
}

}  // TEST_SUITE
