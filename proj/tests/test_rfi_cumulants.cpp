#include <doctest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "rfistat/rfi_cumulants.hpp"
#include "test_util.hpp"

using namespace rfistat;

namespace {

Geometry table_geometry() { return Geometry{6371.0e3, 7056.0e3, 40.0, 40.0}; }
RadiometerParams table_radiometer() { return RadiometerParams{1.0, 1e-5, 24e6, 1.413e9, 1.2}; }
ChannelParams table_channel() { return ChannelParams{0.158, 0.739, 8.97e-4}; }
NetworkParams table_network(double alpha, double lambda_bs) {
    return NetworkParams{1e-4, lambda_bs, 20.0, alpha, 4000.0};
}

}  // namespace

TEST_SUITE("rfi_cumulants") {

TEST_CASE("omega constant") {
    const double om = omega_const(table_network(2.1, 800), table_radiometer());
    CHECK(om == doctest::Approx(8614774885828.97).epsilon(1e-12));

    NetworkParams doubled = table_network(2.1, 800);
    doubled.p_tx_w *= 2.0;
    CHECK(omega_const(doubled, table_radiometer()) == doctest::Approx(2.0 * om));

    RadiometerParams rad2 = table_radiometer();
    rad2.center_freq_hz *= 2.0;
    CHECK(omega_const(table_network(2.1, 800), rad2) == doctest::Approx(om / 4.0));
}

TEST_CASE("rayleigh p_n") {
    const ChannelParams ch = table_channel();
    const double tb = 2.0 * ch.b0;
    CHECK(p_n_rayleigh(0, 800.0, ch) == doctest::Approx(1.0));
    CHECK(p_n_rayleigh(1, 800.0, ch) == doctest::Approx(tb * 800.0).epsilon(1e-13));
    CHECK(p_n_rayleigh(2, 800.0, ch) ==
          doctest::Approx(tb * tb * (800.0 * 800.0 + 2.0 * 800.0)).epsilon(1e-13));
    for (int n = 1; n <= 4; ++n) CHECK(p_n_rayleigh(n, 0.0, ch) == doctest::Approx(0.0));
}

TEST_CASE("shadowed-Rician p_n") {
    const ChannelParams ch = table_channel();
    // n = 1 reduces to the closed form (2b0) lam (m rho - m + 1)
    const double rho = (2.0 * ch.b0 * ch.m + ch.omega) / (2.0 * ch.b0 * ch.m);
    const double p1_closed = 2.0 * ch.b0 * 800.0 * (ch.m * rho - ch.m + 1.0);
    CHECK(p_n_srf(1, 800.0, ch) == doctest::Approx(p1_closed).epsilon(1e-13));

    // n = 2 closed form
    const double bracket = ch.m * (ch.m + 1.0) * rho * rho -
                           2.0 * ch.m * (ch.m - 1.0) * rho + (ch.m - 1.0) * (ch.m - 2.0);
    const double a1f = ch.m * rho - ch.m + 1.0;
    const double p2_closed = std::pow(2.0 * ch.b0, 2) *
                             (800.0 * 800.0 * a1f * a1f + 800.0 * bracket);
    CHECK(p_n_srf(2, 800.0, ch) == doctest::Approx(p2_closed).epsilon(1e-12));
    CHECK(p_n_srf(2, 800.0, ch) == doctest::Approx(64431.8516708718).epsilon(1e-12));
    CHECK(p_n_srf(3, 1200.0, ch) == doctest::Approx(55267012.234219).epsilon(1e-12));
    CHECK(p_n_srf(4, 1200.0, ch) == doctest::Approx(21121737023.3002).epsilon(1e-12));

    // omega -> 0 collapses the Bell sums onto the Laguerre form exactly
    ChannelParams ray = ch;
    ray.omega = 0.0;
    for (int n = 1; n <= 4; ++n)
        CHECK(p_n_srf(n, 650.0, ray) ==
              doctest::Approx(p_n_rayleigh(n, 650.0, ray)).epsilon(1e-12));
}

TEST_CASE("cluster MGF") {
    const ChannelParams ch = table_channel();
    const double om = omega_const(table_network(2.1, 800), table_radiometer());
    CHECK(cluster_mgf(0.0, 865527.2, 1.0, 800.0, ch, om, 2.1) == doctest::Approx(1.0));
    CHECK(cluster_mgf(123.0, 865527.2, 1e-5, 0.0, ch, om, 2.1) == doctest::Approx(1.0));

    // truncated series against the closed form at small eta; the cluster
    // series parameter a1 lam scale eta must stay well below 1
    const double x_m = 865527.206516659;
    const double scale = 1e-5 * om * 1e-6 * std::pow(x_m * 1e-3, -2.1);
    const double eta = 0.02 / (srf_moment(1, ch) * 800.0 * scale);
    double series = 1.0;
    double fact = 1.0;
    for (int n = 1; n <= 8; ++n) {
        fact *= n;
        series += p_n(n, 800.0, ch) * std::pow(scale * eta, n) / fact;
    }
    const double direct = cluster_mgf(eta, x_m, 1e-5, 800.0, ch, om, 2.1);
    CHECK(series == doctest::Approx(direct).epsilon(1e-8));
}

TEST_CASE("lobe cumulants reference values") {
    const Geometry geo = table_geometry();
    const RadiometerParams rad = table_radiometer();
    const ChannelParams ch = table_channel();

    const NetworkParams net1 = table_network(2.01, 1200.0);
    const double k_sl_201[4] = {25.7118740581772, 0.53670417948656, 0.018527051031614,
                                8.14464083931298e-4};
    for (int n = 1; n <= 4; ++n)
        CHECK(lobe_cumulant(Lobe::side, n, geo, rad, net1, ch) ==
              doctest::Approx(k_sl_201[n - 1]).epsilon(1e-10));
    CHECK(lobe_cumulant(Lobe::main, 1, geo, rad, net1, ch) ==
          doctest::Approx(653.926647166697).epsilon(1e-10));
    CHECK(lobe_cumulant(Lobe::main, 2, geo, rad, net1, ch) ==
          doctest::Approx(2677079.75614277).epsilon(1e-10));

    const NetworkParams net2 = table_network(2.1, 800.0);
    CHECK(lobe_cumulant(Lobe::side, 1, geo, rad, net2, ch) ==
          doctest::Approx(8.91559452761755).epsilon(1e-10));
    CHECK(lobe_cumulant(Lobe::side, 2, geo, rad, net2, ch) ==
          doctest::Approx(0.0685017741510531).epsilon(1e-10));
    CHECK(lobe_cumulant(Lobe::main, 1, geo, rad, net2, ch) ==
          doctest::Approx(237.182428131973).epsilon(1e-10));
    CHECK(lobe_cumulant(Lobe::main, 2, geo, rad, net2, ch) ==
          doctest::Approx(352475.894838122).epsilon(1e-10));
}

TEST_CASE("lobe cumulant structure") {
    const Geometry geo = table_geometry();
    const RadiometerParams rad = table_radiometer();
    const ChannelParams ch = table_channel();

    for (double alpha : {2.01, 2.1, 2.25, 2.4}) {
        for (double lam : {500.0, 800.0, 1200.0}) {
            const NetworkParams net = table_network(alpha, lam);
            for (int n = 1; n <= 4; ++n) {
                CHECK(lobe_cumulant(Lobe::side, n, geo, rad, net, ch) > 0.0);
                CHECK(lobe_cumulant(Lobe::main, n, geo, rad, net, ch) > 0.0);
            }
            // exact linearity in lambda_c
            NetworkParams net3 = net;
            net3.lambda_c_per_km2 *= 3.0;
            CHECK(lobe_cumulant(Lobe::side, 2, geo, rad, net3, ch) ==
                  doctest::Approx(3.0 * lobe_cumulant(Lobe::side, 2, geo, rad, net, ch))
                      .epsilon(1e-13));
            // k1 linear in lambda_bs
            NetworkParams netl = net;
            netl.lambda_bs *= 2.0;
            CHECK(lobe_cumulant(Lobe::main, 1, geo, rad, netl, ch) ==
                  doctest::Approx(2.0 * lobe_cumulant(Lobe::main, 1, geo, rad, net, ch))
                      .epsilon(1e-13));
        }
    }

    // gain scaling: k_n scales as s^n
    RadiometerParams rad_scaled = rad;
    rad_scaled.g_sl *= 2.5;
    const NetworkParams net = table_network(2.1, 800.0);
    for (int n = 1; n <= 4; ++n)
        CHECK(lobe_cumulant(Lobe::side, n, geo, rad_scaled, net, ch) ==
              doctest::Approx(std::pow(2.5, n) *
                              lobe_cumulant(Lobe::side, n, geo, rad, net, ch))
                  .epsilon(1e-12));
}

TEST_CASE("lobe stats assembly and the Chebyshev bound") {
    const Geometry geo = table_geometry();
    const RadiometerParams rad = table_radiometer();
    const ChannelParams ch = table_channel();
    const LobeCumulants s =
        lobe_stats(Lobe::side, geo, rad, table_network(2.01, 1200.0), ch);
    CHECK(s.mean_k == doctest::Approx(s.k[0]));
    CHECK(s.var_k2 == doctest::Approx(s.k[1]));
    CHECK(s.std_k == doctest::Approx(std::sqrt(s.k[1])));
    CHECK(s.mu4_k4 == doctest::Approx(s.k[3] + 3.0 * s.k[1] * s.k[1]));

    // reference outage bounds at tau = 0.8
    CHECK(sop_upper_bound(s, 0.8).raw == doctest::Approx(0.83860028).epsilon(1e-7));
    const LobeCumulants s2 =
        lobe_stats(Lobe::side, geo, rad, table_network(2.106, 1200.0), ch);
    CHECK(sop_upper_bound(s2, 0.8).raw == doctest::Approx(0.14725864).epsilon(1e-6));
    const LobeCumulants s3 =
        lobe_stats(Lobe::side, geo, rad, table_network(2.01, 500.0), ch);
    CHECK(sop_upper_bound(s3, 0.8).raw == doctest::Approx(0.063947004).epsilon(1e-6));

    // clamping: the main lobe blows through 1
    const LobeCumulants big =
        lobe_stats(Lobe::main, geo, rad, table_network(2.01, 1200.0), ch);
    const SopBound clamped = sop_upper_bound(big, 0.8);
    CHECK(clamped.raw > 1.0);
    CHECK(clamped.bounded == doctest::Approx(1.0));

    CHECK(sop_upper_bound(s, 1e9).bounded == doctest::Approx(0.0));
    CHECK_THROWS_AS(sop_upper_bound(s, 0.0), std::domain_error);

    // monotone in tau, monotone in lambda_bs
    double prev = 2.0;
    for (double tau : {0.6, 0.8, 1.0, 1.3}) {
        const double b = sop_upper_bound(s, tau).bounded;
        CHECK(b <= prev);
        prev = b;
    }
    CHECK(sop_upper_bound(s3, 0.8).raw <= sop_upper_bound(s, 0.8).raw);
}

TEST_CASE("mitigation") {
    CHECK(mitigate(250.0, 17.1) == doctest::Approx(232.9));
    CHECK(mitigate(42.0, 0.0) == doctest::Approx(42.0));
}

TEST_CASE("heterogeneous mixtures") {
    const Geometry geo = table_geometry();
    const RadiometerParams rad = table_radiometer();
    const ChannelParams ch = table_channel();

    const std::vector<MixtureComponent> single{{1.0, table_network(2.1, 800.0), ch}};
    CHECK(heterogeneous_cumulant(Lobe::side, 2, geo, rad, single) ==
          doctest::Approx(lobe_cumulant(Lobe::side, 2, geo, rad, single[0].net, ch)));

    const std::vector<MixtureComponent> mix{{0.5, table_network(2.1, 500.0), ch},
                                            {0.5, table_network(2.1, 1200.0), ch}};
    const double k1_mix = heterogeneous_cumulant(Lobe::side, 1, geo, rad, mix);
    CHECK(k1_mix == doctest::Approx(lobe_cumulant(Lobe::side, 1, geo, rad,
                                                  table_network(2.1, 850.0), ch))
                        .epsilon(1e-12));
    const double k2_mix = heterogeneous_cumulant(Lobe::side, 2, geo, rad, mix);
    const double k2_850 = lobe_cumulant(Lobe::side, 2, geo, rad, table_network(2.1, 850.0), ch);
    CHECK(std::fabs(k2_mix - k2_850) > 1e-6 * k2_850);

    const std::vector<MixtureComponent> bad{{0.6, table_network(2.1, 500.0), ch},
                                            {0.6, table_network(2.1, 1200.0), ch}};
    CHECK_THROWS_AS(heterogeneous_cumulant(Lobe::side, 1, geo, rad, bad),
                    std::invalid_argument);
}

TEST_CASE("aggregate MGFs at eta = 0 and degenerate intensities") {
    const Geometry geo = table_geometry();
    const RadiometerParams rad = table_radiometer();
    const ChannelParams ch = table_channel();
    const NetworkParams net = table_network(2.1, 800.0);
    CHECK(mgf_sidelobe(0.0, geo, rad, net, ch) == doctest::Approx(1.0));
    CHECK(mgf_mainlobe(0.0, geo, rad, net, ch) == doctest::Approx(1.0));
    NetworkParams empty = net;
    empty.lambda_c_per_km2 = 0.0;
    CHECK(mgf_sidelobe(3.0, geo, rad, empty, ch) == doctest::Approx(1.0));
    CHECK(mgf_mainlobe(3.0, geo, rad, empty, ch) == doctest::Approx(1.0));
}

TEST_CASE("log-MGF derivatives reproduce the closed-form cumulants") {
    const Geometry geo = table_geometry();
    const RadiometerParams rad = table_radiometer();
    const ChannelParams ch = table_channel();
    const NetworkParams net = table_network(2.1, 800.0);
    const QuadratureSpec tight{1e-12, 1e-15, 2000};

    std::function<double(double)> log_side = [&](double eta) {
        return std::log(mgf_sidelobe(eta, geo, rad, net, ch, tight));
    };
    std::function<double(double)> log_main = [&](double eta) {
        return std::log(mgf_mainlobe(eta, geo, rad, net, ch));
    };

    // eta steps sized against the cluster-MGF series radius 1/(a1 lam scale):
    // far inside the singularity and small enough that the sixth-cumulant
    // truncation term stays below the 1e-4 target
    const double om_km = omega_const(net, rad) * 1e-6;
    const double a1 = srf_moment(1, ch);
    const double dmin_km = distance_bounds(geo).d_min_m * 1e-3;
    const double h_side = 0.06 / (a1 * net.lambda_bs * rad.g_sl * om_km *
                                  std::pow(dmin_km, -net.alpha));
    const double dml_km = mainlobe_distance_m(geo) * 1e-3;
    const double h_main = 0.06 / (a1 * net.lambda_bs * rad.g_ml * om_km *
                                  std::pow(dml_km, -net.alpha));

    for (int n = 1; n <= 4; ++n) {
        const double ks = testutil::richardson_derivative(log_side, n, h_side);
        INFO("side n=", n);
        CHECK(testutil::rel_err(ks, lobe_cumulant(Lobe::side, n, geo, rad, net, ch)) < 1e-4);

        const double km = testutil::richardson_derivative(log_main, n, h_main);
        INFO("main n=", n);
        CHECK(testutil::rel_err(km, lobe_cumulant(Lobe::main, n, geo, rad, net, ch)) < 1e-4);
    }
}

}  // TEST_SUITE
