#include <doctest.h>

#include <cstdlib>
#include <string>

#include "rfistat/config.hpp"

using namespace rfistat;

TEST_SUITE("config") {

TEST_CASE("shortest round-trip float formatting") {
    for (double v : {0.1, 1e-5, 8.97e-4, 1.0 / 3.0, 6371.0, 2.0100000000000002, -174.0}) {
        const std::string s = format_double(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
}

TEST_CASE("serialize/parse/serialize is a byte-identical fixed point") {
    const ScenarioConfig c = default_config();
    const std::string s1 = serialize_config(c);
    const ScenarioConfig parsed = parse_config(s1);
    const std::string s2 = serialize_config(parsed);
    CHECK(s1 == s2);

    // and the parsed struct carries the same physics
    CHECK(parsed.network.sigma_c_m == c.network.sigma_c_m);
    CHECK(parsed.radiometer.g_sl == doctest::Approx(1e-5).epsilon(1e-12));
    CHECK(parsed.sim.seed == c.sim.seed);
    CHECK(parsed.sweep.alpha_list == c.sweep.alpha_list);
}

TEST_CASE("comments, blank lines, spacing") {
    ScenarioConfig c = default_config();
    std::string text = serialize_config(c);
    text = "# leading comment\n\n" + text + "\n# trailing\n";
    const ScenarioConfig parsed = parse_config(text);
    CHECK(serialize_config(parsed) == serialize_config(c));
}

TEST_CASE("missing sweep collapses to the scalar point") {
    const ScenarioConfig c = default_config();
    std::string text = serialize_config(c);
    const auto pos = text.find("[sweep]");
    REQUIRE(pos != std::string::npos);
    text.resize(pos);
    const ScenarioConfig parsed = parse_config(text);
    REQUIRE(parsed.sweep.alpha_list.size() == 1);
    CHECK(parsed.sweep.alpha_list[0] == c.network.alpha);
    REQUIRE(parsed.sweep.lambda_bs_list.size() == 1);
    CHECK(parsed.sweep.lambda_bs_list[0] == c.network.lambda_bs);
    REQUIRE(parsed.sweep.tau_list.size() == 1);
}

TEST_CASE("errors carry field paths") {
    const ScenarioConfig c = default_config();
    std::string text = serialize_config(c);

    SUBCASE("unknown key") {
        text += "\n[network]\nbogus = 3\n";
        CHECK_THROWS_WITH_AS(parse_config(text), doctest::Contains("network.bogus"),
                             std::invalid_argument);
    }
    SUBCASE("bad number") {
        const auto pos = text.find("alpha = 2.1");
        REQUIRE(pos != std::string::npos);
        text.replace(pos, 11, "alpha = abc");
        CHECK_THROWS_WITH_AS(parse_config(text), doctest::Contains("network.alpha"),
                             std::invalid_argument);
    }
    SUBCASE("invariant violation") {
        const auto pos = text.find("alpha = 2.1");
        REQUIRE(pos != std::string::npos);
        text.replace(pos, 11, "alpha = 1.9");
        CHECK_THROWS_WITH_AS(parse_config(text), doctest::Contains("network.alpha"),
                             std::invalid_argument);
    }
    SUBCASE("missing key") {
        const auto pos = text.find("b0 = 0.158\n");
        REQUIRE(pos != std::string::npos);
        text.erase(pos, 11);
        CHECK_THROWS_WITH_AS(parse_config(text), doctest::Contains("channel.b0"),
                             std::invalid_argument);
    }
    SUBCASE("bad bool") {
        const auto pos = text.find("bs_offsets = false");
        REQUIRE(pos != std::string::npos);
        text.replace(pos, 18, "bs_offsets = maybe");
        CHECK_THROWS_WITH_AS(parse_config(text), doctest::Contains("sim.bs_offsets"),
                             std::invalid_argument);
    }
    SUBCASE("empty sweep list") {
        const auto pos = text.find("tau_list = ");
        REQUIRE(pos != std::string::npos);
        const auto eol = text.find('\n', pos);
        text.replace(pos, eol - pos, "tau_list = ");
        CHECK_THROWS_WITH_AS(parse_config(text), doctest::Contains("sweep.tau_list"),
                             std::invalid_argument);
    }
}

TEST_CASE("default config reproduces the reference scenario") {
    const ScenarioConfig c = default_config();
    CHECK(c.network.lambda_c_per_km2 == doctest::Approx(1e-4));
    CHECK(c.channel.b0 == doctest::Approx(0.158));
    CHECK(c.radiometer.g_sl == doctest::Approx(1e-5).epsilon(1e-12));
    CHECK(c.geometry.sat_center_distance_m == doctest::Approx(7056.0e3));
    CHECK(c.sweep.lambda_bs_list == std::vector<double>{500.0, 800.0, 1200.0});
    CHECK(c.sweep.alpha_list.size() == 7);
    CHECK_NOTHROW(c.validate());
}

TEST_CASE("bundled table1.cfg matches the built-in default") {
    const ScenarioConfig bundled =
        load_config_file(std::string(RFISTAT_SOURCE_DIR) + "/configs/table1.cfg");
    CHECK(serialize_config(bundled) == serialize_config(default_config()));
}

}  // TEST_SUITE
