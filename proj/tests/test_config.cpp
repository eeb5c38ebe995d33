#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tnse/config.hpp"
#include "tnse/spectral_ops.hpp"

#include <cmath>

using namespace tnse;

#ifndef TNSE_SOURCE_DIR
#define TNSE_SOURCE_DIR "."
#endif

TEST_CASE("empty input yields the full defaults") {
    Config c = Config::from_string("");
    CHECK(c == Config::defaults());
    CHECK(c.get("grid.M") == "16");
    CHECK(c.get_double("taming.N") == 10.0);
    CHECK(c.get("sim.scheme") == "semi-implicit-em");
    SimConfig sim = c.to_sim_config();
    CHECK(sim.M == 16);
    CHECK(sim.dt == 1e-3);
    CHECK(sim.params.tf.N == 10.0);
}

TEST_CASE("round trip: parse(print(c)) == c") {
    Config c = Config::from_string("grid.M = 24\nsim.dt = 0.0005\nnoise.kind = banded\n");
    Config back = Config::from_string(c.print());
    CHECK(back == c);
}

TEST_CASE("comments, blank lines, aliases") {
    Config c = Config::from_string(
        "# header comment\n"
        "\n"
        "grid.M = 20   # trailing comment\n"
        "model.N = 5.5\n");
    CHECK(c.get("grid.M") == "20");
    CHECK(c.get_double("taming.N") == 5.5); // model.N accepted as alias
}

TEST_CASE("unknown keys and malformed lines are errors that name the offender") {
    CHECK_THROWS_WITH_AS(Config::from_string("grid.Q = 3\n"),
                         doctest::Contains("grid.Q"), ConfigError);
    CHECK_THROWS_AS(Config::from_string("no equals sign here\n"), ConfigError);
    Config c = Config::defaults();
    CHECK_THROWS_AS(c.set("not.a.key", "1"), ConfigError);
    CHECK_THROWS_WITH_AS(c.get("not.a.key"), doctest::Contains("not.a.key"), ConfigError);
}

TEST_CASE("range errors name the offending key") {
    Config c = Config::from_string("model.alpha = -1\n");
    CHECK_THROWS_WITH_AS(c.to_sim_config(), doctest::Contains("model.alpha"), ConfigError);
    c = Config::from_string("model.nu = 0\n");
    CHECK_THROWS_WITH_AS(c.to_sim_config(), doctest::Contains("model.nu"), ConfigError);
    c = Config::from_string("taming.N = -2\n");
    CHECK_THROWS_WITH_AS(c.to_sim_config(), doctest::Contains("taming.N"), ConfigError);
    c = Config::from_string("sim.dt = not_a_number\n");
    CHECK_THROWS_WITH_AS(c.to_sim_config(), doctest::Contains("sim.dt"), ConfigError);
    c = Config::from_string("forcing.kappa = 0.9\n");
    CHECK_THROWS_WITH_AS(c.to_sim_config(), doctest::Contains("forcing.kappa"), ConfigError);
    c = Config::from_string("sim.scheme = runge-kutta\n");
    CHECK_THROWS_WITH_AS(c.to_sim_config(), doctest::Contains("sim.scheme"), ConfigError);
}

TEST_CASE("typed mapping into the simulation configuration") {
    Config c = Config::from_string(
        "grid.M = 20\n"
        "sim.n = 6\n"
        "sim.dt = 0.002\n"
        "sim.T = 3\n"
        "sim.paths = 7\n"
        "sim.seed = 99\n"
        "sim.scheme = explicit-em\n"
        "sim.R_stop = 12\n"
        "model.alpha = 1.5\n"
        "taming.enabled = false\n"
        "forcing.kind = fixed\n"
        "forcing.amplitude = 0.2\n"
        "noise.kind = banded\n"
        "ic.kind = single\n"
        "ic.mode = 1,0,-1\n"
        "diag.record_every = 5\n");
    SimConfig sim = c.to_sim_config();
    CHECK(sim.M == 20);
    CHECK(sim.cutoff_n == 6.0);
    CHECK(sim.dt == 0.002);
    CHECK(sim.T == 3.0);
    CHECK(sim.n_paths == 7);
    CHECK(sim.seed == 99);
    CHECK(sim.scheme == Scheme::ExplicitEM);
    CHECK(sim.R_stop == 12.0);
    CHECK(sim.params.alpha == 1.5);
    CHECK_FALSE(sim.params.taming_enabled);
    CHECK(sim.params.forcing == ForcingKind::Fixed);
    CHECK(sim.noise_kind == NoiseKind::Banded);
    CHECK(sim.ic.kind == InitialCondition::Kind::SingleMode);
    CHECK(sim.ic.mode == std::array<int, 3>{1, 0, -1});
    CHECK(sim.diag.record_every == 5);
    // forcing profile scaled to the requested H norm
    REQUIRE(sim.params.f0.grid != nullptr);
    CHECK(std::sqrt(norm2_H(sim.params.f0)) == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("missing file is an error") {
    CHECK_THROWS_AS(Config::from_file("/nonexistent/path.cfg"), ConfigError);
}

TEST_CASE("shipped long-run config parses to the documented parameters") {
    Config c = Config::from_file(std::string(TNSE_SOURCE_DIR) + "/configs/invariant_bound.cfg");
    SimConfig sim = c.to_sim_config();
    CHECK(sim.params.alpha == 1.0);
    CHECK(sim.params.nu == 1.0);
    CHECK(sim.T == 40.0);
    CHECK(sim.n_paths == 64);
    CHECK(sim.params.forcing == ForcingKind::Fixed);
    CHECK(norm2_H(sim.params.f0) == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(sim.ic.amplitude == 1.0);
    CHECK(sim.ic.norm == "H");
}

TEST_CASE("shipped short demo config parses") {
    Config c = Config::from_file(std::string(TNSE_SOURCE_DIR) + "/configs/demo.cfg");
    SimConfig sim = c.to_sim_config();
    CHECK(sim.M == 16);
    CHECK(sim.T <= 1.0);
}

TEST_CASE("run manifest carries the resolved configuration and generator id") {
    Config c = Config::from_string("sim.seed = 77\n");
    const std::string m = run_manifest(c);
    CHECK(m.find("sim.seed = 77") != std::string::npos);
    CHECK(m.find("splitmix64") != std::string::npos);
    CHECK(m.find("threads") != std::string::npos);
    CHECK(m.find("grid.M = 16") != std::string::npos);
}
