#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tnse/rng.hpp"
#include "tnse/taming.hpp"

#include <cmath>

using namespace tnse;

TEST_CASE("branch values are exact") {
    TamingFunction tf(10.0);
    CHECK(tf.g(0.0) == 0.0);
    CHECK(tf.g(5.0) == 0.0);
    CHECK(tf.g(10.0) == 0.0);
    CHECK(tf.g(11.0) == 1.0);
    CHECK(tf.g(15.0) == 5.0);
    CHECK(tf.g_prime(5.0) == 0.0);
    CHECK(tf.g_prime(11.0) == 1.0);
    CHECK(tf.g_prime(20.0) == 1.0);
    // bridge midpoint: g(N + 1/2) = 2/4 - 1/8 = 3/8
    CHECK(tf.g(10.5) == doctest::Approx(0.375).epsilon(1e-15));
    CHECK(tf.g_prime(10.5) == doctest::Approx(0.5 * (4.0 - 1.5)).epsilon(1e-15));
}

TEST_CASE("C1 gluing at both seams") {
    TamingFunction tf(10.0);
    const double eps = 1e-9;
    CHECK(std::abs(tf.g(10.0 + eps)) < 1e-10);
    CHECK(std::abs(tf.g(11.0 - eps) - tf.g(11.0)) < 1e-8);
    CHECK(std::abs(tf.g_prime(10.0 + eps)) < 1e-8);
    CHECK(std::abs(tf.g_prime(11.0 - eps) - 1.0) < 1e-8);
}

TEST_CASE("0 <= g(r) <= r, Lipschitz 2, and derivative range") {
    TamingFunction tf(10.0);
    std::uint64_t s = 99;
    NormalStream rng(splitmix64(s));
    for (int i = 0; i < 100000; ++i) {
        const double r = std::abs(rng.normal()) * 20.0;
        const double rp = std::abs(rng.normal()) * 20.0;
        CHECK(tf.g(r) >= 0.0);
        CHECK(tf.g(r) <= r);
        CHECK(std::abs(tf.g(r) - tf.g(rp)) <= 2.0 * std::abs(r - rp) + 1e-14);
        CHECK(tf.g_prime(r) >= 0.0);
        CHECK(tf.g_prime(r) <= 4.0 / 3.0 + 1e-14);
        // phi = r - g: bounded by N+1, slope-times-r bounded by N
        CHECK(tf.phi(r) >= -1e-14);
        CHECK(tf.phi(r) <= tf.N + 1.0 + 1e-14);
        CHECK(std::abs((1.0 - tf.g_prime(r)) * r) <= tf.N + 1e-12);
    }
}

TEST_CASE("constants exposed for the inequality suite") {
    TamingFunction tf(7.0);
    CHECK(tf.energy_constant() == doctest::Approx(8.0));
    CHECK(tf.gradient_form_constant() == doctest::Approx(14.0));
}

TEST_CASE("domain errors") {
    TamingFunction tf(10.0);
    CHECK_THROWS_AS(tf.g(-1.0), std::domain_error);
    CHECK_THROWS_AS(tf.g_prime(-0.5), std::domain_error);
    CHECK_THROWS_AS(TamingFunction(0.0), std::invalid_argument);
    CHECK_THROWS_AS(TamingFunction(-3.0), std::invalid_argument);
}

TEST_CASE("tamed_term applies g(|u|^2) pointwise") {
    GridPtr g = make_grid(8, 2.0 * M_PI);
    TamingFunction tf(2.0);
    PhysicalField u(g);
    std::uint64_t s = 4;
    NormalStream rng(splitmix64(s));
    for (double& v : u.values) v = rng.normal();
    PhysicalField w = tamed_term(u, tf);
    const std::size_t np = g->points();
    for (std::size_t i = 0; i < np; ++i) {
        double s2 = 0.0;
        for (std::size_t c = 0; c < 3; ++c) s2 += u.values[c * np + i] * u.values[c * np + i];
        const double gs = tf.g(s2);
        for (std::size_t c = 0; c < 3; ++c)
            CHECK(w.values[c * np + i] == doctest::Approx(gs * u.values[c * np + i]).epsilon(1e-14));
    }
}

TEST_CASE("tamed_term vanishes below the threshold") {
    GridPtr g = make_grid(8, 2.0 * M_PI);
    TamingFunction tf(10.0);
    PhysicalField u(g);
    for (double& v : u.values) v = 0.01; // |u|^2 = 3e-4 << N
    PhysicalField w = tamed_term(u, tf);
    for (double v : w.values) CHECK(v == 0.0);
}
