#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tnse/invariant.hpp"

#include <cmath>
#include <numeric>

using namespace tnse;

namespace {

SimConfig damped_base(double alpha = 1.0) {
    SimConfig cfg;
    cfg.M = 16;
    cfg.cutoff_n = 4.0;
    cfg.dt = 2e-3;
    cfg.T = 2.0;
    cfg.params.nu = 1.0;
    cfg.params.alpha = alpha;
    cfg.params.forcing = ForcingKind::Fixed;
    cfg.params.kappa = 0.0;
    cfg.ic.kind = InitialCondition::Kind::RandomLowMode;
    cfg.ic.amplitude = 1.0;
    cfg.diag.heavy = false;
    return cfg;
}

} // namespace

TEST_CASE("damped configuration computes delta and gamma and validates") {
    DampedConfig dc(damped_base(1.0));
    // constant noise: sup ||sigma||^2 = 1/4, delta = (2 - 1/4)/2 = 7/8
    CHECK(dc.delta == doctest::Approx(7.0 / 8.0));
    CHECK(dc.gamma == doctest::Approx(0.5)); // min(alpha/2, delta)
    DampedConfig dc4(damped_base(4.0));
    CHECK(dc4.gamma == doctest::Approx(7.0 / 8.0)); // delta binds

    SimConfig bad = damped_base(0.0);
    CHECK_THROWS_AS(DampedConfig{bad}, std::invalid_argument);
    SimConfig state = damped_base(1.0);
    state.params.forcing = ForcingKind::State;
    CHECK_THROWS_AS(DampedConfig{state}, std::invalid_argument);
}

TEST_CASE("unforced damped system decays in mean") {
    SimConfig cfg = damped_base(1.0);
    cfg.T = 1.0;
    DampedConfig dc(cfg);
    Trajectory tr = run_damped(dc, 0);
    CHECK(tr.summary.final_H2 < 0.05 * tr.record.H2.front());
}

TEST_CASE("larger damping relaxes faster") {
    SimConfig a = damped_base(1.0), b = damped_base(4.0);
    a.T = b.T = 0.5;
    Trajectory ta = run_damped(DampedConfig(a), 0);
    Trajectory tb = run_damped(DampedConfig(b), 0);
    CHECK(tb.summary.final_H2 < ta.summary.final_H2);
}

TEST_CASE("time average: constant observable and histogram bookkeeping") {
    std::vector<double> t(101), x(101);
    for (std::size_t i = 0; i <= 100; ++i) {
        t[i] = 0.01 * i;
        x[i] = 1.0;
    }
    EmpiricalMeasure m = time_average(t, x, "one", 0.0);
    CHECK(m.time_average == doctest::Approx(1.0));
    CHECK(std::accumulate(m.counts.begin(), m.counts.end(), std::size_t{0}) == m.n_samples);

    // nontrivial series: histogram-weighted mean stays near the average
    for (std::size_t i = 0; i <= 100; ++i) x[i] = std::sin(t[i] * 10.0);
    m = time_average(t, x, "sin", 0.25);
    CHECK(m.n_samples == 76);
    CHECK(std::accumulate(m.counts.begin(), m.counts.end(), std::size_t{0}) == m.n_samples);
    double hist_mean = 0.0;
    for (std::size_t b = 0; b < m.counts.size(); ++b)
        hist_mean += 0.5 * (m.bin_edges[b] + m.bin_edges[b + 1]) * m.counts[b];
    hist_mean /= m.n_samples;
    const double bin_w = m.bin_edges[1] - m.bin_edges[0];
    CHECK(std::abs(hist_mean - m.time_average) <= bin_w); // within one bin width
    CHECK(m.window_averages.size() == 4);

    CHECK_THROWS_AS(time_average(t, x, "sin", 5.0), std::invalid_argument);
}

TEST_CASE("V-norm observable on an unforced run decays to zero") {
    SimConfig cfg = damped_base(2.0);
    cfg.T = 1.5;
    DampedConfig dc(cfg);
    Trajectory tr = run_damped(dc, 0);
    EmpiricalMeasure late = time_average(tr.record.t, tr.record.V2, "V2", 1.0);
    EmpiricalMeasure early = time_average(tr.record.t, tr.record.V2, "V2", 0.0);
    CHECK(late.time_average < 0.2 * early.time_average);
}

TEST_CASE("tail bound: sanity inversion and the Chebyshev comparison") {
    SimConfig cfg = damped_base(1.0);
    cfg.T = 1.0;
    cfg.params.f0 = SpectralField(); // zero forcing
    DampedConfig dc(cfg);
    std::vector<Trajectory> ens;
    for (std::size_t i = 0; i < 4; ++i) ens.push_back(run_damped(dc, i));
    const double u0_H2 = ens[0].record.H2.front();

    TailBoundReport big = tail_bound_check(ens, dc, 1e6, u0_H2);
    CHECK(big.exceedance == 0.0);
    CHECK(big.chebyshev_bound < 1e-9);

    TailBoundReport tiny = tail_bound_check(ens, dc, 1e-9, u0_H2);
    CHECK(tiny.exceedance > 0.9); // radius below the typical V norm

    CHECK_THROWS_AS(tail_bound_check(ens, dc, 0.0, u0_H2), std::invalid_argument);
}

TEST_CASE("histogram distance: identical, disjoint, empty") {
    std::vector<double> a = {1.0, 2.0, 3.0, 4.0};
    std::vector<double> b = {11.0, 12.0, 13.0, 14.0};
    CHECK(histogram_distance(a, a, 16) == 0.0);
    CHECK(histogram_distance(a, b, 16) == doctest::Approx(2.0)); // total variation * 2
    CHECK(histogram_distance({}, {}, 16) == 0.0);
}

TEST_CASE("two-start comparison: identical starts and seeds give zero distance") {
    SimConfig cfg = damped_base(1.0);
    cfg.T = 0.5;
    DampedConfig dc(cfg);
    InitialCondition a = cfg.ic;
    InitialCondition b = cfg.ic;
    TwoStartReport same = two_start_comparison(dc, a, b, {"V2", "H2"});
    CHECK(same.distances.at("V2") == 0.0);
    CHECK(same.distances.at("H2") == 0.0);

    b.seed = 1234; // different start, same driving noise: reported only
    TwoStartReport diff = two_start_comparison(dc, a, b, {"V2"});
    CHECK(diff.distances.at("V2") >= 0.0);
    CHECK(diff.distances.at("V2") <= 2.0);
}

TEST_CASE("observable series lookup") {
    DiagnosticsRecord rec;
    rec.V2 = {1.0};
    rec.H2 = {2.0};
    rec.L4_4 = {3.0};
    rec.grad2 = {4.0};
    rec.DA2 = {5.0};
    CHECK(observable_series(rec, "V2")[0] == 1.0);
    CHECK(observable_series(rec, "L4_4")[0] == 3.0);
    CHECK_THROWS_AS(observable_series(rec, "enstrophy"), std::invalid_argument);
}
