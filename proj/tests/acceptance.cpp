// Acceptance gate: one pass/fail line per criterion. Tolerances are
// pinned here; a FAIL line means the property genuinely failed.

#include "tnse/diagnostics.hpp"
#include "tnse/invariant.hpp"
#include "tnse/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace tnse;
namespace fs = std::filesystem;

#ifndef TNSE_SOURCE_DIR
#define TNSE_SOURCE_DIR "."
#endif

namespace {

// pinned tolerances
constexpr double kIdentityTol = 1e-12;     // criterion 1 (relative)
constexpr double kOracleTol = 1e-10;       // criterion 3 (relative)
constexpr double kDetOrderLo = 0.9;        // criterion 5
constexpr double kDetOrderHi = 1.1;
constexpr double kStrongOrderMin = 0.45;   // criterion 5
constexpr double kEnergyOrderMin = 1.0;    // criterion 6
constexpr double kDtAllowanceFactor = 1.0; // criterion 8: O(dt) slack = factor * dt

int failures = 0;

void report(int idx, bool ok, const std::string& what, const std::string& detail) {
    std::cout << "[" << idx << "] " << (ok ? "PASS" : "FAIL") << " " << what;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << std::endl;
    if (!ok) ++failures;
}

SpectralField random_ball(GridPtr grid, double n, std::uint64_t seed, SpectralTransform& xf,
                          double amplitude = 1.0) {
    std::uint64_t s = seed;
    NormalStream rng(splitmix64(s));
    PhysicalField p(grid);
    for (double& v : p.values) v = rng.normal();
    SpectralField u(grid, n);
    xf.to_spectral(p, u);
    project_ball_inplace(u, n);
    leray_project_inplace(u);
    for (std::size_t c = 0; c < 3; ++c) u.coeffs[c * grid->points()] = Complex{0.0, 0.0};
    const double cur = std::sqrt(norm2_H(u));
    if (cur > 0.0)
        for (Complex& c : u.coeffs) c *= amplitude / cur;
    return u;
}

// independent convolution-sum oracle for the convective term
SpectralField brute_force_B(const SpectralField& u) {
    const Grid& g = *u.grid;
    const std::size_t M = g.M(), np = g.points();
    const int half = static_cast<int>(M) / 2;
    const double n2 = u.ball_radius * u.ball_radius;
    struct Mode {
        int z[3];
        std::size_t lin;
    };
    std::vector<Mode> ball;
    auto wrap = [&](int z) { return static_cast<std::size_t>((z % (int)M + (int)M) % (int)M); };
    for (int zx = -half; zx < half; ++zx)
        for (int zy = -half; zy < half; ++zy)
            for (int zz = -half; zz < half; ++zz) {
                if (zx * zx + zy * zy + zz * zz > n2) continue;
                ball.push_back({{zx, zy, zz}, g.index(wrap(zx), wrap(zy), wrap(zz))});
            }
    SpectralField out(u.grid, u.ball_radius);
    for (const Mode& p : ball)
        for (const Mode& q : ball) {
            const int kx = p.z[0] + q.z[0], ky = p.z[1] + q.z[1], kz = p.z[2] + q.z[2];
            if (kx * kx + ky * ky + kz * kz > n2) continue;
            const std::size_t klin = g.index(wrap(kx), wrap(ky), wrap(kz));
            const double kvec[3] = {double(kx), double(ky), double(kz)};
            for (std::size_t i = 0; i < 3; ++i) {
                Complex acc{0.0, 0.0};
                for (std::size_t j = 0; j < 3; ++j)
                    acc += Complex{0.0, kvec[j]} * u.coeffs[j * np + p.lin] *
                           u.coeffs[i * np + q.lin];
                out.coeffs[i * np + klin] += acc;
            }
        }
    leray_project_inplace(out);
    return out;
}

bool suite_via_cli(const std::string& suite, std::string& detail) {
    std::ostringstream sink;
    const int rc = run_verify(suite, 20240817, sink);
    // keep the failing lines for the report
    if (rc != kExitOk) {
        std::istringstream in(sink.str());
        std::string line;
        while (std::getline(in, line))
            if (line.find("FAIL") != std::string::npos) detail += line + "; ";
    } else {
        std::size_t rows = 0;
        std::istringstream in(sink.str());
        std::string line;
        while (std::getline(in, line)) ++rows;
        detail = std::to_string(rows - 1) + " checks";
    }
    return rc == kExitOk;
}

void criterion_1() {
    std::string detail;
    const bool ok = suite_via_cli("operators", detail);
    report(1, ok, "operator identity suite at machine precision", detail);
}

void criterion_2() {
    std::string detail;
    const bool ok = suite_via_cli("taming", detail);
    report(2, ok, "taming rule: branch values, bounds, C1 gluing", detail);
}

void criterion_3() {
    GridPtr g = make_grid(16, 2.0 * M_PI);
    SpectralTransform xf(g);
    double worst = 0.0, worst_skew = 0.0;
    for (std::uint64_t trial = 0; trial < 100; ++trial) {
        SpectralField u = random_ball(g, 4.0, 7000 + trial, xf);
        SpectralField fast = nonlinear_B(u, xf);
        SpectralField slow = brute_force_B(u);
        double scale = 0.0, err = 0.0;
        for (std::size_t i = 0; i < fast.coeffs.size(); ++i) {
            scale = std::max(scale, std::abs(slow.coeffs[i]));
            err = std::max(err, std::abs(fast.coeffs[i] - slow.coeffs[i]));
        }
        worst = std::max(worst, err / scale);
        const double skew =
            std::abs(inner_H(fast, u)) / (std::sqrt(norm2_H(fast) * norm2_H(u)) + 1e-300);
        worst_skew = std::max(worst_skew, skew);
    }
    std::ostringstream d;
    d << "max rel err " << worst << ", max skew residual " << worst_skew;
    report(3, worst <= kOracleTol && worst_skew <= kOracleTol,
           "pseudo-spectral convective term matches the convolution oracle", d.str());
}

void criterion_4() {
    std::string detail;
    const bool ok = suite_via_cli("energy", detail);
    report(4, ok, "taming/dissipation/growth inequality suite, zero violations", detail);
}

SimConfig strong_cfg(double dt, std::uint64_t seed) {
    SimConfig cfg;
    cfg.M = 16;
    cfg.cutoff_n = 4.0;
    cfg.dt = dt;
    cfg.T = 0.25;
    cfg.seed = seed;
    cfg.ic.kind = InitialCondition::Kind::RandomLowMode;
    cfg.ic.amplitude = 1.0;
    cfg.diag.heavy = false;
    cfg.diag.record_every = 1u << 20; // endpoints only
    return cfg;
}

void criterion_5() {
    // deterministic part: exact linear-mode decay, first order in dt
    double errs[2];
    for (int i = 0; i < 2; ++i) {
        SimConfig cfg;
        cfg.M = 16;
        cfg.cutoff_n = 4.0;
        cfg.dt = i == 0 ? 2e-3 : 1e-3;
        cfg.T = 1.0;
        cfg.params.alpha = 0.5;
        cfg.params.taming_enabled = false;
        cfg.params.kappa = 0.0;
        cfg.ic.kind = InitialCondition::Kind::SingleMode;
        cfg.ic.mode = {0, 2, 0};
        cfg.ic.amplitude = 0.1;
        cfg.diag.heavy = false;
        std::vector<std::vector<double>> zeros(cfg.steps(),
                                               std::vector<double>(cfg.noise_J, 0.0));
        Trajectory tr = simulate_path(cfg, 0, &zeros);
        const double h0 = std::sqrt(tr.record.H2.front());
        const double exact = h0 * std::exp(-4.5 * cfg.T);
        errs[i] = std::abs(std::sqrt(tr.summary.final_H2) - exact) / exact;
    }
    const double det_order = std::log2(errs[0] / errs[1]);

    // stochastic part: strong error against a dt/16 reference with
    // shared (summed) Brownian increments, three dyadic levels
    const double dts[3] = {5e-3, 2.5e-3, 1.25e-3};
    const double dt_ref = dts[2] / 16.0;
    const std::size_t n_paths = 128;
    const std::size_t J = 4;
    double errsum[3] = {0.0, 0.0, 0.0};
    for (std::size_t pidx = 0; pidx < n_paths; ++pidx) {
        SimConfig ref = strong_cfg(dt_ref, 555);
        NormalStream stream(seed_for_path(ref.seed, pidx));
        const std::size_t ref_steps = ref.steps();
        std::vector<std::vector<double>> fine(ref_steps);
        for (auto& dw : fine) dw = wiener_increments(stream, J, dt_ref);
        Trajectory rtr = simulate_path(ref, pidx, &fine);

        for (int lvl = 0; lvl < 3; ++lvl) {
            SimConfig cfg = strong_cfg(dts[lvl], 555);
            const std::size_t ratio = static_cast<std::size_t>(std::llround(dts[lvl] / dt_ref));
            std::vector<std::vector<double>> coarse(cfg.steps(),
                                                    std::vector<double>(J, 0.0));
            for (std::size_t k = 0; k < cfg.steps(); ++k)
                for (std::size_t m = 0; m < ratio; ++m)
                    for (std::size_t j = 0; j < J; ++j)
                        coarse[k][j] += fine[k * ratio + m][j];
            Trajectory ctr = simulate_path(cfg, pidx, &coarse);
            double d2 = 0.0;
            SpectralField diff = ctr.final_state;
            for (std::size_t i = 0; i < diff.coeffs.size(); ++i)
                diff.coeffs[i] -= rtr.final_state.coeffs[i];
            d2 = norm2_H(diff);
            errsum[lvl] += std::sqrt(d2);
        }
    }
    // least-squares slope of log2(err) against log2(dt)
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (int lvl = 0; lvl < 3; ++lvl) {
        const double x = std::log2(dts[lvl]), y = std::log2(errsum[lvl] / n_paths);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double strong_order = (3.0 * sxy - sx * sy) / (3.0 * sxx - sx * sx);

    std::ostringstream d;
    d << "deterministic order " << det_order << ", strong order " << strong_order;
    report(5,
           det_order >= kDetOrderLo && det_order <= kDetOrderHi &&
               strong_order >= kStrongOrderMin,
           "integrator convergence: linear oracle and coupled strong refinement", d.str());
}

void criterion_6() {
    double rms[3];
    const double dts[3] = {5e-3, 2.5e-3, 1.25e-3};
    for (int lvl = 0; lvl < 3; ++lvl) {
        SimConfig cfg;
        cfg.M = 16;
        cfg.cutoff_n = 4.0;
        cfg.dt = dts[lvl];
        cfg.T = 0.25;
        cfg.seed = 321;
        cfg.ic.amplitude = 2.0;
        cfg.diag.heavy = true;
        cfg.diag.record_every = 1u << 20;
        Trajectory tr = simulate_path(cfg, 0);
        rms[lvl] = tr.summary.rms_energy_residual;
    }
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (int lvl = 0; lvl < 3; ++lvl) {
        const double x = std::log2(dts[lvl]), y = std::log2(rms[lvl]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double order = (3.0 * sxy - sx * sy) / (3.0 * sxx - sx * sx);
    std::ostringstream d;
    d << "rms residuals " << rms[0] << " / " << rms[1] << " / " << rms[2] << ", order " << order;
    report(6, order >= kEnergyOrderMin, "energy budget residual decays at order >= 1 in dt",
           d.str());
}

void criterion_7() {
    // cutoff ladder with fixed rho = 2, T = 1; grids sized for the
    // dealiased ball (M >= 3n)
    struct Rung {
        double n;
        std::size_t M;
    };
    const Rung ladder[3] = {{4.0, 16}, {6.0, 20}, {8.0, 24}};
    std::vector<MonitorEstimate> supV, intDA, intL4, sup2, sup3;
    bool finite = true;
    for (const Rung& r : ladder) {
        SimConfig cfg;
        cfg.M = r.M;
        cfg.cutoff_n = r.n;
        cfg.dt = 2e-3;
        cfg.T = 1.0;
        cfg.n_paths = 128;
        cfg.seed = 808;
        cfg.R_stop = 10.0;
        cfg.ic.kind = InitialCondition::Kind::RandomLowMode;
        cfg.ic.amplitude = 2.0; // rho
        cfg.ic.norm = "V";
        cfg.diag.heavy = false;
        cfg.diag.record_every = 1u << 20;
        EnsembleStats es = simulate_ensemble(cfg);
        MonitorReport mr = apriori_monitors(es);
        HigherMoments h2 = higher_moment_monitor(es, 2.0);
        HigherMoments h3 = higher_moment_monitor(es, 3.0);
        finite = finite && mr.all_finite && std::isfinite(h2.sup_V2p.mean) &&
                 std::isfinite(h2.int_V2p1_A2.mean) && std::isfinite(h3.sup_V2p.mean) &&
                 std::isfinite(h3.int_V2p1_A2.mean);
        supV.push_back(mr.sup_V2);
        intDA.push_back(mr.int_DA2);
        intL4.push_back(mr.int_L4);
        sup2.push_back(h2.sup_V2p);
        sup3.push_back(h3.sup_V2p);
    }
    const bool no_growth = !ladder_monotone_growth(supV) && !ladder_monotone_growth(intDA) &&
                           !ladder_monotone_growth(intL4) && !ladder_monotone_growth(sup2) &&
                           !ladder_monotone_growth(sup3);
    std::ostringstream d;
    d << "sup_V2 " << supV[0].mean << " / " << supV[1].mean << " / " << supV[2].mean
      << ", int_DA2 " << intDA[0].mean << " / " << intDA[1].mean << " / " << intDA[2].mean
      << ", int_L4 " << intL4[0].mean << " / " << intL4[1].mean << " / " << intL4[2].mean;
    report(7, finite && no_growth,
           "stopped a-priori monitors bounded across the cutoff ladder n = 4, 6, 8", d.str());
}

void criterion_8() {
    Config c = Config::from_file(std::string(TNSE_SOURCE_DIR) + "/configs/invariant_bound.cfg");
    DampedConfig dc(c.to_sim_config());
    const double T = dc.sim.T;

    std::vector<Trajectory> ens;
    std::vector<double> avgs;
    for (std::size_t pidx = 0; pidx < dc.sim.n_paths; ++pidx) {
        ens.push_back(run_damped(dc, pidx));
        avgs.push_back(ens.back().summary.int_V2 / T);
    }
    const auto ms = EnsembleStats::reduce(avgs);
    const double u0_H2 = 1.0; // |u0|^2_H pinned by the config
    const double f2 = norm2_H(dc.sim.params.f0);
    const double bound = u0_H2 / (2.0 * dc.gamma * T) + f2 / (4.0 * dc.gamma * dc.gamma);
    const double allowance = kDtAllowanceFactor * dc.sim.dt;
    const bool mean_ok = ms.mean <= bound + 3.0 * ms.se + allowance;

    // tail check at the radius whose Chebyshev bound equals 0.1
    const double R = std::sqrt(bound / 0.1);
    TailBoundReport tb = tail_bound_check(ens, dc, R, u0_H2);
    const bool tail_ok = tb.exceedance <= tb.chebyshev_bound + 3.0 * tb.se;

    std::ostringstream d;
    d << "mean (1/T)int||u||_V^2 = " << ms.mean << " +- " << ms.se << " vs bound " << bound
      << " + 3SE + " << allowance << "; tail " << tb.exceedance << " vs " << tb.chebyshev_bound
      << " at R = " << R;
    report(8, mean_ok && tail_ok, "time-averaged V-norm obeys the damped-system bound", d.str());
}

void criterion_9() {
    Config c = Config::from_file(std::string(TNSE_SOURCE_DIR) + "/configs/demo.cfg");
    const fs::path base = fs::temp_directory_path() / "tnse_accept_repro";
    std::error_code ec;
    fs::remove_all(base, ec);
    std::ostringstream sink;
    const int rc1 = run_simulate(c, (base / "a").string(), sink);
    const int rc2 = run_simulate(c, (base / "b").string(), sink);
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    const std::string d1 = slurp(base / "a" / "diagnostics.csv");
    const std::string d2 = slurp(base / "b" / "diagnostics.csv");
    const bool ok = rc1 == kExitOk && rc2 == kExitOk && !d1.empty() && d1 == d2;
    report(9, ok, "re-running a config reproduces bitwise-identical diagnostics",
           std::to_string(d1.size()) + " bytes compared");
    fs::remove_all(base, ec);
}

void criterion_10() {
    SimConfig cfg;
    cfg.M = 16;
    cfg.cutoff_n = 4.0;
    cfg.dt = 1e-3;
    cfg.T = 5.0;
    cfg.seed = 616;
    cfg.ic.kind = InitialCondition::Kind::RandomLowMode;
    cfg.ic.amplitude = 10.0;
    cfg.ic.norm = "V";
    cfg.diag.heavy = false;
    cfg.diag.record_every = 100;

    bool tamed_finite = false;
    double tamed_sup = 0.0;
    try {
        Trajectory tr = simulate_path(cfg, 0);
        tamed_finite = all_finite(tr.final_state);
        tamed_sup = tr.summary.sup_V2;
    } catch (const BlowUpError&) {
        tamed_finite = false;
    }

    // paired untamed run: reported, never asserted
    std::ostringstream untamed;
    SimConfig off = cfg;
    off.params.taming_enabled = false;
    try {
        Trajectory tr = simulate_path(off, 0);
        untamed << "untamed sup||u||_V^2 = " << tr.summary.sup_V2 << ", final |u|_H^2 = "
                << tr.summary.final_H2;
    } catch (const BlowUpError&) {
        untamed << "untamed run blew up (non-finite field)";
    }
    std::ostringstream d;
    d << "tamed sup||u||_V^2 = " << tamed_sup << "; " << untamed.str();
    report(10, tamed_finite, "taming keeps amplitude-10 data finite over T = 5", d.str());
}

} // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    const auto dt = std::chrono::duration_cast<std::chrono::seconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    std::cout << (failures == 0 ? "ALL CRITERIA PASS" : "CRITERIA FAILED") << " (" << failures
              << " failure(s), " << dt << " s)" << std::endl;
    return failures == 0 ? 0 : 1;
}
