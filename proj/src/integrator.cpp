#include "tnse/integrator.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace tnse {

void SimConfig::validate() const {
    if (dt <= 0.0) throw std::invalid_argument("sim.dt must be positive");
    if (T < 0.0) throw std::invalid_argument("sim.T must be nonnegative");
    if (cutoff_n < 0.0) throw std::invalid_argument("sim.n must be nonnegative");
    if (n_paths < 1) throw std::invalid_argument("sim.paths must be >= 1");
    if (R_stop < 0.0) throw std::invalid_argument("sim.R_stop must be positive when set");
    if (scheme == Scheme::ExplicitEM) {
        const double lam = params.alpha + params.nu * cutoff_n * cutoff_n;
        if (lam > 0.0 && dt > 2.0 / lam)
            throw std::invalid_argument(
                "sim.dt exceeds the explicit-scheme stability bound 2/(alpha + nu n^2)");
    }
    Grid probe(M, L); // throws on bad M or L
    (void)probe;
}

PathContext::PathContext(const SimConfig& cfg)
    : grid(make_grid(cfg.M, cfg.L)),
      xf(grid),
      nm(cfg.noise_kind == NoiseKind::Constant
             ? NoiseModel::constant(cfg.noise_J)
             : NoiseModel::banded(grid, cfg.noise_J, cfg.noise_k_sigma, cfg.seed)) {}

SpectralField make_initial_state(const SimConfig& cfg, PathContext& ctx) {
    const GridPtr grid = ctx.grid;
    const std::size_t np = grid->points();
    SpectralField u(grid, cfg.cutoff_n);
    const InitialCondition& ic = cfg.ic;

    switch (ic.kind) {
    case InitialCondition::Kind::Zero:
        return u;
    case InitialCondition::Kind::SingleMode: {
        const Grid& g = *grid;
        const std::size_t M = g.M();
        auto wrap = [&](int z) { return static_cast<std::size_t>((z % (int)M + (int)M) % (int)M); };
        const std::size_t ix = wrap(ic.mode[0]), iy = wrap(ic.mode[1]), iz = wrap(ic.mode[2]);
        const std::size_t cx = wrap(-ic.mode[0]), cy = wrap(-ic.mode[1]), cz = wrap(-ic.mode[2]);
        const std::size_t lin = g.index(ix, iy, iz), linc = g.index(cx, cy, cz);
        // any direction not parallel to k; Leray projection makes it transverse
        const auto k = g.wavevector(ix, iy, iz);
        std::array<double, 3> e = {1.0, 0.0, 0.0};
        if (std::abs(k[1]) < 1e-12 && std::abs(k[2]) < 1e-12) e = {0.0, 1.0, 0.0};
        for (std::size_t c = 0; c < 3; ++c) {
            u.coeffs[c * np + lin] = Complex{0.5 * e[c], 0.0};
            u.coeffs[c * np + linc] = Complex{0.5 * e[c], 0.0};
        }
        leray_project_inplace(u);
        break;
    }
    case InitialCondition::Kind::RandomLowMode: {
        std::uint64_t s = cfg.seed ^ (0x1c0ULL + 0x9e3779b9ULL * ic.seed);
        NormalStream rng(splitmix64(s));
        PhysicalField p(grid);
        for (double& v : p.values) v = rng.normal();
        ctx.xf.to_spectral(p, u);
        project_ball_inplace(u, std::min(ic.k_max, cfg.cutoff_n));
        leray_project_inplace(u);
        for (std::size_t c = 0; c < 3; ++c) u.coeffs[c * np] = Complex{0.0, 0.0};
        break;
    }
    }
    project_ball_inplace(u, cfg.cutoff_n);
    const double cur = ic.norm == "V" ? std::sqrt(norm2_V(u)) : std::sqrt(norm2_H(u));
    if (cur > 0.0) {
        const double s = ic.amplitude / cur;
        for (Complex& c : u.coeffs) c *= s;
    }
    return u;
}

namespace {

struct StepEval {
    DriftParts parts;
    std::vector<SpectralField> Gs;
    double hs2 = 0.0;
};

StepEval evaluate(const SpectralField& u, const SimConfig& cfg, PathContext& ctx) {
    StepEval ev;
    ev.parts = drift_parts(u, cfg.params, ctx.xf);
    ev.Gs = ctx.nm.apply(u, ctx.xf);
    for (const SpectralField& G : ev.Gs) ev.hs2 += norm2_H(G);
    return ev;
}

SpectralField advance(const SpectralField& state, const StepEval& ev, const SimConfig& cfg,
                      const std::vector<double>& dW) {
    SpectralField next = state;
    const std::size_t n = state.coeffs.size();
    for (std::size_t i = 0; i < n; ++i)
        next.coeffs[i] +=
            cfg.dt * (-ev.parts.B.coeffs[i] - ev.parts.g.coeffs[i] + ev.parts.f.coeffs[i]);
    for (std::size_t j = 0; j < ev.Gs.size(); ++j)
        for (std::size_t i = 0; i < n; ++i) next.coeffs[i] += dW[j] * ev.Gs[j].coeffs[i];

    const Grid& g = *state.grid;
    const std::size_t np = g.points();
    const std::size_t M = g.M();
    for (std::size_t ix = 0; ix < M; ++ix)
        for (std::size_t iy = 0; iy < M; ++iy)
            for (std::size_t iz = 0; iz < M; ++iz) {
                const std::size_t lin = g.index(ix, iy, iz);
                const double lam = cfg.params.alpha + cfg.params.nu * g.k_squared(ix, iy, iz);
                if (cfg.scheme == Scheme::SemiImplicitEM) {
                    const double fac = 1.0 / (1.0 + cfg.dt * lam);
                    for (std::size_t c = 0; c < 3; ++c) next.coeffs[c * np + lin] *= fac;
                } else {
                    for (std::size_t c = 0; c < 3; ++c)
                        next.coeffs[c * np + lin] -= cfg.dt * lam * state.coeffs[c * np + lin];
                }
            }
    project_ball_inplace(next, cfg.cutoff_n);
    leray_project_inplace(next);
    if (!all_finite(next)) throw BlowUpError("non-finite field after step");
    return next;
}

} // namespace

SpectralField step(const SpectralField& state, const SimConfig& cfg, PathContext& ctx,
                   const std::vector<double>& dW) {
    return advance(state, evaluate(state, cfg, ctx), cfg, dW);
}

Trajectory simulate_path(const SimConfig& cfg, std::size_t path_index,
                         const std::vector<std::vector<double>>* increments) {
    cfg.validate();
    PathContext ctx(cfg);
    NormalStream stream(seed_for_path(cfg.seed, path_index));

    SpectralField state = make_initial_state(cfg, ctx);
    Trajectory traj;
    PathSummary& sum = traj.summary;
    const std::size_t steps = cfg.steps();
    const double dt = cfg.dt;
    double res_sq_acc = 0.0;
    bool hit = false;

    for (std::size_t k = 0; k <= steps; ++k) {
        const double t = k * dt;
        const bool last = (k == steps);
        const bool store = (k % std::max<std::size_t>(cfg.diag.record_every, 1) == 0) || last;

        const double H2 = norm2_H(state);
        const double grad2 = norm2_grad(state);
        const double V2 = H2 + grad2;
        const double A2 = norm2_A(state);
        const double DA2 = H2 + A2;
        const double L4 = norm4_L4(state, ctx.xf);
        if (!hit && cfg.R_stop > 0.0 && std::sqrt(V2) >= cfg.R_stop) {
            hit = true;
            sum.hitting_time = t;
        }

        sum.sup_V2 = std::max(sum.sup_V2, V2);
        if (!hit || t <= sum.hitting_time) sum.sup_V2_stop = std::max(sum.sup_V2_stop, V2);
        if (!last) {
            sum.int_V2 += V2 * dt;
            sum.int_DA2 += DA2 * dt;
            sum.int_L4 += L4 * dt;
            sum.int_V2p1_A2_p2 += V2 * A2 * dt;
            sum.int_V2p1_A2_p3 += V2 * V2 * A2 * dt;
            if (!hit) {
                sum.int_DA2_stop += DA2 * dt;
                sum.int_L4_stop += L4 * dt;
                sum.int_V2p1_A2_p2_stop += V2 * A2 * dt;
                sum.int_V2p1_A2_p3_stop += V2 * V2 * A2 * dt;
            }
        }

        StepEval ev;
        double F = 0.0, D = 0.0;
        const bool have_eval = !last || cfg.diag.heavy;
        if (have_eval) {
            ev = evaluate(state, cfg, ctx);
            F = growth_functional_F(state, ev.parts, cfg.params, ev.hs2);
            const double drift_ip = -cfg.params.alpha * H2 - cfg.params.nu * grad2 -
                                    inner_H(ev.parts.B, state) - inner_H(ev.parts.g, state) +
                                    inner_H(ev.parts.f, state);
            D = drift_ip + 0.5 * ev.hs2;
        }

        if (store) {
            DiagnosticsRecord& r = traj.record;
            r.t.push_back(t);
            r.H2.push_back(H2);
            r.grad2.push_back(grad2);
            r.V2.push_back(V2);
            r.DA2.push_back(DA2);
            r.L4_4.push_back(L4);
            r.ugradu2.push_back(cfg.diag.heavy ? norm2_u_grad_u(state, ctx.xf) : 0.0);
            r.g_energy.push_back(have_eval ? std::max(inner_H(ev.parts.g, state), 0.0) : 0.0);
            r.F.push_back(F);
            r.D.push_back(D);
            r.hit.push_back(hit ? 1 : 0);
            // residual filled below for non-final rows
        }
        if (cfg.diag.snapshot_every > 0 && (k % cfg.diag.snapshot_every == 0 || last)) {
            traj.snapshot_times.push_back(t);
            traj.snapshots.push_back(state);
        }

        double residual = 0.0;
        if (!last) {
            std::vector<double> dW =
                increments ? (*increments)[k] : wiener_increments(stream, ctx.nm.J(), dt);
            SpectralField next = advance(state, ev, cfg, dW);
            if (cfg.diag.heavy) {
                const double drift_ip = -cfg.params.alpha * H2 - cfg.params.nu * grad2 -
                                        inner_H(ev.parts.B, state) - inner_H(ev.parts.g, state) +
                                        inner_H(ev.parts.f, state);
                double noise_ip = 0.0;
                for (std::size_t j = 0; j < ev.Gs.size(); ++j)
                    noise_ip += inner_H(state, ev.Gs[j]) * dW[j];
                residual = norm2_H(next) - H2 - 2.0 * dt * drift_ip - ev.hs2 * dt - 2.0 * noise_ip;
                sum.max_energy_residual = std::max(sum.max_energy_residual, std::abs(residual));
                res_sq_acc += residual * residual;
            }
            state = std::move(next);
        }
        if (store) traj.record.energy_residual.push_back(residual);
    }

    sum.rms_energy_residual = steps > 0 ? std::sqrt(res_sq_acc / steps) : 0.0;
    sum.final_H2 = norm2_H(state);
    traj.final_state = std::move(state);
    return traj;
}

EnsembleStats simulate_ensemble(const SimConfig& cfg) {
    EnsembleStats stats;
    stats.paths.resize(cfg.n_paths);

    std::size_t n_threads = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("TNSE_THREADS")) n_threads = std::strtoul(env, nullptr, 10);
    n_threads = std::max<std::size_t>(1, std::min<std::size_t>(n_threads, cfg.n_paths));

    if (n_threads == 1) {
        for (std::size_t i = 0; i < cfg.n_paths; ++i)
            stats.paths[i] = simulate_path(cfg, i).summary;
        return stats;
    }
    std::atomic<std::size_t> next_path{0};
    std::vector<std::thread> workers;
    workers.reserve(n_threads);
    for (std::size_t w = 0; w < n_threads; ++w)
        workers.emplace_back([&]() {
            for (;;) {
                const std::size_t i = next_path.fetch_add(1);
                if (i >= cfg.n_paths) break;
                stats.paths[i] = simulate_path(cfg, i).summary;
            }
        });
    for (auto& t : workers) t.join();
    return stats;
}

EnsembleStats::MeanSE EnsembleStats::reduce(const std::vector<double>& xs) {
    MeanSE out;
    const double n = static_cast<double>(xs.size());
    if (xs.empty()) return out;
    double s = 0.0;
    for (double x : xs) s += x;
    out.mean = s / n;
    if (xs.size() > 1) {
        double v = 0.0;
        for (double x : xs) v += (x - out.mean) * (x - out.mean);
        out.se = std::sqrt(v / (n - 1.0) / n);
    }
    return out;
}

EnsembleStats::MeanSE EnsembleStats::stat(double PathSummary::* member) const {
    std::vector<double> xs(paths.size());
    for (std::size_t i = 0; i < paths.size(); ++i) xs[i] = paths[i].*member;
    return reduce(xs);
}

} // namespace tnse
