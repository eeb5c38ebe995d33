#include "tnse/invariant.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tnse {

DampedConfig::DampedConfig(SimConfig cfg) : sim(std::move(cfg)) {
    if (sim.params.alpha <= 0.0)
        throw std::invalid_argument("damped system requires model.alpha > 0");
    if (sim.params.forcing != ForcingKind::Fixed)
        throw std::invalid_argument("damped system requires fixed forcing (forcing.kind = fixed)");
    // coercivity: 2 nu |grad u|^2 - ||G(u)||^2 >= 2 delta |grad u|^2
    PathContext probe(sim);
    const double sup = probe.nm.sup_bound();
    delta = (2.0 * sim.params.nu - sup) / 2.0;
    if (delta <= 0.0) throw std::invalid_argument("noise bound violates the coercivity condition");
    gamma = std::min(sim.params.alpha / 2.0, delta);
}

Trajectory run_damped(const DampedConfig& cfg, std::size_t path_index) {
    return simulate_path(cfg.sim, path_index);
}

EmpiricalMeasure time_average(const std::vector<double>& times, const std::vector<double>& samples,
                              const std::string& name, double burn_in) {
    if (times.size() != samples.size()) throw std::invalid_argument("series length mismatch");
    if (!times.empty() && burn_in >= times.back())
        throw std::invalid_argument("burn-in must precede the horizon");

    EmpiricalMeasure m;
    m.observable = name;
    m.burn_in = burn_in;
    std::vector<double> kept;
    for (std::size_t i = 0; i < times.size(); ++i)
        if (times[i] >= burn_in) kept.push_back(samples[i]);
    m.n_samples = kept.size();
    if (kept.empty()) return m;

    m.time_average = std::accumulate(kept.begin(), kept.end(), 0.0) / kept.size();

    // window averages over 4 equal spans for convergence assessment
    const std::size_t wn = 4;
    for (std::size_t w = 0; w < wn; ++w) {
        const std::size_t a = w * kept.size() / wn, b = (w + 1) * kept.size() / wn;
        if (b > a)
            m.window_averages.push_back(
                std::accumulate(kept.begin() + a, kept.begin() + b, 0.0) / (b - a));
    }

    // Freedman-Diaconis binning
    std::vector<double> sorted = kept;
    std::sort(sorted.begin(), sorted.end());
    const double q1 = sorted[sorted.size() / 4];
    const double q3 = sorted[(3 * sorted.size()) / 4];
    const double lo = sorted.front(), hi = sorted.back();
    double width = 2.0 * (q3 - q1) / std::cbrt(static_cast<double>(sorted.size()));
    std::size_t bins;
    if (width <= 0.0 || hi <= lo) {
        bins = 1;
        width = std::max(hi - lo, 1.0);
    } else {
        bins = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((hi - lo) / width)));
        bins = std::min<std::size_t>(bins, 4096);
    }
    m.bin_edges.resize(bins + 1);
    const double span = std::max(hi - lo, 1e-300);
    for (std::size_t b = 0; b <= bins; ++b) m.bin_edges[b] = lo + span * b / bins;
    m.counts.assign(bins, 0);
    for (double v : kept) {
        std::size_t b = static_cast<std::size_t>((v - lo) / span * bins);
        if (b >= bins) b = bins - 1;
        ++m.counts[b];
    }
    return m;
}

TailBoundReport tail_bound_check(const std::vector<Trajectory>& ensemble, const DampedConfig& cfg,
                                 double R, double u0_H2) {
    if (R <= 0.0) throw std::invalid_argument("tail radius R must be positive");
    TailBoundReport rep;
    rep.R = R;
    std::vector<double> fractions;
    fractions.reserve(ensemble.size());
    const double R2 = R * R;
    for (const Trajectory& traj : ensemble) {
        const auto& V2 = traj.record.V2;
        if (V2.size() < 2) continue;
        std::size_t exceed = 0;
        for (std::size_t i = 0; i + 1 < V2.size(); ++i)
            if (V2[i] > R2) ++exceed;
        fractions.push_back(static_cast<double>(exceed) / (V2.size() - 1));
    }
    const auto ms = EnsembleStats::reduce(fractions);
    rep.exceedance = ms.mean;
    rep.se = ms.se;
    const double f2 = cfg.sim.params.f0.grid ? norm2_H(cfg.sim.params.f0) : 0.0;
    const double T = cfg.sim.T;
    rep.chebyshev_bound =
        (u0_H2 / (2.0 * cfg.gamma * T) + f2 / (4.0 * cfg.gamma * cfg.gamma)) / R2;
    return rep;
}

double histogram_distance(const std::vector<double>& a, const std::vector<double>& b,
                          std::size_t n_bins) {
    if (a.empty() && b.empty()) return 0.0;
    double lo = 1e300, hi = -1e300;
    for (double v : a) { lo = std::min(lo, v); hi = std::max(hi, v); }
    for (double v : b) { lo = std::min(lo, v); hi = std::max(hi, v); }
    if (hi <= lo) return 0.0;
    std::vector<double> ha(n_bins, 0.0), hb(n_bins, 0.0);
    auto fill = [&](const std::vector<double>& xs, std::vector<double>& h) {
        for (double v : xs) {
            std::size_t b = static_cast<std::size_t>((v - lo) / (hi - lo) * n_bins);
            if (b >= n_bins) b = n_bins - 1;
            h[b] += 1.0 / xs.size();
        }
    };
    fill(a, ha);
    fill(b, hb);
    double d = 0.0;
    for (std::size_t i = 0; i < n_bins; ++i) d += std::abs(ha[i] - hb[i]);
    return d;
}

const std::vector<double>& observable_series(const DiagnosticsRecord& rec,
                                             const std::string& name) {
    if (name == "V2") return rec.V2;
    if (name == "H2") return rec.H2;
    if (name == "L4_4") return rec.L4_4;
    if (name == "grad2") return rec.grad2;
    if (name == "DA2") return rec.DA2;
    throw std::invalid_argument("unknown observable: " + name);
}

TwoStartReport two_start_comparison(const DampedConfig& cfg, const InitialCondition& a,
                                    const InitialCondition& b,
                                    const std::vector<std::string>& observables) {
    SimConfig ca = cfg.sim, cb = cfg.sim;
    ca.ic = a;
    cb.ic = b;
    const double burn_in = 0.25 * cfg.sim.T;
    TwoStartReport rep;
    // same path index: Wiener paths differ only through the base seed,
    // so identical seeds and identical starts give identical samples
    Trajectory ta = simulate_path(ca, 0);
    Trajectory tb = simulate_path(cb, 0);
    for (const std::string& obs : observables) {
        std::vector<double> sa, sb;
        const auto& xa = observable_series(ta.record, obs);
        const auto& xb = observable_series(tb.record, obs);
        for (std::size_t i = 0; i < ta.record.t.size(); ++i)
            if (ta.record.t[i] >= burn_in) sa.push_back(xa[i]);
        for (std::size_t i = 0; i < tb.record.t.size(); ++i)
            if (tb.record.t[i] >= burn_in) sb.push_back(xb[i]);
        rep.distances[obs] = histogram_distance(sa, sb, 32);
    }
    return rep;
}

} // namespace tnse
