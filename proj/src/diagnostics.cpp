#include "tnse/diagnostics.hpp"

#include <cmath>

namespace tnse {

double drift_dissipation(const SpectralField& u, const DriftParams& p, const NoiseModel& nm,
                         SpectralTransform& xf) {
    DriftParts parts = drift_parts(u, p, xf);
    const double lin = -p.alpha * norm2_H(u) - p.nu * norm2_grad(u);
    const double rest = -inner_H(parts.B, u) - inner_H(parts.g, u) + inner_H(parts.f, u);
    return lin + rest + 0.5 * nm.hs_norm2_H(u, xf);
}

double dissipation_constant(const DriftParams& p) { return p.tf.N + 1.5 + 0.5 * p.C_f(); }

EnergyBudget energy_budget(const Trajectory& traj) {
    EnergyBudget out;
    double acc = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i + 1 < traj.record.energy_residual.size(); ++i) {
        const double r = traj.record.energy_residual[i];
        out.max_abs = std::max(out.max_abs, std::abs(r));
        acc += r * r;
        ++n;
    }
    out.rms = n > 0 ? std::sqrt(acc / n) : 0.0;
    return out;
}

namespace {
MonitorEstimate to_estimate(EnsembleStats::MeanSE m) { return {m.mean, m.se}; }
} // namespace

MonitorReport apriori_monitors(const EnsembleStats& ensemble) {
    MonitorReport rep;
    rep.sup_V2 = to_estimate(ensemble.stat(&PathSummary::sup_V2_stop));
    rep.int_DA2 = to_estimate(ensemble.stat(&PathSummary::int_DA2_stop));
    rep.int_L4 = to_estimate(ensemble.stat(&PathSummary::int_L4_stop));
    rep.all_finite = std::isfinite(rep.sup_V2.mean) && std::isfinite(rep.int_DA2.mean) &&
                     std::isfinite(rep.int_L4.mean);
    return rep;
}

bool ladder_monotone_growth(const std::vector<MonitorEstimate>& rungs) {
    if (rungs.size() < 2) return false;
    for (std::size_t i = 0; i + 1 < rungs.size(); ++i) {
        const double gap = rungs[i + 1].mean - rungs[i].mean;
        const double tol = 3.0 * std::sqrt(rungs[i].se * rungs[i].se + rungs[i + 1].se * rungs[i + 1].se);
        if (gap <= tol) return false; // a non-growing rung breaks the chain
    }
    return true;
}

HigherMoments higher_moment_monitor(const EnsembleStats& ensemble, double p) {
    if (p < 1.0 || p > 3.0) throw std::invalid_argument("moment order p must lie in [1,3]");
    HigherMoments out;
    // sup of a power equals the power of the sup
    std::vector<double> sup(ensemble.paths.size());
    for (std::size_t i = 0; i < ensemble.paths.size(); ++i)
        sup[i] = std::pow(ensemble.paths[i].sup_V2_stop, p);
    out.sup_V2p = to_estimate(EnsembleStats::reduce(sup));

    if (p == 1.0) {
        std::vector<double> xs(ensemble.paths.size());
        for (std::size_t i = 0; i < xs.size(); ++i)
            xs[i] = ensemble.paths[i].int_DA2_stop; // graph norm dominates |A u|^2
        out.int_V2p1_A2 = to_estimate(EnsembleStats::reduce(xs));
    } else if (p == 2.0) {
        out.int_V2p1_A2 = to_estimate(ensemble.stat(&PathSummary::int_V2p1_A2_p2_stop));
    } else if (p == 3.0) {
        out.int_V2p1_A2 = to_estimate(ensemble.stat(&PathSummary::int_V2p1_A2_p3_stop));
    } else {
        throw std::invalid_argument(
            "moment integrals are accumulated for p in {1,2,3}; other orders are not recorded");
    }
    return out;
}

} // namespace tnse
