#pragma once

#include "tnse/integrator.hpp"

namespace tnse {

/// Energy-form dissipation functional
/// D(u) = <u, -A_alpha u - B(u) - g_n(u) + f_n(u)>_H + 1/2 ||G(u)||^2_HS.
double drift_dissipation(const SpectralField& u, const DriftParams& p, const NoiseModel& nm,
                         SpectralTransform& xf);

/// Constant C_{N,f} = N + 3/2 + C_f/2 in the dissipation bound
/// D(u) <= -(7/8)|grad u|^2 - ||u||^4_{L4} + C_{N,f}|u|^2_H + 1/2|b_f|_{L1}
/// (at nu = 1, alpha = 0).
double dissipation_constant(const DriftParams& p);

struct EnergyBudget {
    double max_abs = 0.0;
    double rms = 0.0;
};

/// Summary of the per-step Ito-expansion residuals stored in a
/// trajectory's diagnostics record.
EnergyBudget energy_budget(const Trajectory& traj);

struct MonitorEstimate {
    double mean = 0.0;
    double se = 0.0;
};

struct MonitorReport {
    MonitorEstimate sup_V2;   // E sup_t ||u(t ^ tau_R)||^2_V
    MonitorEstimate int_DA2;  // E int_0^{T^tau_R} |u|^2_{D(A)} dt
    MonitorEstimate int_L4;   // E int_0^{T^tau_R} ||u||^4_{L4} dt
    bool all_finite = false;
};

/// Stopped moment monitors for one ensemble.
MonitorReport apriori_monitors(const EnsembleStats& ensemble);

/// Monotone-growth flag across a cutoff ladder: failure when each rung
/// exceeds the previous one by more than 3 combined standard errors.
bool ladder_monotone_growth(const std::vector<MonitorEstimate>& rungs);

struct HigherMoments {
    MonitorEstimate sup_V2p;        // E sup ||u||^{2p}_V (stopped)
    MonitorEstimate int_V2p1_A2;    // E int ||u||^{2(p-1)}_V |A u|^2 dt (stopped)
};

/// Higher-moment monitors; p must lie in [1,3]. Exact accumulators
/// exist for p = 1, 2, 3; other p are rejected.
HigherMoments higher_moment_monitor(const EnsembleStats& ensemble, double p);

} // namespace tnse
