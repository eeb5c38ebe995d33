#pragma once

#include <map>
#include <string>

#include "tnse/diagnostics.hpp"

namespace tnse {

/// Damped configuration: alpha > 0, fixed forcing, with the coercivity
/// margin delta = (2 nu - sup||sigma||^2)/2 and gamma = min(alpha/2, delta)
/// checked at construction.
struct DampedConfig {
    SimConfig sim;
    double delta = 0.0;
    double gamma = 0.0;

    explicit DampedConfig(SimConfig cfg);
};

Trajectory run_damped(const DampedConfig& cfg, std::size_t path_index = 0);

struct EmpiricalMeasure {
    std::string observable;
    double burn_in = 0.0;
    std::vector<double> bin_edges;
    std::vector<std::size_t> counts;
    double time_average = 0.0;
    std::vector<double> window_averages; // averages over 4 equal windows
    std::size_t n_samples = 0;
};

/// Time average and Freedman-Diaconis histogram of one recorded
/// observable series past the burn-in time.
EmpiricalMeasure time_average(const std::vector<double>& times, const std::vector<double>& samples,
                              const std::string& name, double burn_in);

struct TailBoundReport {
    double R = 0.0;
    double exceedance = 0.0; // MC estimate of (1/T) int 1{||u||_V > R} dt
    double se = 0.0;
    double chebyshev_bound = 0.0; // (1/R^2)[|u0|^2_H/(2 gamma T) + |f|^2_H/(4 gamma^2)]
};

/// Time-averaged V-norm exceedance probability vs the Chebyshev bound.
TailBoundReport tail_bound_check(const std::vector<Trajectory>& ensemble, const DampedConfig& cfg,
                                 double R, double u0_H2);

/// L1 distance between two normalized histograms on shared bins.
double histogram_distance(const std::vector<double>& a, const std::vector<double>& b,
                          std::size_t n_bins);

struct TwoStartReport {
    std::map<std::string, double> distances; // per observable, reported only
};

TwoStartReport two_start_comparison(const DampedConfig& cfg, const InitialCondition& a,
                                    const InitialCondition& b,
                                    const std::vector<std::string>& observables);

/// Observable series lookup by name from a diagnostics record
/// (V2, H2, L4_4, grad2, DA2).
const std::vector<double>& observable_series(const DiagnosticsRecord& rec,
                                             const std::string& name);

} // namespace tnse
