#pragma once

#include <iosfwd>

#include "tnse/config.hpp"
#include "tnse/invariant.hpp"

namespace tnse {

// Exit codes used by the CLI.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerifyFailed = 2;
constexpr int kExitBlowUp = 3;

/// `simulate`: run the ensemble, write diagnostics.csv, snapshots and
/// run_manifest under out_dir.
int run_simulate(const Config& cfg, const std::string& out_dir, std::ostream& log);

/// `verify --suite ...`: machine-readable report, one line per
/// invariant: name, reference, observed, bound, verdict.
int run_verify(const std::string& suite, std::uint64_t seed, std::ostream& out);

/// `invariant`: long-horizon damped run; writes measure_<obs>.csv and
/// averages.csv.
int run_invariant(const Config& cfg, const std::vector<std::string>& observables, double burn_in,
                  const std::string& out_dir, std::ostream& log);

/// `emit-plots`: derive plot-ready CSVs from a simulate output dir.
int run_emit_plots(const std::string& run_dir, std::ostream& log);

} // namespace tnse
