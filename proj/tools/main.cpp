#include "tnse/runner.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

int main(int argc, char** argv) {
    CLI::App app{"tnse: pseudo-spectral simulator for the stochastic tamed Navier-Stokes system"};
    app.require_subcommand(1);

    // simulate
    auto* sim = app.add_subcommand("simulate", "integrate an ensemble and write diagnostics");
    std::string sim_config, sim_out = "run";
    std::size_t sim_paths = 0;
    std::uint64_t sim_seed = 0;
    bool sim_have_seed = false;
    sim->add_option("--config", sim_config, "config file")->required();
    sim->add_option("--paths", sim_paths, "override sim.paths");
    sim->add_option("--seed", sim_seed, "override sim.seed")->each([&](const std::string&) {
        sim_have_seed = true;
    });
    sim->add_option("--out", sim_out, "output directory");

    // verify
    auto* ver = app.add_subcommand("verify", "run a verification suite");
    std::string suite = "all";
    std::uint64_t ver_seed = 12345;
    ver->add_option("--suite", suite, "operators|taming|energy|apriori|all");
    ver->add_option("--seed", ver_seed, "suite seed");

    // invariant
    auto* inv = app.add_subcommand("invariant", "long-horizon damped run with time averaging");
    std::string inv_config, inv_out = "invariant_run", obs_list = "V2,H2,L4_4";
    double burn_in = 0.0;
    inv->add_option("--config", inv_config, "config file")->required();
    inv->add_option("--observables", obs_list, "comma-separated: V2,H2,L4_4,grad2,DA2");
    inv->add_option("--burn-in", burn_in, "burn-in time before averaging");
    inv->add_option("--out", inv_out, "output directory");

    // emit-plots
    auto* plots = app.add_subcommand("emit-plots", "derive plot-ready CSVs from a run directory");
    std::string run_dir;
    plots->add_option("run_dir", run_dir, "directory holding diagnostics.csv")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) {
            tnse::Config cfg = tnse::Config::from_file(sim_config);
            if (sim_paths > 0) cfg.set("sim.paths", std::to_string(sim_paths));
            if (sim_have_seed) cfg.set("sim.seed", std::to_string(sim_seed));
            return tnse::run_simulate(cfg, sim_out, std::cout);
        }
        if (ver->parsed()) return tnse::run_verify(suite, ver_seed, std::cout);
        if (inv->parsed()) {
            tnse::Config cfg = tnse::Config::from_file(inv_config);
            std::vector<std::string> observables;
            std::stringstream ss(obs_list);
            std::string tok;
            while (std::getline(ss, tok, ',')) observables.push_back(tok);
            return tnse::run_invariant(cfg, observables, burn_in, inv_out, std::cout);
        }
        if (plots->parsed()) return tnse::run_emit_plots(run_dir, std::cout);
    } catch (const tnse::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return tnse::kExitUsage;
    } catch (const tnse::BlowUpError& e) {
        std::cerr << "blow-up: " << e.what() << "\n";
        return tnse::kExitBlowUp;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return tnse::kExitUsage;
    }
    return tnse::kExitUsage;
}
