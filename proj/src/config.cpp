#include "tnse/config.hpp"

#include "tnse/rng.hpp"
#include "tnse/spectral_ops.hpp"
#include "tnse/transform.hpp"

#include <cctype>
#include <cmath>
#include <chrono>
#include <fstream>
#include <sstream>
#include <thread>

namespace tnse {

namespace {

const std::map<std::string, std::string>& default_entries() {
    static const std::map<std::string, std::string> d = {
        {"grid.M", "16"},
        {"grid.L", "6.283185307179586"},
        {"sim.n", "4"},
        {"sim.dt", "0.001"},
        {"sim.T", "1"},
        {"sim.paths", "1"},
        {"sim.seed", "1"},
        {"sim.scheme", "semi-implicit-em"},
        {"sim.R_stop", "0"},
        {"model.nu", "1"},
        {"model.alpha", "0"},
        {"taming.N", "10"},
        {"taming.enabled", "true"},
        {"noise.J", "4"},
        {"noise.kind", "constant"},
        {"noise.k_sigma", "2"},
        {"forcing.kind", "state"},
        {"forcing.kappa", "0.1"},
        {"forcing.amplitude", "0.1"},
        {"forcing.k_max", "2"},
        {"forcing.seed", "99"},
        {"ic.kind", "random"},
        {"ic.amplitude", "1"},
        {"ic.norm", "H"},
        {"ic.k_max", "2"},
        {"ic.mode", "0,0,1"},
        {"ic.seed", "7"},
        {"diag.record_every", "1"},
        {"diag.snapshot_every", "0"},
        {"diag.heavy", "true"},
    };
    return d;
}

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("config key '" + key + "': expected a boolean, got '" + v + "'");
}

} // namespace

Config Config::defaults() {
    Config c;
    c.values_ = default_entries();
    return c;
}

Config Config::from_string(const std::string& text) {
    Config c = defaults();
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "model.N") key = "taming.N"; // accepted alias
        if (default_entries().find(key) == default_entries().end())
            throw ConfigError("unknown config key '" + key + "'");
        c.values_[key] = value;
    }
    return c;
}

Config Config::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_string(ss.str());
}

const std::string& Config::get(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("unknown config key '" + key + "'");
    return it->second;
}

double Config::get_double(const std::string& key) const {
    const std::string& v = get(key);
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': expected a number, got '" + v + "'");
    }
}

std::size_t Config::get_size(const std::string& key) const {
    const double x = get_double(key);
    if (x < 0 || x != std::floor(x))
        throw ConfigError("config key '" + key + "': expected a nonnegative integer");
    return static_cast<std::size_t>(x);
}

std::uint64_t Config::get_u64(const std::string& key) const {
    const std::string& v = get(key);
    try {
        return std::stoull(v);
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': expected an unsigned integer, got '" + v + "'");
    }
}

void Config::set(const std::string& key, const std::string& value) {
    if (default_entries().find(key) == default_entries().end())
        throw ConfigError("unknown config key '" + key + "'");
    values_[key] = value;
}

std::string Config::print() const {
    std::ostringstream out;
    for (const auto& [k, v] : values_) out << k << " = " << v << "\n";
    return out.str();
}

SimConfig Config::to_sim_config() const {
    SimConfig cfg;
    cfg.M = get_size("grid.M");
    cfg.L = get_double("grid.L");
    cfg.cutoff_n = get_double("sim.n");
    cfg.dt = get_double("sim.dt");
    cfg.T = get_double("sim.T");
    cfg.n_paths = get_size("sim.paths");
    cfg.seed = get_u64("sim.seed");
    cfg.R_stop = get_double("sim.R_stop");

    const std::string scheme = get("sim.scheme");
    if (scheme == "semi-implicit-em")
        cfg.scheme = Scheme::SemiImplicitEM;
    else if (scheme == "explicit-em")
        cfg.scheme = Scheme::ExplicitEM;
    else
        throw ConfigError("config key 'sim.scheme': unknown scheme '" + scheme + "'");

    cfg.params.nu = get_double("model.nu");
    if (cfg.params.nu <= 0.0) throw ConfigError("config key 'model.nu': must be positive");
    cfg.params.alpha = get_double("model.alpha");
    if (cfg.params.alpha < 0.0) throw ConfigError("config key 'model.alpha': must be nonnegative");
    const double N = get_double("taming.N");
    if (N <= 0.0) throw ConfigError("config key 'taming.N': must be positive");
    cfg.params.tf = TamingFunction(N);
    cfg.params.taming_enabled = parse_bool("taming.enabled", get("taming.enabled"));

    cfg.noise_J = get_size("noise.J");
    if (cfg.noise_J < 1) throw ConfigError("config key 'noise.J': must be >= 1");
    const std::string nk = get("noise.kind");
    if (nk == "constant")
        cfg.noise_kind = NoiseKind::Constant;
    else if (nk == "banded")
        cfg.noise_kind = NoiseKind::Banded;
    else
        throw ConfigError("config key 'noise.kind': expected constant or banded");
    cfg.noise_k_sigma = get_double("noise.k_sigma");

    const std::string fk = get("forcing.kind");
    if (fk == "state")
        cfg.params.forcing = ForcingKind::State;
    else if (fk == "fixed")
        cfg.params.forcing = ForcingKind::Fixed;
    else
        throw ConfigError("config key 'forcing.kind': expected state or fixed");
    cfg.params.kappa = get_double("forcing.kappa");
    if (cfg.params.kappa < 0.0 || cfg.params.kappa > 0.5)
        throw ConfigError("config key 'forcing.kappa': must lie in [0, 0.5]");

    const std::string ik = get("ic.kind");
    if (ik == "random")
        cfg.ic.kind = InitialCondition::Kind::RandomLowMode;
    else if (ik == "zero")
        cfg.ic.kind = InitialCondition::Kind::Zero;
    else if (ik == "single")
        cfg.ic.kind = InitialCondition::Kind::SingleMode;
    else
        throw ConfigError("config key 'ic.kind': expected random, zero or single");
    cfg.ic.amplitude = get_double("ic.amplitude");
    cfg.ic.norm = get("ic.norm");
    if (cfg.ic.norm != "H" && cfg.ic.norm != "V")
        throw ConfigError("config key 'ic.norm': expected H or V");
    cfg.ic.k_max = get_double("ic.k_max");
    cfg.ic.seed = get_u64("ic.seed");
    {
        std::istringstream ms(get("ic.mode"));
        std::string tok;
        for (int i = 0; i < 3; ++i) {
            if (!std::getline(ms, tok, ','))
                throw ConfigError("config key 'ic.mode': expected three comma-separated integers");
            cfg.ic.mode[i] = std::stoi(tok);
        }
    }

    cfg.diag.record_every = std::max<std::size_t>(1, get_size("diag.record_every"));
    cfg.diag.snapshot_every = get_size("diag.snapshot_every");
    cfg.diag.heavy = parse_bool("diag.heavy", get("diag.heavy"));

    // fixed forcing profile f0: random low-mode divergence-free field
    const double famp = get_double("forcing.amplitude");
    if (famp < 0.0) throw ConfigError("config key 'forcing.amplitude': must be nonnegative");
    if (famp > 0.0) {
        GridPtr grid = make_grid(cfg.M, cfg.L);
        SpectralTransform xf(grid);
        std::uint64_t s = get_u64("forcing.seed") * 0x9e3779b97f4a7c15ULL + 0xf0;
        NormalStream rng(splitmix64(s));
        PhysicalField p(grid);
        for (double& v : p.values) v = rng.normal();
        SpectralField f0(grid, cfg.cutoff_n);
        xf.to_spectral(p, f0);
        project_ball_inplace(f0, std::min(get_double("forcing.k_max"), cfg.cutoff_n));
        leray_project_inplace(f0);
        for (std::size_t c = 0; c < 3; ++c) f0.coeffs[c * grid->points()] = Complex{0.0, 0.0};
        const double cur = std::sqrt(norm2_H(f0));
        if (cur > 0.0)
            for (Complex& cc : f0.coeffs) cc *= famp / cur;
        cfg.params.f0 = std::move(f0);
    }

    cfg.validate();
    return cfg;
}

std::string run_manifest(const Config& cfg) {
    std::ostringstream out;
    out << "# tnse run manifest\n";
    out << "# code_version = 1.0.0\n";
    out << "# rng = splitmix64 box-muller; path seed = splitmix64(base ^ 0xd1b54a32d192ed03*(i+1))\n";
    out << "# threads = " << std::max<unsigned>(1, std::thread::hardware_concurrency()) << "\n";
    const auto now = std::chrono::system_clock::now().time_since_epoch();
    out << "# unix_time = " << std::chrono::duration_cast<std::chrono::seconds>(now).count()
        << "\n";
    out << cfg.print();
    return out.str();
}

} // namespace tnse
