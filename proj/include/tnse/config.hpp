#pragma once

#include <map>
#include <string>

#include "tnse/integrator.hpp"

namespace tnse {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Flat `key = value` file with dotted sections and '#' comments.
/// Unknown keys are errors; every key has a documented default.
class Config {
public:
    static Config from_file(const std::string& path);
    static Config from_string(const std::string& text);
    static Config defaults();

    const std::string& get(const std::string& key) const;
    double get_double(const std::string& key) const;
    std::size_t get_size(const std::string& key) const;
    std::uint64_t get_u64(const std::string& key) const;

    void set(const std::string& key, const std::string& value);

    /// Canonical serialization; parse(print(c)) == c.
    std::string print() const;

    SimConfig to_sim_config() const;

    bool operator==(const Config&) const = default;

    const std::map<std::string, std::string>& entries() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

/// Resolved run provenance: full config, seeds, derivation rule,
/// generator id, thread count, code version.
std::string run_manifest(const Config& cfg);

} // namespace tnse
