#pragma once

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "cmup/errors.hpp"
#include "cmup/format.hpp"

namespace cmup {

// Every numeric knob in one record.  Defaults reproduce the shipped datasets.
struct ToleranceConfig {
    double series_tail_tol = 1e-16; // relative tail bound certified at the series radius
    double root_tol = 1e-12;        // bracket width for root refinement
    int quad_nodes = 32;            // Gauss-Legendre nodes per panel
    int quad_panels = 64;           // panels per integral
    double a_max = 20.0;            // ceiling for the scaled eigenvalue magnitude
    double a_small_max = 0.4999999; // small-branch ceiling; a = 1/2 is the Gaussian limit

    std::map<std::string, std::string> to_key_values() const {
        return {
            {"series_tail_tol", io::format_sig17(series_tail_tol)},
            {"root_tol", io::format_sig17(root_tol)},
            {"quad_nodes", std::to_string(quad_nodes)},
            {"quad_panels", std::to_string(quad_panels)},
            {"a_max", io::format_sig17(a_max)},
            {"a_small_max", io::format_sig17(a_small_max)},
        };
    }
};

namespace detail {

inline void apply_config_entry(ToleranceConfig& cfg, const std::string& key, const std::string& value) {
    try {
        if (key == "series_tail_tol") cfg.series_tail_tol = std::stod(value);
        else if (key == "root_tol") cfg.root_tol = std::stod(value);
        else if (key == "quad_nodes") cfg.quad_nodes = std::stoi(value);
        else if (key == "quad_panels") cfg.quad_panels = std::stoi(value);
        else if (key == "a_max") cfg.a_max = std::stod(value);
        else if (key == "a_small_max") cfg.a_small_max = std::stod(value);
        else throw domain_error("unknown tolerance-config key: " + key);
    } catch (const std::invalid_argument&) {
        throw domain_error("tolerance-config value for '" + key + "' is not a number: " + value);
    } catch (const std::out_of_range&) {
        throw domain_error("tolerance-config value for '" + key + "' is out of range: " + value);
    }
}

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

} // namespace detail

inline void validate(const ToleranceConfig& cfg) {
    if (!(cfg.series_tail_tol > 0.0) || cfg.series_tail_tol > 1e-6)
        throw domain_error("series_tail_tol must be in (0, 1e-6]");
    if (!(cfg.root_tol > 0.0) || cfg.root_tol > 1e-3)
        throw domain_error("root_tol must be in (0, 1e-3]");
    if (cfg.quad_nodes < 2 || cfg.quad_nodes > 128)
        throw domain_error("quad_nodes must be in [2, 128]");
    if (cfg.quad_panels < 1 || cfg.quad_panels > 4096)
        throw domain_error("quad_panels must be in [1, 4096]");
    if (!(cfg.a_max > 0.0) || cfg.a_max > 30.0)
        throw domain_error("a_max must be in (0, 30]");
    if (!(cfg.a_small_max > 0.0) || cfg.a_small_max > 0.5)
        throw domain_error("a_small_max must be in (0, 0.5]");
}

// Flat key = value text file; '#' starts a comment; blank lines ignored.
inline ToleranceConfig load_tolerance_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw domain_error("cannot open tolerance-config file: " + path);
    ToleranceConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw domain_error("tolerance-config line " + std::to_string(lineno) + " is not 'key = value': " + line);
        detail::apply_config_entry(cfg, detail::trim(line.substr(0, eq)), detail::trim(line.substr(eq + 1)));
    }
    validate(cfg);
    return cfg;
}

inline constexpr const char* tolerance_config_env_var = "CMUP_TOLERANCE_CONFIG";

// Defaults, unless the environment names a config file to load instead.
inline ToleranceConfig tolerance_config_from_env() {
    const char* path = std::getenv(tolerance_config_env_var);
    if (path != nullptr && *path != '\0') return load_tolerance_config(path);
    return ToleranceConfig{};
}

} // namespace cmup
