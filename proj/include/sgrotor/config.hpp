#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sgrotor/dynamics.hpp"
#include "sgrotor/params.hpp"

namespace sgr::io {

struct axis_spec {
    double start;
    double stop;
    int count;
    bool log_scale;

    std::vector<double> values() const; // throws config_error on bad spec
};

// flat key-value text: `key = value`, '#' comments, blank lines ignored.
// axis.<name> entries parse as start,stop,count,scale{lin|log}.
struct config_map {
    std::map<std::string, std::string> kv;
    std::map<std::string, axis_spec> axes; // keyed by bare axis name

    bool has(const std::string& k) const { return kv.count(k) > 0; }
    double get_num(const std::string& k) const;          // throws config_error
    double get_num_or(const std::string& k, double d) const;
    std::string get_or(const std::string& k, const std::string& d) const;
};

config_map parse_config_text(const std::string& text);
config_map parse_config_file(const std::string& path); // throws config_error

// run-level settings that travel next to scenario_params
struct run_settings {
    dyn::integrate_options opt{};
    std::vector<double> dp_over_hbar = {1.0, 10.0, 25.0};
    double n_occ = 0.0;
    std::optional<double> T_lib;   // overrides n_occ via n = kB T/(hbar w0)
};

// applies cfg on top of the table1 defaults; validates; unknown keys are
// config errors naming the key
params::scenario_params params_from_config(const config_map& cfg);
run_settings settings_from_config(const config_map& cfg);

// presets: table1_m1e-17, fig5_mass_sweep, fig6_contrast, appendixC_E_sweep,
// appendixD_omega0_zero, appendixE_long_cylinder
std::vector<std::string> preset_names();
config_map preset_config(const std::string& name); // throws config_error

std::uint64_t scenario_hash(const params::scenario_params& p,
                            const dyn::integrate_options& o);

} // namespace sgr::io
