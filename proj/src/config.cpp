#include "sgrotor/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>

#include "sgrotor/errors.hpp"

namespace sgr::io {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double to_num(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw config_error(key, "not a number: '" + v + "'");
    }
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw config_error(key, "not a boolean: '" + v + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(trim(cur));
    return out;
}

axis_spec parse_axis(const std::string& key, const std::string& v) {
    const auto parts = split(v, ',');
    if (parts.size() != 4)
        throw config_error(key, "axis needs start,stop,count,scale");
    axis_spec ax;
    ax.start = to_num(key, parts[0]);
    ax.stop = to_num(key, parts[1]);
    ax.count = static_cast<int>(to_num(key, parts[2]));
    if (parts[3] == "lin")
        ax.log_scale = false;
    else if (parts[3] == "log")
        ax.log_scale = true;
    else
        throw config_error(key, "scale must be lin or log, got '" + parts[3] + "'");
    return ax;
}

// keys consumed by settings_from_config; params_from_config skips them
const std::set<std::string>& settings_keys() {
    static const std::set<std::string> k = {
        "dp_over_hbar", "n_occ", "T_lib",       "rtol",      "atol",
        "fixed_step",   "grid_samples", "strict_bnv", "freeze_beta", "pair_mode"};
    return k;
}

} // namespace

std::vector<double> axis_spec::values() const {
    if (count < 1) throw config_error("axis", "count must be >= 1");
    if (log_scale && (start <= 0.0 || stop <= 0.0))
        throw config_error("axis", "log axis needs positive endpoints");
    std::vector<double> v(static_cast<std::size_t>(count));
    if (count == 1) {
        v[0] = start;
        return v;
    }
    for (int i = 0; i < count; ++i) {
        const double f = static_cast<double>(i) / static_cast<double>(count - 1);
        v[static_cast<std::size_t>(i)] =
            log_scale ? start * std::pow(stop / start, f)
                      : start + (stop - start) * f;
    }
    v.back() = stop; // endpoints exact
    v.front() = start;
    return v;
}

double config_map::get_num(const std::string& k) const {
    const auto it = kv.find(k);
    if (it == kv.end()) throw config_error(k, "missing required key");
    return to_num(k, it->second);
}

double config_map::get_num_or(const std::string& k, double d) const {
    const auto it = kv.find(k);
    return it == kv.end() ? d : to_num(k, it->second);
}

std::string config_map::get_or(const std::string& k, const std::string& d) const {
    const auto it = kv.find(k);
    return it == kv.end() ? d : it->second;
}

config_map parse_config_text(const std::string& text) {
    config_map cfg;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("line " + std::to_string(lineno),
                               "expected key = value, got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty()) throw config_error("line " + std::to_string(lineno), "empty key");
        if (key.rfind("axis.", 0) == 0) {
            const std::string name = key.substr(5);
            if (name.empty()) throw config_error(key, "empty axis name");
            if (!cfg.axes.emplace(name, parse_axis(key, val)).second)
                throw config_error(key, "duplicate axis");
        } else {
            if (!cfg.kv.emplace(key, val).second)
                throw config_error(key, "duplicate key");
        }
    }
    return cfg;
}

config_map parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error(path, "cannot open config file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

params::scenario_params params_from_config(const config_map& cfg) {
    params::scenario_params p = params::scenario_params::table1();
    const bool has_dl = cfg.has("DL_ratio");
    const bool has_lh = cfg.has("L_height");
    if (has_dl && !has_lh) p.L_height = 0.0; // switch to the ratio parameterization
    for (const auto& [key, val] : cfg.kv) {
        if (settings_keys().count(key)) continue;
        const auto num = [&] { return to_num(key, val); };
        if (key == "mass") p.mass = num();
        else if (key == "density") p.density = num();
        else if (key == "chi_rho") p.chi_rho = num();
        else if (key == "d_off") p.d_off = num();
        else if (key == "alpha_prime") p.alpha_prime = num();
        else if (key == "beta0") p.beta0 = num();
        else if (key == "omega0") p.omega0 = num();
        else if (key == "L_height") p.L_height = num();
        else if (key == "DL_ratio") p.DL_ratio = num();
        else if (key == "B0") p.B0 = num();
        else if (key == "B1") p.B1 = num();
        else if (key == "eta") p.eta = num();
        else if (key == "tau1") p.tau1 = num();
        else if (key == "tau2") p.tau2 = num();
        else if (key == "t_flip") p.t_flip = num();
        else if (key == "t_closed") p.t_closed = num();
        else if (key == "ramp_width") p.ramp_width = num();
        else if (key == "D_zfs") p.D_zfs = num();
        else if (key == "E_strain") p.E_strain = num();
        else if (key == "mu_spin") p.mu_spin = num();
        else throw config_error(key, "unknown key");
    }
    params::validate(p);
    return p;
}

run_settings settings_from_config(const config_map& cfg) {
    run_settings rs;
    rs.opt.rtol = cfg.get_num_or("rtol", rs.opt.rtol);
    rs.opt.atol = cfg.get_num_or("atol", rs.opt.atol);
    if (cfg.has("fixed_step")) rs.opt.fixed_step = to_bool("fixed_step", cfg.kv.at("fixed_step"));
    if (cfg.has("strict_bnv")) rs.opt.strict_bnv = to_bool("strict_bnv", cfg.kv.at("strict_bnv"));
    if (cfg.has("freeze_beta")) rs.opt.freeze_beta = to_bool("freeze_beta", cfg.kv.at("freeze_beta"));
    if (cfg.has("grid_samples")) {
        const double n = cfg.get_num("grid_samples");
        if (n < 4 || n != std::floor(n))
            throw config_error("grid_samples", "must be an integer >= 4");
        rs.opt.grid_samples = static_cast<std::size_t>(n);
    }
    if (cfg.has("pair_mode")) {
        const std::string v = cfg.kv.at("pair_mode");
        if (v == "auto") rs.opt.pair_mode = 0;
        else if (v == "pm") rs.opt.pair_mode = 1;
        else if (v == "zm") rs.opt.pair_mode = 2;
        else throw config_error("pair_mode", "must be auto, pm, or zm");
    }
    if (cfg.has("dp_over_hbar")) {
        rs.dp_over_hbar.clear();
        for (const auto& tok : split(cfg.kv.at("dp_over_hbar"), ','))
            rs.dp_over_hbar.push_back(to_num("dp_over_hbar", tok));
        if (rs.dp_over_hbar.empty())
            throw config_error("dp_over_hbar", "empty list");
    }
    rs.n_occ = cfg.get_num_or("n_occ", 0.0);
    if (rs.n_occ < 0.0) throw config_error("n_occ", "must be >= 0");
    if (cfg.has("T_lib")) rs.T_lib = cfg.get_num("T_lib");
    return rs;
}

namespace {

struct preset_def {
    const char* name;
    const char* text;
};

constexpr preset_def k_presets[] = {
    {"table1_m1e-17",
     "# baseline scenario, all defaults\n"
     "mass = 1e-17\n"},
    {"fig5_mass_sweep",
     "dp_over_hbar = 1\n"
     "axis.mass = 5e-18, 1e-16, 7, log\n"},
    {"fig6_contrast",
     "axis.dp_over_hbar = 1, 25, 25, lin\n"},
    {"appendixC_E_sweep",
     "omega0 = 6.2831853071795865e10\n"
     "freeze_beta = true\n"
     "dp_over_hbar = 1\n"
     "# stop = D_zfs/3; 21 points put D_zfs/60 on the grid\n"
     "axis.E_strain = 0, 6.3389404435e-25, 21, lin\n"},
    {"appendixD_omega0_zero",
     "omega0 = 0\n"},
    {"appendixE_long_cylinder",
     "DL_ratio = 0.1\n"},
};

} // namespace

std::vector<std::string> preset_names() {
    std::vector<std::string> out;
    for (const auto& d : k_presets) out.emplace_back(d.name);
    return out;
}

config_map preset_config(const std::string& name) {
    for (const auto& d : k_presets)
        if (name == d.name) return parse_config_text(d.text);
    std::string known;
    for (const auto& d : k_presets) {
        if (!known.empty()) known += ", ";
        known += d.name;
    }
    throw config_error("preset", "unknown preset '" + name + "' (known: " + known + ")");
}

std::uint64_t scenario_hash(const params::scenario_params& p,
                            const dyn::integrate_options& o) {
    std::uint64_t h = 1469598103934665603ull; // FNV-1a
    const auto mix = [&h](const void* data, std::size_t n) {
        const auto* b = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < n; ++i) {
            h ^= b[i];
            h *= 1099511628211ull;
        }
    };
    const auto mixd = [&](double x) { mix(&x, sizeof x); };
    for (double x : {p.mass, p.density, p.chi_rho, p.d_off, p.alpha_prime, p.beta0,
                     p.omega0, p.L_height, p.DL_ratio, p.B0, p.B1, p.eta, p.tau1,
                     p.tau2, p.t_flip, p.t_closed, p.ramp_width, p.D_zfs, p.E_strain,
                     p.mu_spin, o.rtol, o.atol})
        mixd(x);
    const int flags = (o.fixed_step ? 1 : 0) | (o.strict_bnv ? 2 : 0) |
                      (o.freeze_beta ? 4 : 0) | (o.pair_mode << 3);
    mix(&flags, sizeof flags);
    const std::uint64_t gs = o.grid_samples;
    mix(&gs, sizeof gs);
    return h;
}

} // namespace sgr::io
