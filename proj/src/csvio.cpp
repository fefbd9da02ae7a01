#include "sgrotor/csvio.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "json.hpp"
#include "sgrotor/config.hpp"

namespace sgr::io {

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    return out;
}

void finish(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path);
}

} // namespace

void write_trajectory_csv(const std::string& path, const dyn::arm_trajectory& arm) {
    auto out = open_out(path);
    out << trajectory_header << '\n';
    for (const auto& st : arm.samples) {
        out << fmt(st.t) << ',' << fmt(st.z) << ',' << fmt(st.z_dot) << ','
            << fmt(st.beta) << ',' << fmt(st.beta_dot) << ',' << fmt(st.alpha) << ','
            << fmt(st.gamma) << ',' << st.s_label << ','
            << field::stage_name(st.stage) << '\n';
    }
    finish(out, path);
}

void write_contrast_csv(const std::string& path,
                        const std::vector<sweep::sweep_row>& rows) {
    auto out = open_out(path);
    out << contrast_header << '\n';
    for (const auto& r : rows) {
        out << fmt(r.mass) << ',' << fmt(r.omega0) << ',' << fmt(r.DL_ratio) << ','
            << fmt(r.dp_over_hbar) << ',' << fmt(r.n_occ) << ',' << fmt(r.T_lib) << ','
            << fmt(r.C_zero) << ',' << fmt(r.C_thermal) << ',' << fmt(r.delta_alpha)
            << ',' << fmt(r.delta_gamma) << ',' << fmt(r.delta_beta) << ','
            << fmt(r.A_beta0) << ',' << fmt(r.kappa0) << '\n';
    }
    finish(out, path);
}

void write_summary_csv(const std::string& path,
                       const std::vector<sweep::sweep_row>& rows) {
    auto out = open_out(path);
    out << summary_header << '\n';
    for (const auto& r : rows) {
        out << fmt(r.mass) << ',' << fmt(r.omega0) << ',' << fmt(r.DL_ratio) << ','
            << fmt(r.E_strain) << ',' << fmt(r.max_delta_z) << ',' << fmt(r.t_peak)
            << ',' << fmt(r.closure_z_pct) << ',' << fmt(r.closure_v_pct) << ','
            << fmt(r.beta_max_plus) << ',' << fmt(r.beta_max_minus) << '\n';
    }
    finish(out, path);
}

void write_manifest(const std::string& path, const manifest_inputs& mi) {
    nlohmann::json j;
    const auto& p = mi.p;
    j["params"] = {
        {"mass", p.mass},       {"density", p.density},   {"chi_rho", p.chi_rho},
        {"d_off", p.d_off},     {"alpha_prime", p.alpha_prime}, {"beta0", p.beta0},
        {"omega0", p.omega0},   {"L_height", p.L_height}, {"DL_ratio", p.DL_ratio},
        {"B0", p.B0},           {"B1", p.B1},             {"eta", p.eta},
        {"tau1", p.tau1},       {"tau2", p.tau2},         {"t_flip", p.t_flip},
        {"t_closed", p.t_closed}, {"ramp_width", p.ramp_width},
        {"D_zfs", p.D_zfs},     {"E_strain", p.E_strain}, {"mu_spin", p.mu_spin},
    };
    j["options"] = {
        {"rtol", mi.opt.rtol},
        {"atol", mi.opt.atol},
        {"fixed_step", mi.opt.fixed_step},
        {"grid_samples", mi.opt.grid_samples},
        {"strict_bnv", mi.opt.strict_bnv},
        {"freeze_beta", mi.opt.freeze_beta},
        {"pair_mode", mi.opt.pair_mode},
    };
    char hash[32];
    std::snprintf(hash, sizeof hash, "%016llx",
                  static_cast<unsigned long long>(scenario_hash(mi.p, mi.opt)));
    j["scenario_hash"] = hash;
    j["omega0_window"] = mi.omega0_window_line;
    j["conservation"] = {{"p_alpha_max_rel_drift", mi.p_alpha_drift},
                         {"p_gamma_max_rel_drift", mi.p_gamma_drift}};
    j["pair"] = {
        {"kind", mi.pair_kind},
        {"max_delta_z", mi.stats.max_delta_z},
        {"t_peak", mi.stats.t_peak},
        {"max_delta_v", mi.stats.max_delta_v},
        {"delta_z_closed", mi.stats.delta_z_closed},
        {"delta_v_closed", mi.stats.delta_v_closed},
        {"closure_z_pct", mi.stats.closure_z_pct},
        {"closure_v_pct", mi.stats.closure_v_pct},
        {"beta_max_plus", mi.stats.beta_max_plus},
        {"beta_max_minus", mi.stats.beta_max_minus},
        {"closure_pass", mi.closure_pass},
    };
    j["wall_time_s"] = mi.wall_time_s;
    j["outputs"] = mi.outputs;
    if (!mi.notes.empty()) j["notes"] = mi.notes;
    auto out = open_out(path);
    out << j.dump(2) << '\n';
    finish(out, path);
}

} // namespace sgr::io
