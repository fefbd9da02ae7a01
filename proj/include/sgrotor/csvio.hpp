#pragma once

#include <string>
#include <vector>

#include "sgrotor/contrast.hpp"
#include "sgrotor/sweep.hpp"

namespace sgr::io {

inline constexpr const char* trajectory_header =
    "t,z,z_dot,beta,beta_dot,alpha,gamma,s,stage";
inline constexpr const char* contrast_header =
    "mass,omega0,DL_ratio,dp_over_hbar,n,T_lib,C_zero,C_thermal,"
    "delta_alpha,delta_gamma,delta_beta,A_beta0,kappa0";
inline constexpr const char* summary_header =
    "mass,omega0,DL_ratio,E_strain,max_delta_z,t_peak,closure_z_pct,"
    "closure_v_pct,beta_max_plus,beta_max_minus";

void write_trajectory_csv(const std::string& path, const dyn::arm_trajectory& arm);
void write_contrast_csv(const std::string& path, const std::vector<sweep::sweep_row>& rows);
void write_summary_csv(const std::string& path, const std::vector<sweep::sweep_row>& rows);

struct manifest_inputs {
    params::scenario_params p;
    dyn::integrate_options opt;
    std::string omega0_window_line;
    double p_alpha_drift, p_gamma_drift;
    dyn::pair_stats stats;
    bool closure_pass;
    double wall_time_s;
    std::vector<std::string> outputs;
    std::string pair_kind; // "+1/-1" or "0/-1"
    std::vector<std::string> notes;
};

void write_manifest(const std::string& path, const manifest_inputs& mi);

} // namespace sgr::io
