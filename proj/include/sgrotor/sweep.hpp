#pragma once

#include <map>
#include <string>
#include <vector>

#include "sgrotor/config.hpp"
#include "sgrotor/contrast.hpp"

namespace sgr::sweep {

// one Cartesian-product grid point; axis order is fixed (mass, omega0,
// DL_ratio, dp, n, T_lib, E_strain) so row order is deterministic
struct sweep_point {
    params::scenario_params p;
    double dp_over_hbar;
    double n_occ;
    std::map<std::string, double> axis_echo;
};

struct sweep_row {
    // contrast CSV columns
    double mass, omega0, DL_ratio, dp_over_hbar, n_occ, T_lib;
    double C_zero, C_thermal, delta_alpha, delta_gamma, delta_beta, A_beta0, kappa0;
    // companion summary columns
    double E_strain, max_delta_z, t_peak, closure_z_pct, closure_v_pct;
    double beta_max_plus, beta_max_minus;
};

std::vector<sweep_point> expand_axes(const params::scenario_params& base,
                                     const io::run_settings& rs,
                                     const std::map<std::string, io::axis_spec>& axes);

sweep_row evaluate_point(const sweep_point& pt, const dyn::integrate_options& opt);

// serial reference implementation
std::vector<sweep_row> run_serial(const std::vector<sweep_point>& pts,
                                  const dyn::integrate_options& opt);

// OpenMP worker-pool version; bitwise-identical rows to run_serial (each
// point is computed by the same deterministic code path, results land in
// index order and are written by the caller alone)
std::vector<sweep_row> run_parallel(const std::vector<sweep_point>& pts,
                                    const dyn::integrate_options& opt,
                                    int max_threads = 0);

bool rows_identical(const std::vector<sweep_row>& a, const std::vector<sweep_row>& b);

} // namespace sgr::sweep
