#pragma once

#include <vector>

#include "sgrotor/dynamics.hpp"

namespace sgr::contrast {

// closed-form equilibrium tracks and flip-mismatch areas.
// beta_bar_s(t) = beta0 + (I/I3)^2 s mu Bz(t) beta0 / (I w0^2); sigma_A/B are
// the unsigned areas of the inter-arm track gap before/after the flip.
struct libration_summary {
    double A_beta_0 = 0.0;             // (I/I3)^2 mu B0 beta0/(I w0^2)
    double A_beta_closed_bound = 0.0;  // 3 A_beta_0
    double delta_beta_bar_flip = 0.0;  // equilibrium-track jump seen at the flip
    double sigma_A = 0.0;              // rad s
    double sigma_B = 0.0;              // rad s
    double delta_alpha_estimate = 0.0; // (I3/I)(w0/beta0)(signed area sum)
    bool valid = true;                 // false at omega0 == 0 (no closed-form mode)
    std::vector<double> t_grid;
    std::vector<double> beta_bar_plus;
    std::vector<double> beta_bar_minus;
};

struct mismatch_set {
    double delta_beta;
    double delta_alpha;
    double delta_gamma;
};

struct contrast_report {
    double C_zero;
    double C_thermal;
    double kappa0_abs;          // sqrt(I w0 / 2 hbar) A_beta(0)
    double kappa_closed_bound;  // sqrt(I w0 / 2 hbar) 3 A_beta(0)
    double delta_X;
    double term_rot;            // (I/I3)^4 16 mu^2 B0^2 beta0^2/(hbar I w0^3)
    double n_occ;
    double dp_alpha;            // J s (entered in units of hbar)
    double dp_gamma;
};

// s-averaged C.O.M. path (spin forces cancel between arms): harmonic about Z0
// in the gradient stages, free flight in the hold
double mean_path_z(double t, const params::scenario_params& p,
                   const field::field_profile& f);
double mean_path_Bz(double t, const params::scenario_params& p,
                    const field::field_profile& f);

// tracks sampled from the pair's own grid and per-arm z(t)
libration_summary summarize(const dyn::arm_pair& pair,
                            const params::scenario_params& p,
                            const params::cylinder_geometry& g,
                            const field::field_profile& f);

// tracks from the closed-form mean path on a fresh uniform grid
libration_summary summarize_closed_form(const params::scenario_params& p,
                                        const params::cylinder_geometry& g,
                                        const field::field_profile& f,
                                        std::size_t grid = 10000);

// endpoint mismatches read off the trajectories
mismatch_set mismatches(const dyn::arm_pair& pair);

// libration amplitude sqrt(u^2 + (u_dot/w_f)^2), u = beta - beta_bar_s(t),
// averaged over the output grid restricted to (t_lo, t_hi]
double mean_amplitude(const dyn::arm_trajectory& arm,
                      const params::scenario_params& p,
                      const params::cylinder_geometry& g,
                      const field::field_profile& f, double t_lo, double t_hi);
// same quantity at the final sample
double amplitude_at_close(const dyn::arm_trajectory& arm,
                          const params::scenario_params& p,
                          const params::cylinder_geometry& g,
                          const field::field_profile& f);

// dp values are entered in units of hbar; dp_gamma_over_hbar < 0 selects the
// default dp_alpha cos(beta0)
contrast_report contrast_zero_T(const mismatch_set& mm, const libration_summary& ls,
                                double dp_alpha_over_hbar, double dp_gamma_over_hbar,
                                const params::scenario_params& p,
                                const params::cylinder_geometry& g);

contrast_report contrast_thermal(const mismatch_set& mm, const libration_summary& ls,
                                 double dp_alpha_over_hbar, double dp_gamma_over_hbar,
                                 double n_occ, const params::scenario_params& p,
                                 const params::cylinder_geometry& g);

// n = kB T / (hbar w0); negative input -> config_error
double occupation_from_temperature(double T_lib, double omega0,
                                   const physical_constants& c);

} // namespace sgr::contrast
