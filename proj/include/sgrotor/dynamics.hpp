#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sgrotor/field.hpp"
#include "sgrotor/params.hpp"
#include "sgrotor/rk.hpp"
#include "sgrotor/spin.hpp"

namespace sgr::dyn {

struct rotor_state {
    double t;
    double z;
    double z_dot;
    double beta;
    double beta_dot;
    double alpha;
    double gamma;
    int s_label;            // +1 / -1 / 0
    field::stage_id stage;
};

// p_alpha = I3 w0 cos b0, p_gamma = I3 w0. omega0/beta0 are kept alongside so
// the rotational torque can use the cancellation-free factorization
// cos b0 - cos b = 2 sin((b+b0)/2) sin((b-b0)/2).
struct conserved_momenta {
    double p_alpha;
    double p_gamma;
    double omega0;
    double cos_beta0;
    double beta0;

    static conserved_momenta from(const params::scenario_params& p,
                                  const params::cylinder_geometry& g);
};

struct arm_event {
    double t;
    std::string kind;
};

struct integrate_options {
    double rtol  = 1e-9;
    double atol  = 1e-12;
    bool fixed_step = false;      // dt = 2 pi / (50 w_fast), w_fast = w0 I3/I
    std::size_t grid_samples = 10000; // intervals on [0, t_closed]; rows = grid_samples+1
    bool strict_bnv = false;      // B_nv in the Zeeman torque and full-angle gradient torque
    bool freeze_beta = false;     // hold beta at beta0 (used when w_fast is unintegrable)
    int pair_mode = 0;            // 0 auto, 1 {+1,-1}, 2 {0,-1}
};

struct arm_trajectory {
    std::vector<rotor_state> samples;  // uniform grid over [0, t_closed]
    std::vector<arm_event> events;
    std::uint64_t params_hash = 0;
    int s_initial = +1;
    int s_final   = -1;
    rk::rk_stats stats{};
};

struct arm_pair {
    arm_trajectory plus;   // first label of the pair ({+1,-1} or {0,-1})
    arm_trajectory minus;  // second label
};

// C.O.M. acceleration. E_strain = 0: zdd = -s mu eta~ cos(b)/m + diamagnetic;
// E_strain > 0: adiabatic-branch force
//   zdd = -s mu^2 eta~^2 (z - Z0) cos^2 b / (m sqrt((mu B_par)^2 + E^2)),
//   B_par = eta~ (z - Z0) cos b,
// plus in both cases the diamagnetic restoring term (chi/mu0) eta~^2 (z - Z0).
double z_rhs(const rotor_state& st, const field::field_sample& fs,
             const params::scenario_params& p);

// full nonlinear libration acceleration including the off-center gradient
// torque -(s mu / I) eta~ d sin(alpha') cos(b) (strict mode: B_nv in the
// Zeeman term and sin(b + alpha') in the gradient term)
double beta_rhs_full(const rotor_state& st, const conserved_momenta& mom,
                     const field::field_sample& fs, double B_nv,
                     const params::cylinder_geometry& g,
                     const params::scenario_params& p, bool strict_bnv = false);

// (alpha_dot, gamma_dot)
std::pair<double, double> alpha_gamma_rhs(const rotor_state& st,
                                          const conserved_momenta& mom,
                                          const params::cylinder_geometry& g);

// one arm over [0, t_closed]; the label switches s_initial -> s_after_flip at
// t_flip with the mechanical state continuous across the event
arm_trajectory integrate_arm(int s_initial, int s_after_flip,
                             const params::scenario_params& p,
                             const field::field_profile& f,
                             const integrate_options& opt);

// both arms on identical grids; pair is {+1,-1}, or {0,-1} when omega0 == 0
// (labels swap at the flip in that mode), overridable via opt.pair_mode
arm_pair run_pair(const params::scenario_params& p, const field::field_profile& f,
                  const integrate_options& opt);

// diagnostics --------------------------------------------------------------

// p_alpha / p_gamma recomputed from the sampled state via their definitions;
// returns max relative deviation from the constructed values over the arm
std::pair<double, double> momentum_drift(const arm_trajectory& arm,
                                         const params::scenario_params& p,
                                         const params::cylinder_geometry& g);

// total energy during the hold stage (eta~ = 0, B = B1)
double hold_energy(const rotor_state& st, const conserved_momenta& mom,
                   const params::scenario_params& p,
                   const params::cylinder_geometry& g);

struct pair_stats {
    double max_delta_z;      // max_t |z+ - z-|
    double t_peak;           // argmax
    double max_delta_v;
    double delta_z_closed;
    double delta_v_closed;
    double closure_z_pct;    // 100 |dz(tc)| / max|dz|
    double closure_v_pct;
    double beta_max_plus;    // max |beta| per arm
    double beta_max_minus;
};

pair_stats analyze_pair(const arm_pair& pair);

} // namespace sgr::dyn
