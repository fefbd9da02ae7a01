#pragma once

#include <string>

#include "sgrotor/params.hpp"

namespace sgr::field {

enum class stage_id { split, hold, recombine };
std::string stage_name(stage_id s);

struct field_profile {
    double B0;
    double B1;
    double eta;
    double tau1;
    double tau2;
    double Z0;         // B0/eta
    double ramp_width; // 0 = discontinuous switching

    static field_profile from(const params::scenario_params& p);
};

struct field_sample {
    double Bz;        // T, at the C.O.M.
    double dBz_dz;    // T/m
    double eta_tilde; // T/m, signed gradient schedule
    stage_id stage;
};

// staged field law; t < 0 -> config_error. With ramp_width > 0 the switching
// is smoothed by tanh blends and eta_tilde interpolates between stage values.
field_sample sample(double t, double z, const field_profile& f);

// B at the defect site, displaced d from the C.O.M.:
// B_nv = Bz + eta_tilde * d * cos(beta + alpha')
double field_at_defect(double t, double z, double beta,
                       const params::scenario_params& p, const field_profile& f);

} // namespace sgr::field
