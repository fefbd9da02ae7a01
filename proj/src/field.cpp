#include "sgrotor/field.hpp"

#include <cmath>

#include "sgrotor/errors.hpp"

namespace sgr::field {

std::string stage_name(stage_id s) {
    switch (s) {
        case stage_id::split: return "split";
        case stage_id::hold: return "hold";
        case stage_id::recombine: return "recombine";
    }
    return "?";
}

field_profile field_profile::from(const params::scenario_params& p) {
    field_profile f;
    f.B0 = p.B0;
    f.B1 = p.B1;
    f.eta = p.eta;
    f.tau1 = p.tau1;
    f.tau2 = p.tau2;
    f.Z0 = p.B0 / p.eta;
    f.ramp_width = p.ramp_width;
    return f;
}

field_sample sample(double t, double z, const field_profile& f) {
    if (t < 0) throw config_error("t", "field sampled at negative time");
    field_sample s;
    if (f.ramp_width > 0) {
        // smooth variant: tanh blends of the three stage laws
        const double w = f.ramp_width;
        const double s1 = 0.5 * (1.0 + std::tanh((t - f.tau1) / w));
        const double s2 = 0.5 * (1.0 + std::tanh((t - f.tau2) / w));
        const double B_split = f.B0 - f.eta * z;
        const double B_rec = f.eta * z - f.B0;
        s.Bz = (1.0 - s1) * B_split + s1 * ((1.0 - s2) * f.B1 + s2 * B_rec);
        s.eta_tilde = (1.0 - s1) * (-f.eta) + s1 * s2 * f.eta;
        s.dBz_dz = s.eta_tilde;
        s.stage = t < f.tau1 ? stage_id::split
                             : (t <= f.tau2 ? stage_id::hold : stage_id::recombine);
        return s;
    }
    if (t < f.tau1) {
        s.Bz = f.B0 - f.eta * z;
        s.eta_tilde = -f.eta;
        s.stage = stage_id::split;
    } else if (t <= f.tau2) {
        s.Bz = f.B1;
        s.eta_tilde = 0.0;
        s.stage = stage_id::hold;
    } else {
        s.Bz = f.eta * z - f.B0;
        s.eta_tilde = f.eta;
        s.stage = stage_id::recombine;
    }
    s.dBz_dz = s.eta_tilde;
    return s;
}

double field_at_defect(double t, double z, double beta,
                       const params::scenario_params& p, const field_profile& f) {
    const field_sample s = sample(t, z, f);
    return s.Bz + s.eta_tilde * p.d_off * std::cos(beta + p.alpha_prime);
}

} // namespace sgr::field
