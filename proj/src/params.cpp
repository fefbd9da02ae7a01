#include "sgrotor/params.hpp"

#include <cmath>

#include "sgrotor/errors.hpp"

namespace sgr {

void validate(const physical_constants& c) {
    if (c.h <= 0) throw config_error("h", "must be positive");
    if (c.hbar <= 0) throw config_error("hbar", "must be positive");
    if (c.mu0 <= 0) throw config_error("mu0", "must be positive");
    if (c.kB <= 0) throw config_error("kB", "must be positive");
    if (std::abs(c.hbar - c.h / (2.0 * pi)) > 1e-12 * c.hbar)
        throw config_error("hbar", "inconsistent with h/(2 pi)");
}

} // namespace sgr

namespace sgr::params {

scenario_params scenario_params::table1() {
    scenario_params p;
    p.D_zfs   = p.consts.h * 2.87e9;  // axial ZFS
    p.E_strain = 0.0;
    p.mu_spin = p.consts.h * 2.8e10;  // per tesla
    return p;
}

void validate(const scenario_params& p) {
    sgr::validate(p.consts);
    if (p.mass <= 0) throw config_error("mass", "must be positive");
    if (p.density <= 0) throw config_error("density", "must be positive");
    if (p.B0 <= 0) throw config_error("B0", "must be positive");
    if (p.eta <= 0) throw config_error("eta", "must be positive");
    if (p.D_zfs <= 0) throw config_error("D_zfs", "must be positive");
    if (p.mu_spin <= 0) throw config_error("mu_spin", "must be positive");
    if (p.E_strain < 0 || p.E_strain > p.D_zfs / 3.0)
        throw config_error("E_strain", "must satisfy 0 <= E <= D_zfs/3");
    if (!(p.beta0 > 0 && p.beta0 < pi / 2))
        throw config_error("beta0", "must lie in (0, pi/2)");
    if (p.omega0 < 0) throw config_error("omega0", "must be >= 0");
    if (!(p.tau1 > 0 && p.tau1 < p.tau2 && p.tau2 < p.t_flip && p.t_flip < p.t_closed))
        throw config_error("tau1", "need 0 < tau1 < tau2 < t_flip < t_closed");
    if (p.d_off < 0) throw config_error("d_off", "must be >= 0");
    if (p.ramp_width < 0) throw config_error("ramp_width", "must be >= 0");
    const bool has_h = p.L_height > 0, has_r = p.DL_ratio > 0;
    if (has_h == has_r)
        throw config_error("L_height", "exactly one of L_height / DL_ratio must be set");
}

double radius_from_mass(double mass, double density, double height) {
    if (mass <= 0) throw config_error("mass", "must be positive");
    if (density <= 0) throw config_error("density", "must be positive");
    if (height <= 0) throw config_error("L_height", "must be positive");
    return std::sqrt(mass / (density * pi * height));
}

static cylinder_geometry finish(double mass, double R, double L) {
    cylinder_geometry g;
    g.radius = R;
    g.height = L;
    g.I_perp = mass * (3.0 * R * R + L * L) / 12.0;
    g.I_3    = mass * R * R / 2.0;
    g.inertia_ratio = 6.0 * R * R / (3.0 * R * R + L * L);
    return g;
}

cylinder_geometry geometry_from_height(double mass, double density, double height) {
    return finish(mass, radius_from_mass(mass, density, height), height);
}

cylinder_geometry geometry_from_ratio(double mass, double density, double DL_ratio) {
    if (DL_ratio <= 0) throw config_error("DL_ratio", "must be positive");
    // m = rho pi R^2 L with L = 2R/DL  =>  R^3 = m DL / (2 rho pi)
    const double R = std::cbrt(mass * DL_ratio / (2.0 * density * pi));
    return finish(mass, R, 2.0 * R / DL_ratio);
}

cylinder_geometry build_geometry(const scenario_params& p) {
    const bool has_h = p.L_height > 0, has_r = p.DL_ratio > 0;
    if (has_h == has_r)
        throw config_error("L_height", "exactly one of L_height / DL_ratio must be set");
    return has_h ? geometry_from_height(p.mass, p.density, p.L_height)
                 : geometry_from_ratio(p.mass, p.density, p.DL_ratio);
}

shape_class classify_shape(const cylinder_geometry& g) {
    const double dl = 2.0 * g.radius / g.height;
    if (dl <= 0.3) return shape_class::long_cylinder;
    if (dl < 3.0) return shape_class::normal;
    return shape_class::disk;
}

std::string shape_name(shape_class s) {
    switch (s) {
        case shape_class::long_cylinder: return "long-cylinder";
        case shape_class::normal: return "normal";
        case shape_class::disk: return "disk";
    }
    return "?";
}

} // namespace sgr::params
