#pragma once

#include <string>

#include "sgrotor/constants.hpp"

namespace sgr::params {

// Everything a single scenario needs, SI units. D_zfs / E_strain are energies
// (J), mu_spin is J/T.
struct scenario_params {
    double mass        = 1e-17;        // kg
    double density     = 3.5e3;        // kg/m^3
    double chi_rho     = -6.2e-9;      // m^3/kg, negative: diamagnet
    double D_zfs       = 0.0;          // J, set by table1()
    double E_strain    = 0.0;          // J
    double mu_spin     = 0.0;          // J/T, set by table1()
    double d_off       = 1e-8;         // m
    double alpha_prime = pi / 6.0;     // rad
    double beta0       = 0.01;         // rad
    double omega0      = 2.0 * pi * 1e4; // rad/s
    double L_height    = 1e-7;         // m (0 = unset, use DL_ratio)
    double DL_ratio    = 0.0;          // diameter/height (0 = unset)
    double B0          = 1e-2;         // T
    double B1          = 1e-4;         // T
    double eta         = 45.0;         // T/m
    double tau1        = 0.482;        // s
    double tau2        = 0.514;        // s
    double t_flip      = 0.8022;       // s
    double t_closed    = 1.320;        // s
    double ramp_width  = 0.0;          // s, 0 = hard switching
    physical_constants consts{};

    static scenario_params table1();
};

void validate(const scenario_params& p); // throws config_error naming the field

enum class shape_class { long_cylinder, normal, disk };

struct cylinder_geometry {
    double radius;        // m
    double height;        // m
    double I_perp;        // kg m^2, I1 = I2
    double I_3;           // kg m^2
    double inertia_ratio; // I3/I, in (0, 2)
};

// R = sqrt(m / (rho pi L)); throws config_error on non-positive input
double radius_from_mass(double mass, double density, double height);

// exactly one of L_height / DL_ratio must be set in p
cylinder_geometry build_geometry(const scenario_params& p);
cylinder_geometry geometry_from_height(double mass, double density, double height);
cylinder_geometry geometry_from_ratio(double mass, double density, double DL_ratio);

shape_class classify_shape(const cylinder_geometry& g);
std::string shape_name(shape_class s);

} // namespace sgr::params
