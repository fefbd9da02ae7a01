#pragma once

#include <numbers>

namespace sgr {

inline constexpr double pi = std::numbers::pi;

// SI throughout. mu0 kept at the rounded tabulated value used to fix the
// diamagnetic trap frequency; do not "upgrade" it, the reference numbers
// downstream depend on it.
struct physical_constants {
    double h    = 6.62607015e-34;      // J s
    double hbar = 6.62607015e-34 / (2.0 * pi);
    double mu0  = 1.257e-6;            // H/m
    double kB   = 1.380649e-23;        // J/K
};

void validate(const physical_constants& c); // throws config_error

} // namespace sgr
