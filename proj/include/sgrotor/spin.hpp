#pragma once

#include <array>
#include <complex>
#include <string>

#include "sgrotor/params.hpp"

namespace sgr::spin {

using cplx = std::complex<double>;

// 3x3 Hermitian energy matrix, basis (|+1>, |0>, |-1>), row-major
struct spin_matrix3 {
    std::array<cplx, 9> a{};

    cplx& at(int i, int j) { return a[static_cast<std::size_t>(3 * i + j)]; }
    const cplx& at(int i, int j) const { return a[static_cast<std::size_t>(3 * i + j)]; }
};

bool is_hermitian(const spin_matrix3& m, double rel_tol = 1e-12);

// H = D(Sz^2 - (2/3)I) + E(Sx^2 - Sy^2) + mu(B_par Sz + B_perp(cos g Sx + sin g Sy))
spin_matrix3 build_h_spin(double B_par, double B_perp, double gamma,
                          const params::scenario_params& p);

// effective 2x2 on {|+1>, |-1>} after projecting out |0>:
//   [shift + delta_plus,  W      ]
//   [conj(W),             shift + delta_minus]
// with W = E + mu^2 B_perp^2/(2D) e^{2i gamma} (the e^{2i w0 t} rotating phase
// multiplying W is carried implicitly and never affects |W|), and optionally
// the rotating-frame terms -+ hbar*omega0_frame on the diagonal.
struct effective_spin2 {
    double delta_plus;
    double delta_minus;
    cplx W;
    double shift;

    std::array<double, 2> eigenvalues() const; // ascending, shift included
};

// throws validity_error when D <= 10 mu |B|
effective_spin2 feshbach_reduce(const spin_matrix3& h3, const params::scenario_params& p,
                                double omega0_frame = 0.0);

// V_s = s*sqrt((mu B_par)^2 + E^2) + D/3 for s = +1 / -1
std::pair<double, double> spin_potential(double B_par, double E_strain,
                                         const params::scenario_params& p);

// dense Hermitian 3x3 eigensolver (independent oracle for the projection)
std::array<double, 3> eigvals_hermitian3(const spin_matrix3& m);                 // ascending
std::array<std::array<cplx, 3>, 3> eigvecs_hermitian3(const spin_matrix3& m,
                                                      const std::array<double, 3>& evals);

// classical spin direction + body-frame angular momentum for the
// Einstein-de Haas diagnostic equations
struct rotor_mechanical_state {
    std::array<double, 3> S;      // dimensionless, |S| <= 1
    std::array<double, 3> L;      // kg m^2 / s
    std::array<double, 3> B_body; // T
};

struct edh_derivatives {
    std::array<double, 3> dS;
    std::array<double, 3> dL;
};

// dS = (mu/hbar) S x B + omega x S,  omega_k = L_k/I_k
// dL = mu B x S + hbar S x omega + L x omega
// (the Gamma = sum_k hbar/(2 I_k) imaginary correction to the axis evolution
// is dropped; it is ~1e-12 Hz at these inertias)
edh_derivatives edh_rhs(const rotor_mechanical_state& st,
                        const params::cylinder_geometry& g,
                        const params::scenario_params& p);

struct window_report {
    double r1; // omega0 / sqrt(mu B0 / I)   -- want >= 10
    double r2; // omega0 hbar / (mu B0)      -- want <= 0.1
    double r3; // omega0 hbar / (D - mu B0)  -- want <= 0.1
    bool pass;

    std::string to_line() const; // "omega0_window: PASS r1=... r2=... r3=..."
};

// never throws; FAIL is advisory
window_report validate_omega0(const params::scenario_params& p,
                              const params::cylinder_geometry& g);

} // namespace sgr::spin
