#include "sgrotor/contrast.hpp"

#include <cmath>
#include <limits>

#include "sgrotor/errors.hpp"

namespace sgr::contrast {

namespace {

struct mean_path_state {
    double z, v;
};

// s-averaged C.O.M. under the diamagnetic term alone: harmonic about Z0 at
// w_d = sqrt(|chi| eta^2 / mu0) in the gradient stages, free flight in the
// hold. Valid for the hard-switched profile (ramp_width = 0).
mean_path_state mean_path(double t, const params::scenario_params& p,
                          const field::field_profile& f) {
    const double wd2 = -(p.chi_rho / p.consts.mu0) * p.eta * p.eta;
    if (wd2 <= 0.0) return {0.0, 0.0};
    const double wd = std::sqrt(wd2);
    const double Z0 = f.Z0;
    if (t < f.tau1) return {Z0 * (1.0 - std::cos(wd * t)), Z0 * wd * std::sin(wd * t)};
    const double z1 = Z0 * (1.0 - std::cos(wd * f.tau1));
    const double v1 = Z0 * wd * std::sin(wd * f.tau1);
    if (t <= f.tau2) return {z1 + v1 * (t - f.tau1), v1};
    const double z2 = z1 + v1 * (f.tau2 - f.tau1);
    const double ph = wd * (t - f.tau2);
    return {Z0 + (z2 - Z0) * std::cos(ph) + (v1 / wd) * std::sin(ph),
            -(z2 - Z0) * wd * std::sin(ph) + v1 * std::cos(ph)};
}

// beta_bar_s - beta0 = track_coeff * s * Bz
double track_coeff(const params::scenario_params& p,
                   const params::cylinder_geometry& g) {
    const double r = g.I_perp / g.I_3;
    return r * r * p.mu_spin * p.beta0 / (g.I_perp * p.omega0 * p.omega0);
}

double trapezoid(const std::vector<double>& t, const std::vector<double>& y,
                 std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t i = lo + 1; i <= hi; ++i)
        s += 0.5 * (y[i] + y[i - 1]) * (t[i] - t[i - 1]);
    return s;
}

libration_summary finish_summary(libration_summary ls, double t_flip,
                                 const params::scenario_params& p,
                                 const params::cylinder_geometry& g) {
    const std::size_t n = ls.t_grid.size();
    std::vector<double> gap(n), agap(n);
    std::size_t i_flip = 0;
    for (std::size_t i = 0; i < n; ++i) {
        gap[i] = ls.beta_bar_plus[i] - ls.beta_bar_minus[i];
        agap[i] = std::abs(gap[i]);
        if (ls.t_grid[i] <= t_flip) i_flip = i;
    }
    ls.sigma_A = trapezoid(ls.t_grid, agap, 0, i_flip);
    ls.sigma_B = trapezoid(ls.t_grid, agap, i_flip, n - 1);
    const double signed_total = trapezoid(ls.t_grid, gap, 0, n - 1);
    ls.delta_alpha_estimate =
        (g.I_3 / g.I_perp) * (p.omega0 / p.beta0) * signed_total;
    ls.delta_beta_bar_flip = std::abs(gap[i_flip]);
    return ls;
}

} // namespace

double mean_path_z(double t, const params::scenario_params& p,
                   const field::field_profile& f) {
    return mean_path(t, p, f).z;
}

double mean_path_Bz(double t, const params::scenario_params& p,
                    const field::field_profile& f) {
    const double z = mean_path(t, p, f).z;
    if (t < f.tau1) return f.B0 - p.eta * z;
    if (t <= f.tau2) return f.B1;
    return p.eta * z - f.B0;
}

libration_summary summarize(const dyn::arm_pair& pair,
                            const params::scenario_params& p,
                            const params::cylinder_geometry& g,
                            const field::field_profile& f) {
    libration_summary ls;
    if (p.omega0 == 0.0) {
        ls.valid = false;
        return ls;
    }
    const double c = track_coeff(p, g);
    ls.A_beta_0 = c * p.B0;
    ls.A_beta_closed_bound = 3.0 * ls.A_beta_0;
    const std::size_t n = std::min(pair.plus.samples.size(), pair.minus.samples.size());
    ls.t_grid.resize(n);
    ls.beta_bar_plus.resize(n);
    ls.beta_bar_minus.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = pair.plus.samples[i];
        const auto& b = pair.minus.samples[i];
        ls.t_grid[i] = a.t;
        ls.beta_bar_plus[i] =
            p.beta0 + c * static_cast<double>(a.s_label) * field::sample(a.t, a.z, f).Bz;
        ls.beta_bar_minus[i] =
            p.beta0 + c * static_cast<double>(b.s_label) * field::sample(b.t, b.z, f).Bz;
    }
    return finish_summary(std::move(ls), p.t_flip, p, g);
}

libration_summary summarize_closed_form(const params::scenario_params& p,
                                        const params::cylinder_geometry& g,
                                        const field::field_profile& f,
                                        std::size_t grid) {
    libration_summary ls;
    if (p.omega0 == 0.0) {
        ls.valid = false;
        return ls;
    }
    const double c = track_coeff(p, g);
    ls.A_beta_0 = c * p.B0;
    ls.A_beta_closed_bound = 3.0 * ls.A_beta_0;
    const std::size_t n = std::max<std::size_t>(grid, 8) + 1;
    ls.t_grid.resize(n);
    ls.beta_bar_plus.resize(n);
    ls.beta_bar_minus.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = p.t_closed * static_cast<double>(i) / static_cast<double>(n - 1);
        const double Bz = mean_path_Bz(t, p, f);
        const double s_plus = (t <= p.t_flip) ? 1.0 : -1.0;
        ls.t_grid[i] = t;
        ls.beta_bar_plus[i] = p.beta0 + c * s_plus * Bz;
        ls.beta_bar_minus[i] = p.beta0 - c * s_plus * Bz;
    }
    return finish_summary(std::move(ls), p.t_flip, p, g);
}

mismatch_set mismatches(const dyn::arm_pair& pair) {
    const auto& a = pair.plus.samples.back();
    const auto& b = pair.minus.samples.back();
    return {a.beta - b.beta, a.alpha - b.alpha, a.gamma - b.gamma};
}

double mean_amplitude(const dyn::arm_trajectory& arm,
                      const params::scenario_params& p,
                      const params::cylinder_geometry& g,
                      const field::field_profile& f, double t_lo, double t_hi) {
    if (p.omega0 == 0.0) return std::numeric_limits<double>::quiet_NaN();
    const double c = track_coeff(p, g);
    const double w_fast = p.omega0 * g.I_3 / g.I_perp;
    double acc = 0.0;
    std::size_t cnt = 0;
    for (const auto& st : arm.samples) {
        if (st.t <= t_lo || st.t > t_hi) continue;
        const double Bz = field::sample(st.t, st.z, f).Bz;
        const double u = st.beta - (p.beta0 + c * static_cast<double>(st.s_label) * Bz);
        const double ud = st.beta_dot / w_fast;
        acc += std::sqrt(u * u + ud * ud);
        ++cnt;
    }
    return cnt ? acc / static_cast<double>(cnt)
               : std::numeric_limits<double>::quiet_NaN();
}

double amplitude_at_close(const dyn::arm_trajectory& arm,
                          const params::scenario_params& p,
                          const params::cylinder_geometry& g,
                          const field::field_profile& f) {
    if (p.omega0 == 0.0 || arm.samples.empty())
        return std::numeric_limits<double>::quiet_NaN();
    const double c = track_coeff(p, g);
    const double w_fast = p.omega0 * g.I_3 / g.I_perp;
    const auto& st = arm.samples.back();
    const double Bz = field::sample(st.t, st.z, f).Bz;
    const double u = st.beta - (p.beta0 + c * static_cast<double>(st.s_label) * Bz);
    const double ud = st.beta_dot / w_fast;
    return std::sqrt(u * u + ud * ud);
}

contrast_report contrast_thermal(const mismatch_set& mm, const libration_summary& ls,
                                 double dp_alpha_over_hbar, double dp_gamma_over_hbar,
                                 double n_occ, const params::scenario_params& p,
                                 const params::cylinder_geometry& g) {
    const double hbar = p.consts.hbar;
    contrast_report r{};
    r.n_occ = n_occ;
    r.dp_alpha = dp_alpha_over_hbar * hbar;
    r.dp_gamma = (dp_gamma_over_hbar < 0.0)
                     ? r.dp_alpha * std::cos(p.beta0)
                     : dp_gamma_over_hbar * hbar;
    if (p.omega0 == 0.0 || !ls.valid) {
        r.C_zero = r.C_thermal = std::numeric_limits<double>::quiet_NaN();
        r.kappa0_abs = r.kappa_closed_bound = r.delta_X = r.term_rot =
            std::numeric_limits<double>::quiet_NaN();
        return r;
    }
    const double ta = mm.delta_alpha * mm.delta_alpha * r.dp_alpha * r.dp_alpha /
                      (2.0 * hbar * hbar);
    const double tg = mm.delta_gamma * mm.delta_gamma * r.dp_gamma * r.dp_gamma /
                      (2.0 * hbar * hbar);
    const double ir = g.I_perp / g.I_3;
    r.term_rot = ir * ir * ir * ir * 16.0 * p.mu_spin * p.mu_spin * p.B0 * p.B0 *
                 p.beta0 * p.beta0 /
                 (hbar * g.I_perp * p.omega0 * p.omega0 * p.omega0);
    r.C_zero = std::exp(-(ta + tg + r.term_rot));
    r.C_thermal = std::exp(-(ta + tg + (1.0 + 2.0 * n_occ) * r.term_rot));
    const double zp = std::sqrt(g.I_perp * p.omega0 / (2.0 * hbar));
    r.kappa0_abs = zp * ls.A_beta_0;
    r.kappa_closed_bound = zp * ls.A_beta_closed_bound;
    if (!ls.t_grid.empty())
        r.delta_X = zp * std::abs(ls.beta_bar_plus.back() - ls.beta_bar_minus.back());
    return r;
}

contrast_report contrast_zero_T(const mismatch_set& mm, const libration_summary& ls,
                                double dp_alpha_over_hbar, double dp_gamma_over_hbar,
                                const params::scenario_params& p,
                                const params::cylinder_geometry& g) {
    return contrast_thermal(mm, ls, dp_alpha_over_hbar, dp_gamma_over_hbar, 0.0, p, g);
}

double occupation_from_temperature(double T_lib, double omega0,
                                   const physical_constants& c) {
    if (T_lib < 0.0) throw config_error("T_lib", "temperature must be >= 0");
    if (omega0 <= 0.0) throw config_error("omega0", "thermal occupation needs omega0 > 0");
    return c.kB * T_lib / (c.hbar * omega0);
}

} // namespace sgr::contrast
