#include "sgrotor/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "sgrotor/errors.hpp"

namespace sgr::dyn {

namespace {
constexpr double eps_beta = 1e-6; // chart guard threshold on sin(beta)
}

conserved_momenta conserved_momenta::from(const params::scenario_params& p,
                                          const params::cylinder_geometry& g) {
    conserved_momenta m;
    m.omega0 = p.omega0;
    m.beta0 = p.beta0;
    m.cos_beta0 = std::cos(p.beta0);
    m.p_gamma = g.I_3 * p.omega0;
    m.p_alpha = g.I_3 * p.omega0 * m.cos_beta0;
    return m;
}

double z_rhs(const rotor_state& st, const field::field_sample& fs,
             const params::scenario_params& p) {
    const double cb = std::cos(st.beta);
    const double Z0 = p.B0 / p.eta;
    const double dz = st.z - Z0;
    // chi_rho < 0 makes this a restoring force about Z0
    double acc = (p.chi_rho / p.consts.mu0) * fs.eta_tilde * fs.eta_tilde * dz;
    if (st.s_label != 0) {
        const double s = static_cast<double>(st.s_label);
        if (p.E_strain > 0.0) {
            const double B_par = fs.eta_tilde * dz * cb;
            const double denom = std::hypot(p.mu_spin * B_par, p.E_strain);
            acc += -s * p.mu_spin * p.mu_spin * fs.eta_tilde * fs.eta_tilde * dz * cb * cb /
                   (p.mass * denom);
        } else {
            acc += -s * p.mu_spin * fs.eta_tilde * cb / p.mass;
        }
    }
    return acc;
}

double beta_rhs_full(const rotor_state& st, const conserved_momenta& mom,
                     const field::field_sample& fs, double B_nv,
                     const params::cylinder_geometry& g,
                     const params::scenario_params& p, bool strict_bnv) {
    const double sb = std::sin(st.beta);
    const double cb = std::cos(st.beta);
    double acc = 0.0;
    if (mom.omega0 != 0.0) {
        if (st.beta <= 0.0 || st.beta >= pi)
            throw integration_error("beta chart exit", st.t);
        // (cos b0 - cos b)(1 - cos b0 cos b)/sin^3 b without cancellation:
        // cos b0 - cos b   = 2 sp sm
        // 1 - cos b0 cos b = sp^2 + sm^2,  sp/sm = sin((b +/- b0)/2)
        const double sp = std::sin(0.5 * (st.beta + mom.beta0));
        const double sm = std::sin(0.5 * (st.beta - mom.beta0));
        const double ratio = g.I_3 / g.I_perp;
        acc -= mom.omega0 * mom.omega0 * ratio * ratio * (2.0 * sp * sm) * (sp * sp + sm * sm) /
               (sb * sb * sb);
    }
    if (st.s_label != 0) {
        const double s = static_cast<double>(st.s_label);
        const double zee_B = strict_bnv ? B_nv : fs.Bz;
        acc += s * p.mu_spin * zee_B * sb / g.I_perp;
        const double ang = strict_bnv ? std::sin(st.beta + p.alpha_prime)
                                      : std::sin(p.alpha_prime);
        acc -= s * p.mu_spin * fs.eta_tilde * p.d_off * ang * cb / g.I_perp;
    }
    return acc;
}

std::pair<double, double> alpha_gamma_rhs(const rotor_state& st,
                                          const conserved_momenta& mom,
                                          const params::cylinder_geometry& g) {
    if (mom.omega0 == 0.0) return {0.0, 0.0}; // p_alpha = p_gamma = 0
    const double sb = std::sin(st.beta);
    if (st.beta <= 0.0 || st.beta >= pi)
        throw integration_error("beta chart exit", st.t);
    const double sp = std::sin(0.5 * (st.beta + mom.beta0));
    const double sm = std::sin(0.5 * (st.beta - mom.beta0));
    const double alpha_dot =
        (g.I_3 / g.I_perp) * mom.omega0 * (2.0 * sp * sm) / (sb * sb);
    const double gamma_dot = mom.omega0 - alpha_dot * std::cos(st.beta);
    return {alpha_dot, gamma_dot};
}

namespace {

struct rhs_ctx {
    const params::scenario_params* p;
    const field::field_profile* f;
    const params::cylinder_geometry* g;
    conserved_momenta mom;
    int s;
    bool strict;
    bool freeze;
    std::size_t guard_hits = 0;
};

// y = {z, vz, beta, vbeta, alpha, gamma_dev}; gamma_dev = gamma - w0 t keeps
// the integrated quantity small (gamma itself grows to ~1e5 rad)
void eval_rhs(rhs_ctx& c, double t, const std::array<double, 6>& y,
              std::array<double, 6>& dy) {
    rotor_state st;
    st.t = t;
    st.z = y[0];
    st.z_dot = y[1];
    st.beta = c.freeze ? c.p->beta0 : y[2];
    st.beta_dot = y[3];
    st.alpha = y[4];
    st.gamma = y[5];
    st.s_label = c.s;
    const field::field_sample fs = field::sample(t, st.z, *c.f);
    st.stage = fs.stage;

    dy[0] = y[1];
    dy[1] = z_rhs(st, fs, *c.p);
    if (c.freeze) {
        dy[2] = 0.0;
        dy[3] = 0.0;
        dy[4] = 0.0;
        dy[5] = 0.0;
        return;
    }
    dy[2] = y[3];
    const double B_nv = fs.Bz + fs.eta_tilde * c.p->d_off * std::cos(st.beta + c.p->alpha_prime);
    const bool guarded = c.mom.omega0 != 0.0 && std::abs(std::sin(st.beta)) < eps_beta;
    if (guarded) {
        // series substitution around beta0: harmonic rotational term
        ++c.guard_hits;
        const double ratio = c.g->I_3 / c.g->I_perp;
        const double wf2 = c.mom.omega0 * c.mom.omega0 * ratio * ratio;
        double acc = -wf2 * (st.beta - c.mom.beta0);
        if (c.s != 0) {
            const double s = static_cast<double>(c.s);
            const double zee_B = c.strict ? B_nv : fs.Bz;
            acc += s * c.p->mu_spin * zee_B * std::sin(st.beta) / c.g->I_perp;
            const double ang = c.strict ? std::sin(st.beta + c.p->alpha_prime)
                                        : std::sin(c.p->alpha_prime);
            acc -= s * c.p->mu_spin * fs.eta_tilde * c.p->d_off * ang * std::cos(st.beta) /
                   c.g->I_perp;
        }
        dy[3] = acc;
        dy[4] = 0.0;
        dy[5] = 0.0;
        return;
    }
    dy[3] = beta_rhs_full(st, c.mom, fs, B_nv, *c.g, *c.p, c.strict);
    const auto [ad, gd] = alpha_gamma_rhs(st, c.mom, *c.g);
    dy[4] = ad;
    dy[5] = gd - c.mom.omega0; // gamma_dev rate = -alpha_dot cos(beta)
}

} // namespace

arm_trajectory integrate_arm(int s_initial, int s_after_flip,
                             const params::scenario_params& p,
                             const field::field_profile& f,
                             const integrate_options& opt) {
    params::validate(p);
    const params::cylinder_geometry g = params::build_geometry(p);
    arm_trajectory arm;
    arm.s_initial = s_initial;
    arm.s_final = s_after_flip;

    const spin::window_report win = spin::validate_omega0(p, g);
    if (!win.pass) arm.events.push_back({0.0, "omega0_window_warn: " + win.to_line()});

    rhs_ctx ctx;
    ctx.p = &p;
    ctx.f = &f;
    ctx.g = &g;
    ctx.mom = conserved_momenta::from(p, g);
    ctx.strict = opt.strict_bnv;
    ctx.freeze = opt.freeze_beta;

    rk::rk_options ro;
    ro.rtol = opt.rtol;
    ro.atol = opt.atol;
    ro.fixed_step = opt.fixed_step;
    if (opt.fixed_step) {
        double w_fast = p.omega0 * g.I_3 / g.I_perp;
        if (w_fast <= 0.0) w_fast = std::sqrt(p.mu_spin * p.B0 / g.I_perp);
        ro.fixed_dt = 2.0 * pi / (50.0 * w_fast);
    }
    ro.h_init = 1e-7;

    const std::size_t n = std::max<std::size_t>(opt.grid_samples, 4);
    std::vector<double> grid(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        grid[i] = p.t_closed * static_cast<double>(i) / static_cast<double>(n);
    grid.back() = p.t_closed;
    arm.samples.reserve(n + 1);

    // at omega0 = 0 there is no gyroscopic stiffness and beta0 loses its role
    // as the spin axis tilt; the libration starts from the field axis instead
    std::array<double, 6> y{0.0, 0.0, p.omega0 == 0.0 ? 0.0 : p.beta0, 0.0, 0.0, 0.0};
    const double segs[5] = {0.0, p.tau1, p.tau2, p.t_flip, p.t_closed};
    std::size_t gi = 0;
    for (int seg = 0; seg < 4; ++seg) {
        ctx.s = (seg < 3) ? s_initial : s_after_flip;
        const double t0 = segs[seg], t1 = segs[seg + 1];
        // grid times inside (t0, t1], plus t - 0 for the first segment
        std::size_t lo = gi;
        while (gi <= n && grid[gi] <= t1 + 1e-15) ++gi;
        std::span<const double> times(grid.data() + lo, gi - lo);
        const std::size_t guard_before = ctx.guard_hits;
        auto sink = [&](double t, const std::array<double, 6>& ys) {
            rotor_state st;
            st.t = t;
            st.z = ys[0];
            st.z_dot = ys[1];
            st.beta = ctx.freeze ? p.beta0 : ys[2];
            st.beta_dot = ys[3];
            st.alpha = ys[4];
            st.gamma = ys[5] + p.omega0 * t;
            st.s_label = ctx.s;
            st.stage = field::sample(t, ys[0], f).stage;
            arm.samples.push_back(st);
        };
        const rk::rk_stats st =
            rk::integrate<6>([&](double t, const std::array<double, 6>& ys,
                                 std::array<double, 6>& dy) { eval_rhs(ctx, t, ys, dy); },
                             t0, t1, y, ro, times, sink);
        arm.stats.steps += st.steps;
        arm.stats.rejected += st.rejected;
        arm.stats.evals += st.evals;
        if (ctx.guard_hits > guard_before)
            arm.events.push_back(
                {t1, "chart_guard_substitutions: " +
                         std::to_string(ctx.guard_hits - guard_before)});
        if (seg == 2)
            arm.events.push_back({p.t_flip, "spin_flip " + std::to_string(s_initial) +
                                                " -> " + std::to_string(s_after_flip)});
    }
    return arm;
}

arm_pair run_pair(const params::scenario_params& p, const field::field_profile& f,
                  const integrate_options& opt) {
    int mode = opt.pair_mode;
    if (mode == 0) mode = (p.omega0 == 0.0) ? 2 : 1;
    arm_pair pair;
    if (mode == 2) {
        // omega0 = 0 scheme: {0,-1}, the flip swaps the two labels
        pair.plus = integrate_arm(0, -1, p, f, opt);
        pair.minus = integrate_arm(-1, 0, p, f, opt);
    } else {
        pair.plus = integrate_arm(+1, -1, p, f, opt);
        pair.minus = integrate_arm(-1, +1, p, f, opt);
    }
    return pair;
}

std::pair<double, double> momentum_drift(const arm_trajectory& arm,
                                         const params::scenario_params& p,
                                         const params::cylinder_geometry& g) {
    const conserved_momenta mom = conserved_momenta::from(p, g);
    if (mom.p_gamma == 0.0) return {0.0, 0.0};
    double da = 0.0, dg = 0.0;
    for (const auto& st : arm.samples) {
        const auto [ad, gd] = alpha_gamma_rhs(st, mom, g);
        const double cb = std::cos(st.beta), sb = std::sin(st.beta);
        const double pg = g.I_3 * (gd + ad * cb);
        const double pa = g.I_perp * ad * sb * sb + pg * cb;
        da = std::max(da, std::abs(pa - mom.p_alpha) / std::abs(mom.p_alpha));
        dg = std::max(dg, std::abs(pg - mom.p_gamma) / std::abs(mom.p_gamma));
    }
    return {da, dg};
}

double hold_energy(const rotor_state& st, const conserved_momenta& mom,
                   const params::scenario_params& p,
                   const params::cylinder_geometry& g) {
    const double sb = std::sin(st.beta), cb = std::cos(st.beta);
    double rot = 0.0;
    if (mom.p_gamma != 0.0 || mom.p_alpha != 0.0) {
        const double num = mom.p_alpha - mom.p_gamma * cb;
        rot = num * num / (2.0 * g.I_perp * sb * sb) +
              mom.p_gamma * mom.p_gamma / (2.0 * g.I_3);
    }
    return 0.5 * p.mass * st.z_dot * st.z_dot + 0.5 * g.I_perp * st.beta_dot * st.beta_dot +
           rot + static_cast<double>(st.s_label) * p.mu_spin * p.B1 * cb;
}

pair_stats analyze_pair(const arm_pair& pair) {
    pair_stats ps{};
    const auto& a = pair.plus.samples;
    const auto& b = pair.minus.samples;
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        const double dz = std::abs(a[i].z - b[i].z);
        const double dv = std::abs(a[i].z_dot - b[i].z_dot);
        if (dz > ps.max_delta_z) {
            ps.max_delta_z = dz;
            ps.t_peak = a[i].t;
        }
        ps.max_delta_v = std::max(ps.max_delta_v, dv);
        ps.beta_max_plus = std::max(ps.beta_max_plus, std::abs(a[i].beta));
        ps.beta_max_minus = std::max(ps.beta_max_minus, std::abs(b[i].beta));
    }
    ps.delta_z_closed = a[n - 1].z - b[n - 1].z;
    ps.delta_v_closed = a[n - 1].z_dot - b[n - 1].z_dot;
    ps.closure_z_pct =
        ps.max_delta_z > 0 ? 100.0 * std::abs(ps.delta_z_closed) / ps.max_delta_z : 0.0;
    ps.closure_v_pct =
        ps.max_delta_v > 0 ? 100.0 * std::abs(ps.delta_v_closed) / ps.max_delta_v : 0.0;
    return ps;
}

} // namespace sgr::dyn
