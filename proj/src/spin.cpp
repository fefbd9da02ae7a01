#include "sgrotor/spin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sgrotor/errors.hpp"

namespace sgr::spin {

bool is_hermitian(const spin_matrix3& m, double rel_tol) {
    double scale = 0.0;
    for (const auto& v : m.a) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return true;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (std::abs(m.at(i, j) - std::conj(m.at(j, i))) > rel_tol * scale) return false;
    return true;
}

spin_matrix3 build_h_spin(double B_par, double B_perp, double gamma,
                          const params::scenario_params& p) {
    const double D = p.D_zfs, E = p.E_strain, mu = p.mu_spin;
    const cplx off = mu * B_perp / std::sqrt(2.0) * std::exp(cplx(0.0, gamma));
    spin_matrix3 h;
    h.at(0, 0) = D / 3.0 + mu * B_par;
    h.at(1, 1) = -2.0 * D / 3.0;
    h.at(2, 2) = D / 3.0 - mu * B_par;
    h.at(0, 1) = off;
    h.at(1, 0) = std::conj(off);
    h.at(1, 2) = off;
    h.at(2, 1) = std::conj(off);
    h.at(0, 2) = E;
    h.at(2, 0) = E;
    return h;
}

effective_spin2 feshbach_reduce(const spin_matrix3& h3, const params::scenario_params& p,
                                double omega0_frame) {
    const double D = p.D_zfs;
    // recover the field content from the matrix layout
    const double muB_par = 0.5 * std::real(h3.at(0, 0) - h3.at(2, 2));
    const cplx off = h3.at(0, 1); // mu B_perp e^{i gamma} / sqrt(2)
    const double muB_perp = std::sqrt(2.0) * std::abs(off);
    const double gamma = (muB_perp > 0.0) ? std::arg(off) : 0.0;
    const double E = std::real(h3.at(0, 2));

    const double muB = std::hypot(muB_par, muB_perp);
    if (D <= 10.0 * muB)
        throw validity_error("feshbach projection invalid: D <= 10 mu |B|");

    effective_spin2 e2;
    const double corr = muB_perp * muB_perp / (2.0 * D);
    e2.shift = D / 3.0 + corr;
    e2.delta_plus  = muB_par - p.consts.hbar * omega0_frame;
    e2.delta_minus = -muB_par + p.consts.hbar * omega0_frame;
    e2.W = E + corr * std::exp(cplx(0.0, 2.0 * gamma));
    return e2;
}

std::array<double, 2> effective_spin2::eigenvalues() const {
    const double mid = 0.5 * (delta_plus + delta_minus);
    const double half = 0.5 * (delta_plus - delta_minus);
    const double r = std::hypot(half, std::abs(W));
    return {shift + mid - r, shift + mid + r};
}

std::pair<double, double> spin_potential(double B_par, double E_strain,
                                         const params::scenario_params& p) {
    const double r = std::hypot(p.mu_spin * B_par, E_strain);
    return {r + p.D_zfs / 3.0, -r + p.D_zfs / 3.0};
}

std::array<double, 3> eigvals_hermitian3(const spin_matrix3& m) {
    // standard trigonometric solution of the characteristic cubic
    const double q = std::real(m.at(0, 0) + m.at(1, 1) + m.at(2, 2)) / 3.0;
    const double p1 = std::norm(m.at(0, 1)) + std::norm(m.at(0, 2)) + std::norm(m.at(1, 2));
    double p2 = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double d = std::real(m.at(i, i)) - q;
        p2 += d * d;
    }
    p2 += 2.0 * p1;
    if (p2 <= 0.0) return {q, q, q};
    const double p = std::sqrt(p2 / 6.0);
    // B = (A - q I)/p, r = det(B)/2
    spin_matrix3 b = m;
    for (int i = 0; i < 3; ++i) b.at(i, i) -= q;
    for (auto& v : b.a) v /= p;
    const cplx det = b.at(0, 0) * (b.at(1, 1) * b.at(2, 2) - b.at(1, 2) * b.at(2, 1)) -
                     b.at(0, 1) * (b.at(1, 0) * b.at(2, 2) - b.at(1, 2) * b.at(2, 0)) +
                     b.at(0, 2) * (b.at(1, 0) * b.at(2, 1) - b.at(1, 1) * b.at(2, 0));
    const double r = std::clamp(std::real(det) / 2.0, -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;
    const double e1 = q + 2.0 * p * std::cos(phi);
    const double e3 = q + 2.0 * p * std::cos(phi + 2.0 * pi / 3.0);
    const double e2 = 3.0 * q - e1 - e3;
    std::array<double, 3> ev{e1, e2, e3};
    std::sort(ev.begin(), ev.end());
    return ev;
}

static std::array<cplx, 3> cross3(const std::array<cplx, 3>& a, const std::array<cplx, 3>& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

std::array<std::array<cplx, 3>, 3> eigvecs_hermitian3(const spin_matrix3& m,
                                                      const std::array<double, 3>& evals) {
    std::array<std::array<cplx, 3>, 3> vecs{};
    for (int k = 0; k < 3; ++k) {
        std::array<std::array<cplx, 3>, 3> rows;
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m.at(i, j);
            rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] -= evals[static_cast<std::size_t>(k)];
        }
        // null direction = largest cross product of row pairs
        std::array<cplx, 3> best{};
        double best_n = -1.0;
        const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
        for (const auto& pr : pairs) {
            const auto c = cross3(rows[static_cast<std::size_t>(pr[0])], rows[static_cast<std::size_t>(pr[1])]);
            const double n = std::norm(c[0]) + std::norm(c[1]) + std::norm(c[2]);
            if (n > best_n) {
                best_n = n;
                best = c;
            }
        }
        double nn = std::sqrt(std::norm(best[0]) + std::norm(best[1]) + std::norm(best[2]));
        if (nn == 0.0) { // degenerate: fall back to a basis vector
            best = {k == 0 ? 1.0 : 0.0, k == 1 ? 1.0 : 0.0, k == 2 ? 1.0 : 0.0};
            nn = 1.0;
        }
        for (auto& v : best) v /= nn;
        vecs[static_cast<std::size_t>(k)] = best;
    }
    return vecs;
}

static std::array<double, 3> cross(const std::array<double, 3>& a,
                                   const std::array<double, 3>& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

edh_derivatives edh_rhs(const rotor_mechanical_state& st, const params::cylinder_geometry& g,
                        const params::scenario_params& p) {
    const std::array<double, 3> inertia{g.I_perp, g.I_perp, g.I_3};
    std::array<double, 3> omega;
    for (int i = 0; i < 3; ++i)
        omega[static_cast<std::size_t>(i)] =
            st.L[static_cast<std::size_t>(i)] / inertia[static_cast<std::size_t>(i)];
    const double mu = p.mu_spin, hbar = p.consts.hbar;

    const auto SxB = cross(st.S, st.B_body);
    const auto WxS = cross(omega, st.S);
    const auto BxS = cross(st.B_body, st.S);
    const auto SxW = cross(st.S, omega);
    const auto LxW = cross(st.L, omega);

    edh_derivatives d;
    for (int i = 0; i < 3; ++i) {
        const auto k = static_cast<std::size_t>(i);
        d.dS[k] = (mu / hbar) * SxB[k] + WxS[k];
        d.dL[k] = mu * BxS[k] + hbar * SxW[k] + LxW[k];
    }
    return d;
}

window_report validate_omega0(const params::scenario_params& p,
                              const params::cylinder_geometry& g) {
    window_report w{};
    const double muB0 = p.mu_spin * p.B0;
    w.r1 = p.omega0 / std::sqrt(muB0 / g.I_perp);
    w.r2 = p.omega0 * p.consts.hbar / muB0;
    const double gap = p.D_zfs - muB0;
    w.r3 = gap > 0 ? p.omega0 * p.consts.hbar / gap
                   : std::numeric_limits<double>::infinity();
    w.pass = (w.r1 >= 10.0) && (w.r2 <= 0.1) && (w.r3 <= 0.1);
    return w;
}

std::string window_report::to_line() const {
    std::ostringstream os;
    os.precision(6);
    os << "omega0_window: " << (pass ? "PASS" : "FAIL") << " r1=" << r1 << " r2=" << r2
       << " r3=" << r3;
    return os.str();
}

} // namespace sgr::spin
