#include "sgrotor/sweep.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sgrotor/errors.hpp"

namespace sgr::sweep {

namespace {

constexpr double nan_v = std::numeric_limits<double>::quiet_NaN();

// fixed nesting order keeps row order deterministic regardless of the map's
// iteration order in the config
constexpr const char* axis_order[] = {"mass",  "omega0", "DL_ratio", "dp_over_hbar",
                                      "n_occ", "T_lib",  "E_strain"};

bool known_axis(const std::string& name) {
    for (const char* a : axis_order)
        if (name == a) return true;
    return false;
}

} // namespace

std::vector<sweep_point> expand_axes(const params::scenario_params& base,
                                     const io::run_settings& rs,
                                     const std::map<std::string, io::axis_spec>& axes) {
    for (const auto& [name, ax] : axes) {
        (void)ax;
        if (!known_axis(name)) throw config_error("axis." + name, "unknown axis");
    }
    const auto axis_values = [&](const char* name,
                                 std::vector<double> fallback) -> std::vector<double> {
        const auto it = axes.find(name);
        return it == axes.end() ? fallback : it->second.values();
    };
    const auto masses = axis_values("mass", {base.mass});
    const auto omegas = axis_values("omega0", {base.omega0});
    const auto ratios = axis_values("DL_ratio", {nan_v}); // nan = keep base geometry
    const auto dps = axis_values("dp_over_hbar", rs.dp_over_hbar);
    const auto ns = axis_values("n_occ", {rs.n_occ});
    const auto temps = axis_values("T_lib", {rs.T_lib ? *rs.T_lib : nan_v});
    const auto strains = axis_values("E_strain", {base.E_strain});

    std::vector<sweep_point> pts;
    pts.reserve(masses.size() * omegas.size() * ratios.size() * dps.size() * ns.size() *
                temps.size() * strains.size());
    for (double m : masses)
        for (double w : omegas)
            for (double dl : ratios)
                for (double dp : dps)
                    for (double n : ns)
                        for (double T : temps)
                            for (double E : strains) {
                                sweep_point pt;
                                pt.p = base;
                                pt.p.mass = m;
                                pt.p.omega0 = w;
                                if (!std::isnan(dl)) {
                                    pt.p.DL_ratio = dl;
                                    pt.p.L_height = 0.0;
                                }
                                pt.p.E_strain = E;
                                pt.dp_over_hbar = dp;
                                pt.n_occ = std::isnan(T)
                                               ? n
                                               : contrast::occupation_from_temperature(
                                                     T, w, pt.p.consts);
                                if (axes.count("mass")) pt.axis_echo["mass"] = m;
                                if (axes.count("omega0")) pt.axis_echo["omega0"] = w;
                                if (axes.count("DL_ratio")) pt.axis_echo["DL_ratio"] = dl;
                                if (axes.count("dp_over_hbar"))
                                    pt.axis_echo["dp_over_hbar"] = dp;
                                if (axes.count("n_occ")) pt.axis_echo["n_occ"] = n;
                                if (!std::isnan(T)) pt.axis_echo["T_lib"] = T;
                                if (axes.count("E_strain")) pt.axis_echo["E_strain"] = E;
                                params::validate(pt.p);
                                pts.push_back(std::move(pt));
                            }
    return pts;
}

sweep_row evaluate_point(const sweep_point& pt, const dyn::integrate_options& opt) {
    const auto& p = pt.p;
    const params::cylinder_geometry g = params::build_geometry(p);
    const field::field_profile f = field::field_profile::from(p);
    const dyn::arm_pair pair = dyn::run_pair(p, f, opt);
    const dyn::pair_stats ps = dyn::analyze_pair(pair);
    const contrast::mismatch_set mm = contrast::mismatches(pair);
    const contrast::libration_summary ls = contrast::summarize(pair, p, g, f);
    const contrast::contrast_report cr =
        contrast::contrast_thermal(mm, ls, pt.dp_over_hbar, -1.0, pt.n_occ, p, g);

    sweep_row r{};
    r.mass = p.mass;
    r.omega0 = p.omega0;
    r.DL_ratio = 2.0 * g.radius / g.height;
    r.dp_over_hbar = pt.dp_over_hbar;
    r.n_occ = pt.n_occ;
    const auto t_it = pt.axis_echo.find("T_lib");
    r.T_lib = t_it == pt.axis_echo.end() ? nan_v : t_it->second;
    r.C_zero = cr.C_zero;
    r.C_thermal = cr.C_thermal;
    r.delta_alpha = mm.delta_alpha;
    r.delta_gamma = mm.delta_gamma;
    r.delta_beta = mm.delta_beta;
    r.A_beta0 = ls.valid ? ls.A_beta_0 : nan_v;
    r.kappa0 = cr.kappa0_abs;
    r.E_strain = p.E_strain;
    r.max_delta_z = ps.max_delta_z;
    r.t_peak = ps.t_peak;
    r.closure_z_pct = ps.closure_z_pct;
    r.closure_v_pct = ps.closure_v_pct;
    r.beta_max_plus = ps.beta_max_plus;
    r.beta_max_minus = ps.beta_max_minus;
    return r;
}

std::vector<sweep_row> run_serial(const std::vector<sweep_point>& pts,
                                  const dyn::integrate_options& opt) {
    std::vector<sweep_row> rows(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) rows[i] = evaluate_point(pts[i], opt);
    return rows;
}

std::vector<sweep_row> run_parallel(const std::vector<sweep_point>& pts,
                                    const dyn::integrate_options& opt,
                                    int max_threads) {
    std::vector<sweep_row> rows(pts.size());
#ifdef _OPENMP
    std::exception_ptr first_err;
    const int nthreads = max_threads > 0 ? max_threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(pts.size()); ++i) {
        try {
            rows[static_cast<std::size_t>(i)] =
                evaluate_point(pts[static_cast<std::size_t>(i)], opt);
        } catch (...) {
#pragma omp critical
            if (!first_err) first_err = std::current_exception();
        }
    }
    if (first_err) std::rethrow_exception(first_err);
#else
    (void)max_threads;
    rows = run_serial(pts, opt);
#endif
    return rows;
}

namespace {

bool same_bits(double a, double b) {
    return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

} // namespace

bool rows_identical(const std::vector<sweep_row>& a, const std::vector<sweep_row>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto& x = a[i];
        const auto& y = b[i];
        const double* px = &x.mass;
        const double* py = &y.mass;
        constexpr std::size_t nfields = sizeof(sweep_row) / sizeof(double);
        static_assert(sizeof(sweep_row) == nfields * sizeof(double));
        for (std::size_t k = 0; k < nfields; ++k)
            if (!same_bits(px[k], py[k])) return false;
    }
    return true;
}

} // namespace sgr::sweep
