#include "sgrotor/cli.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sgrotor/csvio.hpp"
#include "sgrotor/sweep.hpp"

namespace sgr::io {

namespace {

namespace fs = std::filesystem;
using clock_t_ = std::chrono::steady_clock;

config_map load_merged(const std::string& config_path, const std::string& preset) {
    if (config_path.empty() && preset.empty())
        throw config_error("config", "need a config file and/or --preset");
    config_map cfg;
    if (!preset.empty()) cfg = preset_config(preset);
    if (!config_path.empty()) {
        const config_map file = parse_config_file(config_path);
        for (const auto& [k, v] : file.kv) cfg.kv[k] = v; // file overrides preset
        for (const auto& [k, v] : file.axes) cfg.axes[k] = v;
    }
    return cfg;
}

void apply_flags(run_settings& rs, bool strict_bnv, bool fixed_step, bool dense_grid,
                 std::size_t& csv_stride) {
    if (strict_bnv) rs.opt.strict_bnv = true;
    if (fixed_step) rs.opt.fixed_step = true;
    csv_stride = 1;
    if (dense_grid) {
        // dense grid is used for the analysis quadrature; CSV keeps ~1e4 rows
        rs.opt.grid_samples = 1000000;
        csv_stride = 100;
    }
}

dyn::arm_trajectory decimate(const dyn::arm_trajectory& arm, std::size_t stride) {
    if (stride <= 1) return arm;
    dyn::arm_trajectory out;
    out.events = arm.events;
    out.params_hash = arm.params_hash;
    out.s_initial = arm.s_initial;
    out.s_final = arm.s_final;
    out.stats = arm.stats;
    out.samples.reserve(arm.samples.size() / stride + 2);
    for (std::size_t i = 0; i < arm.samples.size(); i += stride)
        out.samples.push_back(arm.samples[i]);
    if ((arm.samples.size() - 1) % stride != 0) out.samples.push_back(arm.samples.back());
    return out;
}

int guard(const std::function<int()>& body) {
    try {
        return body();
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const validity_error& e) {
        std::cerr << "validity error: " << e.what() << "\n";
        return 2;
    } catch (const integration_error& e) {
        std::cerr << "integration error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

double occupation_for(const run_settings& rs, const params::scenario_params& p) {
    if (rs.T_lib && p.omega0 > 0.0)
        return contrast::occupation_from_temperature(*rs.T_lib, p.omega0, p.consts);
    return rs.n_occ;
}

sweep::sweep_row
row_from_pair(const dyn::arm_pair& pair, const params::scenario_params& p,
              const params::cylinder_geometry& g, const field::field_profile& f,
              const dyn::pair_stats& ps, double dp, double n_occ, double T_echo) {
    const contrast::mismatch_set mm = contrast::mismatches(pair);
    const contrast::libration_summary ls = contrast::summarize(pair, p, g, f);
    const contrast::contrast_report cr =
        contrast::contrast_thermal(mm, ls, dp, -1.0, n_occ, p, g);
    sweep::sweep_row r{};
    r.mass = p.mass;
    r.omega0 = p.omega0;
    r.DL_ratio = 2.0 * g.radius / g.height;
    r.dp_over_hbar = dp;
    r.n_occ = n_occ;
    r.T_lib = T_echo;
    r.C_zero = cr.C_zero;
    r.C_thermal = cr.C_thermal;
    r.delta_alpha = mm.delta_alpha;
    r.delta_gamma = mm.delta_gamma;
    r.delta_beta = mm.delta_beta;
    r.A_beta0 = ls.valid ? ls.A_beta_0 : std::nan("");
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

} // namespace

int run_scenario(const std::string& config_path, const std::string& preset,
                 const std::string& out_dir, bool strict_bnv, bool fixed_step,
                 bool dense_grid) {
    return guard([&]() -> int {
        const config_map cfg = load_merged(config_path, preset);
        const params::scenario_params p = params_from_config(cfg);
        run_settings rs = settings_from_config(cfg);
        std::size_t csv_stride = 1;
        apply_flags(rs, strict_bnv, fixed_step, dense_grid, csv_stride);

        const params::cylinder_geometry g = params::build_geometry(p);
        const field::field_profile f = field::field_profile::from(p);
        const spin::window_report win = spin::validate_omega0(p, g);
        std::cout << win.to_line() << "\n";

        const auto t0 = clock_t_::now();
        dyn::arm_pair pair = dyn::run_pair(p, f, rs.opt);
        const double wall =
            std::chrono::duration<double>(clock_t_::now() - t0).count();

        const std::uint64_t hash = scenario_hash(p, rs.opt);
        pair.plus.params_hash = pair.minus.params_hash = hash;

        const dyn::pair_stats ps = dyn::analyze_pair(pair);
        const auto [dap, dgp] = dyn::momentum_drift(pair.plus, p, g);
        const auto [dam, dgm] = dyn::momentum_drift(pair.minus, p, g);

        const double n_occ = occupation_for(rs, p);
        const double T_echo = rs.T_lib ? *rs.T_lib : std::nan("");
        std::vector<sweep::sweep_row> rows;
        rows.reserve(rs.dp_over_hbar.size());
        for (double dp : rs.dp_over_hbar)
            rows.push_back(row_from_pair(pair, p, g, f, ps, dp, n_occ, T_echo));

        fs::create_directories(out_dir);
        manifest_inputs mi;
        mi.p = p;
        mi.opt = rs.opt;
        mi.omega0_window_line = win.to_line();
        mi.p_alpha_drift = std::max(dap, dam);
        mi.p_gamma_drift = std::max(dgp, dgm);
        mi.stats = ps;
        mi.closure_pass = ps.closure_z_pct <= 1.0 && ps.closure_v_pct <= 1.0;
        mi.wall_time_s = wall;
        mi.pair_kind = (pair.plus.s_initial == 0 || pair.minus.s_initial == 0)
                           ? "0/-1"
                           : "+1/-1";
        if (p.omega0 == 0.0)
            mi.notes.push_back("omega0 = 0: contrast columns are nan (no closed-form "
                               "libration mode at zero rotation)");
        for (const char* name : {"trajectory_plus.csv", "trajectory_minus.csv",
                                 "contrast.csv", "manifest.json"})
            mi.outputs.push_back((fs::path(out_dir) / name).string());

        write_trajectory_csv(mi.outputs[0], decimate(pair.plus, csv_stride));
        write_trajectory_csv(mi.outputs[1], decimate(pair.minus, csv_stride));
        write_contrast_csv(mi.outputs[2], rows);
        write_manifest(mi.outputs[3], mi);

        std::cout << "pair " << mi.pair_kind << ": max_delta_z=" << ps.max_delta_z
                  << " t_peak=" << ps.t_peak << " closure_z=" << ps.closure_z_pct
                  << "% closure_v=" << ps.closure_v_pct << "%\n"
                  << "conservation: p_alpha_drift=" << mi.p_alpha_drift
                  << " p_gamma_drift=" << mi.p_gamma_drift << "\n"
                  << "wall: " << wall << " s\n";
        for (const auto& o : mi.outputs) std::cout << "wrote " << o << "\n";
        return 0;
    });
}

int run_sweep(const std::string& config_path, const std::string& preset,
              const std::string& out_dir, bool strict_bnv, bool fixed_step,
              bool dense_grid) {
    return guard([&]() -> int {
        const config_map cfg = load_merged(config_path, preset);
        const params::scenario_params base = params_from_config(cfg);
        run_settings rs = settings_from_config(cfg);
        std::size_t csv_stride = 1;
        apply_flags(rs, strict_bnv, fixed_step, dense_grid, csv_stride);

        const auto pts = sweep::expand_axes(base, rs, cfg.axes);
        const params::cylinder_geometry g0 = params::build_geometry(base);
        const spin::window_report win = spin::validate_omega0(base, g0);
        std::cout << win.to_line() << "\n"
                  << "sweep: " << pts.size() << " points\n";

        const auto t0 = clock_t_::now();
        const auto rows = sweep::run_parallel(pts, rs.opt);
        const double wall =
            std::chrono::duration<double>(clock_t_::now() - t0).count();

        fs::create_directories(out_dir);
        const std::string contrast_path = (fs::path(out_dir) / "contrast.csv").string();
        const std::string summary_path = (fs::path(out_dir) / "summary.csv").string();
        const std::string manifest_path = (fs::path(out_dir) / "manifest.json").string();
        write_contrast_csv(contrast_path, rows);
        write_summary_csv(summary_path, rows);

        nlohmann::json j;
        j["kind"] = "sweep";
        j["points"] = pts.size();
        j["omega0_window_base"] = win.to_line();
        j["wall_time_s"] = wall;
        j["outputs"] = {contrast_path, summary_path};
        nlohmann::json jax = nlohmann::json::object();
        for (const auto& [name, ax] : cfg.axes)
            jax[name] = {{"start", ax.start},
                         {"stop", ax.stop},
                         {"count", ax.count},
                         {"scale", ax.log_scale ? "log" : "lin"}};
        j["axes"] = jax;
        std::ofstream mf(manifest_path);
        if (!mf) throw std::runtime_error("cannot write " + manifest_path);
        mf << j.dump(2) << "\n";

        std::cout << "wall: " << wall << " s\n";
        for (const auto& o : {contrast_path, summary_path, manifest_path})
            std::cout << "wrote " << o << "\n";
        return 0;
    });
}

int cli_main(const std::vector<std::string>& args) {
    CLI::App app{"one-loop Stern-Gerlach interferometry of a rotating nanocylinder"};
    app.require_subcommand(1);

    struct sub_opts {
        std::string config, preset, out = "out";
        bool strict = false, fixed = false, dense = false;
    };
    sub_opts ro, so;
    const auto wire = [](CLI::App* sc, sub_opts& o) {
        sc->add_option("config", o.config, "flat key=value config file");
        sc->add_option("--preset", o.preset, "named parameter preset");
        sc->add_option("--out", o.out, "output directory")->capture_default_str();
        sc->add_flag("--strict-bnv", o.strict,
                     "use the defect-site field in the libration torques");
        sc->add_flag("--fixed-step", o.fixed, "fixed-step integration (50 steps per fast period)");
        sc->add_flag("--dense-grid", o.dense, "1e6-sample analysis grid (CSV stays decimated)");
    };
    CLI::App* run = app.add_subcommand("run", "integrate one closed-loop pair");
    CLI::App* sweep = app.add_subcommand("sweep", "evaluate a parameter grid");
    wire(run, ro);
    wire(sweep, so);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (run->parsed())
        return run_scenario(ro.config, ro.preset, ro.out, ro.strict, ro.fixed, ro.dense);
    return run_sweep(so.config, so.preset, so.out, so.strict, so.fixed, so.dense);
}

} // namespace sgr::io
