#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "sgrotor/cli.hpp"
#include "sgrotor/config.hpp"
#include "sgrotor/csvio.hpp"
#include "sgrotor/errors.hpp"
#include "sgrotor/sweep.hpp"
#include "test_support.hpp"

using namespace sgr;
using doctest::Approx;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string l;
    while (std::getline(in, l)) out.push_back(l);
    return out;
}

fs::path tmpdir() {
    auto d = fs::temp_directory_path() / "sgrotor_test";
    fs::create_directories(d);
    return d;
}

const char* short_proto = "tau1 = 0.020\n"
                          "tau2 = 0.030\n"
                          "t_flip = 0.040\n"
                          "t_closed = 0.050\n";

} // namespace

TEST_SUITE("io_sweep") {

TEST_CASE("config parser basics") {
    const auto cfg = io::parse_config_text("# header comment\n"
                                           "mass = 2e-17   # trailing comment\n"
                                           "\n"
                                           "pair_mode = pm\n"
                                           "axis.omega0 = 1e4, 1e6, 3, log\n");
    CHECK(cfg.kv.at("mass") == "2e-17");
    CHECK(cfg.kv.at("pair_mode") == "pm");
    REQUIRE(cfg.axes.count("omega0") == 1);
    CHECK(cfg.axes.at("omega0").count == 3);
    CHECK(cfg.axes.at("omega0").log_scale);
    CHECK(cfg.get_num("mass") == 2e-17);
    CHECK(cfg.get_num_or("absent", 7.0) == 7.0);
    CHECK(cfg.get_or("pair_mode", "auto") == "pm");
}

TEST_CASE("config parser errors carry the offending key") {
    const auto key_of = [](const char* text) {
        try {
            io::parse_config_text(text);
        } catch (const config_error& e) {
            return e.key();
        }
        return std::string("<no throw>");
    };
    CHECK(key_of("just words\n") == "line 1");
    CHECK(key_of("\n= 3\n") == "line 2");
    CHECK(key_of("a = 1\na = 2\n") == "a");
    CHECK(key_of("axis.m = 1,2,3,lin\naxis.m = 1,2,3,lin\n") == "axis.m");
    CHECK(key_of("axis. = 1,2,3,lin\n") == "axis.");
    CHECK(key_of("axis.m = 1,2\n") == "axis.m");
    CHECK(key_of("axis.m = 1,2,3,quadratic\n") == "axis.m");
    // values stay raw strings at parse time; conversion errors name the key
    try {
        io::parse_config_text("mass = twelve\n").get_num("mass");
        FAIL("expected config_error");
    } catch (const config_error& e) {
        CHECK(e.key() == "mass");
    }
}

TEST_CASE("axis value generation") {
    io::axis_spec lin{1.0, 5.0, 5, false};
    const auto lv = lin.values();
    REQUIRE(lv.size() == 5);
    CHECK(lv.front() == 1.0); // endpoints exact by construction
    CHECK(lv.back() == 5.0);
    CHECK(lv[2] == Approx(3.0).epsilon(1e-15));

    io::axis_spec lg{1e-18, 1e-16, 3, true};
    const auto gv = lg.values();
    CHECK(gv[0] == 1e-18);
    CHECK(gv[1] == Approx(1e-17).epsilon(1e-12));
    CHECK(gv[2] == 1e-16);

    io::axis_spec one{4.2, 9.9, 1, false};
    CHECK(one.values() == std::vector<double>{4.2});

    CHECK_THROWS_AS((io::axis_spec{1.0, 2.0, 0, false}.values()), config_error);
    CHECK_THROWS_AS((io::axis_spec{0.0, 2.0, 3, true}.values()), config_error);
}

TEST_CASE("scenario params from config") {
    auto cfg = io::parse_config_text("mass = 2e-17\n"
                                     "rtol = 1e-8\n" // settings key, skipped here
                                     "dp_over_hbar = 1, 5\n");
    const auto p = io::params_from_config(cfg);
    CHECK(p.mass == 2e-17);
    CHECK(p.tau1 == 0.482); // untouched defaults

    const auto pr = io::params_from_config(io::parse_config_text("DL_ratio = 0.1\n"));
    CHECK(pr.DL_ratio == 0.1);
    CHECK(pr.L_height == 0.0); // ratio takes over the geometry definition

    try {
        io::params_from_config(io::parse_config_text("bogus = 1\n"));
        FAIL("expected config_error");
    } catch (const config_error& e) {
        CHECK(e.key() == "bogus");
    }
}

TEST_CASE("run settings from config") {
    const auto rs0 = io::settings_from_config(io::parse_config_text(""));
    CHECK(rs0.dp_over_hbar == std::vector<double>{1.0, 10.0, 25.0});
    CHECK(rs0.opt.rtol == 1e-9);
    CHECK_FALSE(rs0.T_lib.has_value());

    const auto rs = io::settings_from_config(
        io::parse_config_text("dp_over_hbar = 1, 5, 25\n"
                              "rtol = 1e-8\natol = 1e-11\n"
                              "fixed_step = true\nstrict_bnv = true\nfreeze_beta = true\n"
                              "grid_samples = 200\npair_mode = zm\n"
                              "n_occ = 20\nT_lib = 1e-4\n"));
    CHECK(rs.dp_over_hbar == std::vector<double>{1.0, 5.0, 25.0});
    CHECK(rs.opt.rtol == 1e-8);
    CHECK(rs.opt.atol == 1e-11);
    CHECK(rs.opt.fixed_step);
    CHECK(rs.opt.strict_bnv);
    CHECK(rs.opt.freeze_beta);
    CHECK(rs.opt.grid_samples == 200);
    CHECK(rs.opt.pair_mode == 2);
    CHECK(rs.n_occ == 20.0);
    REQUIRE(rs.T_lib.has_value());
    CHECK(*rs.T_lib == 1e-4);

    CHECK_THROWS_AS(io::settings_from_config(io::parse_config_text("pair_mode = x\n")),
                    config_error);
    CHECK_THROWS_AS(io::settings_from_config(io::parse_config_text("grid_samples = 3\n")),
                    config_error);
    CHECK_THROWS_AS(io::settings_from_config(io::parse_config_text("grid_samples = 4.5\n")),
                    config_error);
    CHECK_THROWS_AS(io::settings_from_config(io::parse_config_text("n_occ = -1\n")),
                    config_error);
    CHECK_THROWS_AS(io::settings_from_config(io::parse_config_text("fixed_step = maybe\n")),
                    config_error);
}

TEST_CASE("presets parse and validate") {
    const auto names = io::preset_names();
    REQUIRE(names.size() == 6);
    for (const auto& n : names) {
        const auto cfg = io::preset_config(n);
        CHECK_NOTHROW(io::params_from_config(cfg));
        CHECK_NOTHROW(io::settings_from_config(cfg));
    }
    CHECK_THROWS_AS(io::preset_config("nope"), config_error);
}

TEST_CASE("preset contents") {
    {
        const auto p = io::params_from_config(io::preset_config("table1_m1e-17"));
        CHECK(p.mass == 1e-17);
        CHECK(p.omega0 == Approx(2.0 * pi * 1e4).epsilon(1e-15));
    }
    {
        const auto cfg = io::preset_config("fig5_mass_sweep");
        const auto mv = cfg.axes.at("mass").values();
        REQUIRE(mv.size() == 7);
        CHECK(mv.front() == 5e-18);
        CHECK(mv.back() == 1e-16);
        CHECK(io::settings_from_config(cfg).dp_over_hbar == std::vector<double>{1.0});
    }
    {
        const auto cfg = io::preset_config("fig6_contrast");
        const auto dv = cfg.axes.at("dp_over_hbar").values();
        REQUIRE(dv.size() == 25);
        CHECK(dv.front() == 1.0);
        CHECK(dv.back() == 25.0);
    }
    {
        const auto cfg = io::preset_config("appendixC_E_sweep");
        const auto p = io::params_from_config(cfg);
        const auto ev = cfg.axes.at("E_strain").values();
        REQUIRE(ev.size() == 21);
        CHECK(ev[0] == 0.0);
        CHECK(ev[1] == Approx(p.D_zfs / 60.0).epsilon(1e-9)); // grid hits D/60 exactly
        CHECK(ev[20] == Approx(p.D_zfs / 3.0).epsilon(1e-9));
        CHECK(io::settings_from_config(cfg).opt.freeze_beta);
        CHECK(p.omega0 == Approx(2.0 * pi * 1e10).epsilon(1e-12));
    }
    {
        const auto p = io::params_from_config(io::preset_config("appendixD_omega0_zero"));
        CHECK(p.omega0 == 0.0);
    }
    {
        const auto p = io::params_from_config(io::preset_config("appendixE_long_cylinder"));
        CHECK(p.DL_ratio == 0.1);
        CHECK(p.L_height == 0.0);
    }
}

TEST_CASE("axis expansion: canonical nesting and echo") {
    const auto base = sgrtest::short_params();
    io::run_settings rs;
    rs.dp_over_hbar = {1.0};
    std::map<std::string, io::axis_spec> axes;
    axes["E_strain"] = {0.0, 1e-25, 2, false};
    axes["mass"] = {1e-17, 2e-17, 2, false};
    const auto pts = sweep::expand_axes(base, rs, axes);
    REQUIRE(pts.size() == 4);
    // mass is the outer loop regardless of map order
    CHECK(pts[0].p.mass == 1e-17);
    CHECK(pts[0].p.E_strain == 0.0);
    CHECK(pts[1].p.mass == 1e-17);
    CHECK(pts[1].p.E_strain == 1e-25);
    CHECK(pts[2].p.mass == 2e-17);
    CHECK(pts[3].axis_echo.at("mass") == 2e-17);
    CHECK(pts[3].axis_echo.at("E_strain") == 1e-25);
    CHECK(pts[0].axis_echo.count("omega0") == 0); // only active axes echo
    CHECK(pts[0].dp_over_hbar == 1.0);

    // without a dp axis the settings list multiplies the grid
    io::run_settings rs3;
    std::map<std::string, io::axis_spec> none;
    CHECK(sweep::expand_axes(base, rs3, none).size() == 3);

    std::map<std::string, io::axis_spec> bad;
    bad["bogus"] = {0.0, 1.0, 2, false};
    try {
        sweep::expand_axes(base, rs3, bad);
        FAIL("expected config_error");
    } catch (const config_error& e) {
        CHECK(e.key() == "axis.bogus");
    }
}

TEST_CASE("temperature axis sets the occupation") {
    const auto base = sgrtest::short_params();
    io::run_settings rs;
    rs.dp_over_hbar = {1.0};
    std::map<std::string, io::axis_spec> axes;
    axes["T_lib"] = {1e-4, 1e-4, 1, false};
    const auto pts = sweep::expand_axes(base, rs, axes);
    REQUIRE(pts.size() == 1);
    const double n_exp = contrast::occupation_from_temperature(1e-4, base.omega0,
                                                               base.consts);
    CHECK(pts[0].n_occ == Approx(n_exp).epsilon(1e-15));
    CHECK(pts[0].axis_echo.at("T_lib") == 1e-4);
}

TEST_CASE("point evaluation produces a finite row") {
    const auto base = sgrtest::short_params();
    io::run_settings rs;
    rs.dp_over_hbar = {1.0};
    const auto pts = sweep::expand_axes(base, rs, {});
    REQUIRE(pts.size() == 1);
    const auto r = sweep::evaluate_point(pts[0], sgrtest::short_options());
    CHECK(r.mass == base.mass);
    CHECK(r.DL_ratio == Approx(1.90730891).epsilon(1e-8)); // 2R/L for the default body
    CHECK(std::isfinite(r.C_zero));
    CHECK(r.C_zero > 0.0);
    CHECK(r.C_zero <= 1.0);
    CHECK(std::isfinite(r.delta_alpha));
    CHECK(r.max_delta_z > 0.0);
    CHECK(std::isnan(r.T_lib)); // no temperature axis
}

TEST_CASE("parallel sweep matches the serial reference bitwise") {
    const auto base = sgrtest::short_params();
    io::run_settings rs; // dp = {1, 10, 25} -> three points
    const auto pts = sweep::expand_axes(base, rs, {});
    REQUIRE(pts.size() == 3);
    const auto opt = sgrtest::short_options();
    const auto sr = sweep::run_serial(pts, opt);
    const auto pr = sweep::run_parallel(pts, opt);
    REQUIRE(sr.size() == 3);
    REQUIRE(pr.size() == 3);
    CHECK(sweep::rows_identical(sr, pr));
    auto perturbed = pr;
    perturbed[1].C_zero = std::nextafter(perturbed[1].C_zero, 1.0);
    CHECK_FALSE(sweep::rows_identical(sr, perturbed));
    CHECK_FALSE(sweep::rows_identical(sr, std::vector<sweep::sweep_row>{}));
}

TEST_CASE("worker errors surface from the parallel loop") {
    auto base = sgrtest::short_params();
    base.omega0 = 1e-2; // guaranteed chart exit
    io::run_settings rs;
    rs.dp_over_hbar = {1.0};
    const auto pts = sweep::expand_axes(base, rs, {});
    CHECK_THROWS_AS(sweep::run_parallel(pts, sgrtest::short_options()),
                    integration_error);
}

TEST_CASE("trajectory CSV round-trips at full precision") {
    dyn::arm_trajectory arm;
    for (int i = 0; i < 3; ++i) {
        dyn::rotor_state st{};
        st.t = 0.1 * i + 1.0 / 3.0;
        st.z = 1e-5 * std::sqrt(2.0) * (i + 1);
        st.z_dot = -7.123456789012345e-4 * i;
        st.beta = 0.01 + 1e-9 * i;
        st.beta_dot = pi * i;
        st.alpha = 0.25 * i;
        st.gamma = 6.2e4 * i;
        st.s_label = i == 2 ? -1 : +1;
        st.stage = i == 2 ? field::stage_id::recombine : field::stage_id::split;
        arm.samples.push_back(st);
    }
    const auto path = (tmpdir() / "traj.csv").string();
    io::write_trajectory_csv(path, arm);
    const auto ls = lines_of(slurp(path));
    REQUIRE(ls.size() == 4);
    CHECK(ls[0] == io::trajectory_header);
    // every numeric field parses back to the identical double
    for (std::size_t r = 0; r < 3; ++r) {
        std::istringstream row(ls[r + 1]);
        std::string tok;
        std::vector<std::string> toks;
        while (std::getline(row, tok, ',')) toks.push_back(tok);
        REQUIRE(toks.size() == 9);
        const auto& st = arm.samples[r];
        CHECK(std::strtod(toks[0].c_str(), nullptr) == st.t);
        CHECK(std::strtod(toks[1].c_str(), nullptr) == st.z);
        CHECK(std::strtod(toks[2].c_str(), nullptr) == st.z_dot);
        CHECK(std::strtod(toks[3].c_str(), nullptr) == st.beta);
        CHECK(std::strtod(toks[4].c_str(), nullptr) == st.beta_dot);
        CHECK(std::strtod(toks[5].c_str(), nullptr) == st.alpha);
        CHECK(std::strtod(toks[6].c_str(), nullptr) == st.gamma);
        CHECK(toks[7] == std::to_string(st.s_label));
        CHECK(toks[8] == field::stage_name(st.stage));
    }
}

TEST_CASE("contrast and summary CSV writers") {
    sweep::sweep_row r{};
    r.mass = 1e-17;
    r.omega0 = 2.0 * pi * 1e4;
    r.DL_ratio = 1.9073;
    r.dp_over_hbar = 1.0;
    r.n_occ = 0.0;
    r.T_lib = std::numeric_limits<double>::quiet_NaN();
    r.C_zero = 0.9261;
    r.C_thermal = 0.9261;
    r.delta_alpha = 0.2489;
    r.delta_gamma = -0.2489;
    r.delta_beta = -4.9e-6;
    r.A_beta0 = 7.06e-6;
    r.kappa0 = 0.0215;
    r.E_strain = 0.0;
    r.max_delta_z = 2.1e-5;
    r.t_peak = 0.657;
    r.closure_z_pct = 0.85;
    r.closure_v_pct = 1.8;
    r.beta_max_plus = 0.0101;
    r.beta_max_minus = 0.0101;

    const auto cpath = (tmpdir() / "contrast.csv").string();
    const auto spath = (tmpdir() / "summary.csv").string();
    io::write_contrast_csv(cpath, {r});
    io::write_summary_csv(spath, {r});
    const auto cl = lines_of(slurp(cpath));
    REQUIRE(cl.size() == 2);
    CHECK(cl[0] == io::contrast_header);
    CHECK(cl[1].find("nan") != std::string::npos); // T_lib column
    const auto sl = lines_of(slurp(spath));
    REQUIRE(sl.size() == 2);
    CHECK(sl[0] == io::summary_header);
    CHECK(std::strtod(sl[1].c_str(), nullptr) == r.mass);
}

TEST_CASE("manifest serializes run provenance") {
    io::manifest_inputs mi;
    mi.p = sgrtest::short_params();
    mi.opt = sgrtest::short_options();
    mi.omega0_window_line = "PASS r1=25.7";
    mi.p_alpha_drift = 1.3e-16;
    mi.p_gamma_drift = 0.0;
    mi.stats = {};
    mi.stats.closure_z_pct = 0.85;
    mi.closure_pass = true;
    mi.wall_time_s = 2.0;
    mi.outputs = {"trajectory_plus.csv"};
    mi.pair_kind = "+1/-1";
    mi.notes = {"test note"};
    const auto path = (tmpdir() / "manifest.json").string();
    io::write_manifest(path, mi);
    const auto j = nlohmann::json::parse(slurp(path));
    CHECK(j["params"]["mass"].get<double>() == mi.p.mass);
    CHECK(j["params"]["t_closed"].get<double>() == 0.050);
    CHECK(j["options"]["grid_samples"].get<std::size_t>() == 500);
    CHECK(j["scenario_hash"].get<std::string>().size() == 16);
    CHECK(j["omega0_window"].get<std::string>() == mi.omega0_window_line);
    CHECK(j["pair"]["closure_pass"].get<bool>());
    CHECK(j["pair"]["closure_z_pct"].get<double>() == 0.85);
    CHECK(j["outputs"][0].get<std::string>() == "trajectory_plus.csv");
    CHECK(j["notes"][0].get<std::string>() == "test note");
}

TEST_CASE("scenario hash tracks inputs") {
    const auto p = params::scenario_params::table1();
    dyn::integrate_options o;
    const auto h0 = io::scenario_hash(p, o);
    CHECK(h0 == io::scenario_hash(p, o)); // deterministic
    auto p2 = p;
    p2.mass = 2e-17;
    CHECK(io::scenario_hash(p2, o) != h0);
    auto o2 = o;
    o2.strict_bnv = true;
    CHECK(io::scenario_hash(p, o2) != h0);
    auto o3 = o;
    o3.grid_samples = 777;
    CHECK(io::scenario_hash(p, o3) != h0);
}

TEST_CASE("command line, in process") {
    const auto dir = tmpdir();

    CHECK(io::cli_main({}) == 2); // a subcommand is required
    CHECK(io::cli_main({"run", "--preset", "nope", "--out", (dir / "x").string()}) == 2);

    const auto badcfg = dir / "bad.cfg";
    std::ofstream(badcfg) << "bogus = 1\n";
    CHECK(io::cli_main({"run", badcfg.string(), "--out", (dir / "x").string()}) == 2);

    const auto chartcfg = dir / "chart.cfg";
    std::ofstream(chartcfg) << short_proto << "omega0 = 1e-2\ngrid_samples = 100\n"
                            << "dp_over_hbar = 1\n";
    CHECK(io::cli_main({"run", chartcfg.string(), "--out", (dir / "x").string()}) == 1);

    const auto okcfg = dir / "ok.cfg";
    std::ofstream(okcfg) << short_proto << "grid_samples = 100\ndp_over_hbar = 1\n";
    const auto okdir = dir / "okrun";
    REQUIRE(io::cli_main({"run", okcfg.string(), "--out", okdir.string()}) == 0);
    CHECK(fs::exists(okdir / "trajectory_plus.csv"));
    CHECK(fs::exists(okdir / "trajectory_minus.csv"));
    CHECK(fs::exists(okdir / "contrast.csv"));
    const auto j = nlohmann::json::parse(slurp(okdir / "manifest.json"));
    CHECK(j["pair"]["kind"].get<std::string>() == "+1/-1");
    CHECK(lines_of(slurp(okdir / "trajectory_plus.csv")).size() == 102);

    const auto swcfg = dir / "sweep.cfg";
    std::ofstream(swcfg) << short_proto << "grid_samples = 100\ndp_over_hbar = 1\n"
                         << "axis.mass = 1e-17, 2e-17, 2, lin\n";
    const auto swdir = dir / "swrun";
    REQUIRE(io::cli_main({"sweep", swcfg.string(), "--out", swdir.string()}) == 0);
    CHECK(lines_of(slurp(swdir / "contrast.csv")).size() == 3);
    CHECK(lines_of(slurp(swdir / "summary.csv")).size() == 3);
    CHECK(fs::exists(swdir / "manifest.json"));
}

} // TEST_SUITE
