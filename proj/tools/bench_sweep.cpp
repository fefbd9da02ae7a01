// serial vs OpenMP sweep-executor benchmark on a reduced mass grid. The two
// paths must produce bitwise-identical rows; wall times and speedup go to
// stdout.

#include <chrono>
#include <cstdio>
#include <cstring>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sgrotor/sweep.hpp"

using clk = std::chrono::steady_clock;

int main(int argc, char** argv) {
    int npts = 6;
    if (argc > 1) npts = std::atoi(argv[1]);
    if (npts < 2) npts = 2;

    sgr::io::config_map cfg = sgr::io::preset_config("fig5_mass_sweep");
    cfg.axes.at("mass").count = npts;
    const auto base = sgr::io::params_from_config(cfg);
    sgr::io::run_settings rs = sgr::io::settings_from_config(cfg);
    rs.dp_over_hbar = {1.0};
    rs.opt.rtol = 1e-7; // benchmark fidelity, not production tolerance
    rs.opt.atol = 1e-10;
    rs.opt.grid_samples = 2000;
    const auto pts = sgr::sweep::expand_axes(base, rs, cfg.axes);
    std::printf("points: %zu (grid_samples=%zu rtol=%g)\n", pts.size(),
                rs.opt.grid_samples, rs.opt.rtol);

    const auto t0 = clk::now();
    const auto serial = sgr::sweep::run_serial(pts, rs.opt);
    const double ts = std::chrono::duration<double>(clk::now() - t0).count();

#ifdef _OPENMP
    const int nt = omp_get_max_threads();
#else
    const int nt = 1;
#endif
    const auto t1 = clk::now();
    const auto parallel = sgr::sweep::run_parallel(pts, rs.opt);
    const double tp = std::chrono::duration<double>(clk::now() - t1).count();

    std::printf("serial:   %.3f s\n", ts);
    std::printf("parallel: %.3f s  (%d threads)\n", tp, nt);
    std::printf("speedup:  %.2fx\n", tp > 0 ? ts / tp : 0.0);
    const bool same = sgr::sweep::rows_identical(serial, parallel);
    std::printf("rows_identical: %s\n", same ? "yes" : "NO");
    return same ? 0 : 1;
}
