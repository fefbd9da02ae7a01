#include "doctest.h"
#include "sgrotor/constants.hpp"
#include "sgrotor/errors.hpp"
#include "sgrotor/params.hpp"

using namespace sgr;
using doctest::Approx;

TEST_SUITE("params") {

TEST_CASE("physical constants") {
    physical_constants c;
    CHECK(c.hbar == Approx(1.05457182e-34).epsilon(1e-8));
    CHECK(c.kB == 1.380649e-23);
    CHECK_NOTHROW(validate(c));
    c.mu0 = -1.0;
    CHECK_THROWS_AS(validate(c), config_error);
}

TEST_CASE("table1 defaults") {
    const auto p = params::scenario_params::table1();
    CHECK(p.mass == 1e-17);
    CHECK(p.D_zfs == Approx(1.90168213e-24).epsilon(1e-8));
    CHECK(p.mu_spin == Approx(1.85529964e-23).epsilon(1e-8));
    CHECK(p.E_strain == 0.0);
    CHECK(p.beta0 == 0.01);
    CHECK(p.t_flip == Approx(0.8022));
    CHECK_NOTHROW(params::validate(p));
}

TEST_CASE("cylinder geometry from height") {
    const auto p = params::scenario_params::table1();
    const auto g = params::build_geometry(p);
    CHECK(g.radius == Approx(9.53654454e-8).epsilon(1e-8));
    CHECK(g.height == 1e-7);
    CHECK(g.I_perp == Approx(3.10697538e-32).epsilon(1e-8));
    CHECK(g.I_3 == Approx(4.54728409e-32).epsilon(1e-8));
    CHECK(g.inertia_ratio == Approx(1.46357262).epsilon(1e-8));
}

TEST_CASE("radius scales as sqrt(mass) at fixed height") {
    const auto p = params::scenario_params::table1();
    CHECK(params::radius_from_mass(5e-18, p.density, p.L_height) ==
          Approx(6.74335531e-8).epsilon(1e-8));
    CHECK(params::radius_from_mass(1e-16, p.density, p.L_height) ==
          Approx(3.01572018e-7).epsilon(1e-8));
}

TEST_CASE("geometry from aspect ratio") {
    auto p = params::scenario_params::table1();
    p.L_height = 0.0;
    p.DL_ratio = 0.1;
    const auto g = params::build_geometry(p);
    CHECK(g.radius == Approx(3.56930803e-8).epsilon(1e-8));
    CHECK(g.height == Approx(7.13861606e-7).epsilon(1e-8));
    CHECK(2.0 * g.radius / g.height == Approx(0.1).epsilon(1e-12));
    CHECK(g.I_perp == Approx(4.27850317e-31).epsilon(1e-8));
    CHECK(g.inertia_ratio == Approx(0.0148883375).epsilon(1e-8));
    // mass recovered from rho * pi R^2 L
    CHECK(p.density * pi * g.radius * g.radius * g.height ==
          Approx(p.mass).epsilon(1e-12));
}

TEST_CASE("shape classification") {
    using params::shape_class;
    auto p = params::scenario_params::table1();
    CHECK(params::classify_shape(params::build_geometry(p)) ==
          shape_class::normal); // D/L = 1.91
    p.L_height = 0.0;
    p.DL_ratio = 0.1;
    CHECK(params::classify_shape(params::build_geometry(p)) == shape_class::long_cylinder);
    p.DL_ratio = 6.0;
    CHECK(params::classify_shape(params::build_geometry(p)) == shape_class::disk);
    CHECK(params::shape_name(shape_class::long_cylinder) == std::string("long-cylinder"));
}

TEST_CASE("validation rejects bad inputs with the offending key") {
    auto p = params::scenario_params::table1();
    p.mass = -1.0;
    CHECK_THROWS_AS(params::validate(p), config_error);

    p = params::scenario_params::table1();
    p.E_strain = -1e-26;
    try {
        params::validate(p);
        FAIL("expected throw");
    } catch (const config_error& e) {
        CHECK(e.key() == "E_strain");
    }

    p = params::scenario_params::table1();
    p.tau2 = p.tau1 - 0.01; // breaks tau1 < tau2
    try {
        params::validate(p);
        FAIL("expected throw");
    } catch (const config_error& e) {
        CHECK(e.key() == "tau1");
    }

    p = params::scenario_params::table1();
    p.DL_ratio = 1.0; // both height and ratio set
    CHECK_THROWS_AS(params::validate(p), config_error);
    p.L_height = 0.0;
    CHECK_NOTHROW(params::validate(p));
    p.DL_ratio = 0.0; // neither set
    CHECK_THROWS_AS(params::validate(p), config_error);
}

TEST_CASE("E_strain upper bound is D/3") {
    auto p = params::scenario_params::table1();
    p.E_strain = p.D_zfs / 3.0;
    CHECK_NOTHROW(params::validate(p));
    p.E_strain = p.D_zfs / 2.9;
    CHECK_THROWS_AS(params::validate(p), config_error);
}

} // TEST_SUITE
