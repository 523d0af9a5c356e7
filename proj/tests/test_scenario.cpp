#include "doctest.h"

#include "qbox/config.hpp"
#include "qbox/scenario.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace qbox;

TEST_CASE("wavenumber and semiclassical crossing time") {
    Scenario sc;
    CHECK(wavenumber(1, sc.box) == doctest::Approx(3.14159265358979324).epsilon(1e-15));
    CHECK(wavenumber(7, sc.box) == doctest::Approx(7 * 3.14159265358979324).epsilon(1e-15));

    // t_n = m L^2 / (2 n pi hbar) with the default mass and box
    CHECK(semiclassical_time(1, sc) == doctest::Approx(0.21430500564).epsilon(1e-10));
    CHECK(semiclassical_time(7, sc) == doctest::Approx(0.0306150008058).epsilon(1e-10));
    CHECK(semiclassical_time(500, sc) == doctest::Approx(4.28610011281e-4).epsilon(1e-10));
    CHECK(semiclassical_time(1, sc) / semiclassical_time(7, sc) == doctest::Approx(7.0).epsilon(1e-12));

    CHECK_THROWS_AS(wavenumber(0, sc.box), std::invalid_argument);
}

TEST_CASE("grid points are uniform with exact endpoints") {
    GridSpec g{-1.0, 3.0, 401};
    const auto p = g.points();
    REQUIRE(p.size() == 401);
    CHECK(p.front() == -1.0);
    CHECK(p.back() == 3.0);
    CHECK(p[200] == doctest::Approx(1.0).epsilon(1e-14));

    GridSpec single{0.5, 0.5, 1};
    CHECK(single.points() == std::vector<double>{0.5});
}

TEST_CASE("scenario validation") {
    Scenario sc;
    CHECK(validate(sc).ok());

    SUBCASE("bad eigenstate index") {
        sc.state = Eigenstate{0};
        CHECK_FALSE(validate(sc).ok());
    }
    SUBCASE("gaussian outside the box") {
        sc.state = TruncatedGaussian{1.2, 0.25};
        CHECK_FALSE(validate(sc).ok());
    }
    SUBCASE("non-positive width") {
        sc.state = TruncatedGaussian{0.5, 0.0};
        CHECK_FALSE(validate(sc).ok());
    }
    SUBCASE("time ordering") {
        sc.t_max = sc.t_start;
        CHECK_FALSE(validate(sc).ok());
    }
    SUBCASE("detector inside the box only warns") {
        sc.detector_x = 0.5;
        const auto r = validate(sc);
        CHECK(r.ok());
        CHECK_FALSE(r.warnings.empty());
    }
    SUBCASE("free gaussian center may be anywhere") {
        sc.state = FreeGaussian{-3.0, 0.5};
        CHECK(validate(sc).ok());
    }
}

TEST_CASE("state spec parsing round-trips") {
    const auto e = parse_state_spec("n:7");
    CHECK(std::get<Eigenstate>(e).n == 7);
    CHECK(describe_state(e) == "n:7");

    const auto g = parse_state_spec("gaussian:0.5,0.25");
    CHECK(std::get<TruncatedGaussian>(g).x0 == 0.5);
    CHECK(std::get<TruncatedGaussian>(g).sigma0 == 0.25);
    CHECK(describe_state(g) == "gaussian:0.5,0.25");

    const auto f = parse_state_spec("free-gaussian:0.3,0.1");
    CHECK(std::get<FreeGaussian>(f).x0 == 0.3);
    CHECK(describe_state(f) == "free-gaussian:0.3,0.1");

    CHECK_THROWS_AS(parse_state_spec("n:"), std::invalid_argument);
    CHECK_THROWS_AS(parse_state_spec("n:0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_state_spec("plane:1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_state_spec("gaussian:0.5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_state_spec("gaussian:a,b"), std::invalid_argument);
}

TEST_CASE("grid spec parsing") {
    const auto g = parse_grid_spec("-1:3:401");
    CHECK(g.min == -1.0);
    CHECK(g.max == 3.0);
    CHECK(g.count == 401);
    CHECK_THROWS_AS(parse_grid_spec("1:2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_grid_spec("1:2:zero"), std::invalid_argument);
    CHECK_THROWS_AS(parse_grid_spec("1:2:0"), std::invalid_argument);
}

TEST_CASE("scenario config files") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "qbox_scenario_test";
    fs::create_directories(dir);
    const fs::path cfg = dir / "case.cfg";

    {
        std::ofstream out(cfg);
        out << "# release scenario\n"
            << "state = n:7\n"
            << "detector_x_um = 2.0   # detector beyond the box\n"
            << "t_max_ms = 0.3\n"
            << "grid_t = 1e-6:0.3:301\n"
            << "\n"
            << "box_length_um = 1.0\n";
    }
    const Scenario sc = load_scenario_file(cfg.string());
    CHECK(std::get<Eigenstate>(sc.state).n == 7);
    CHECK(sc.detector_x == 2.0);
    CHECK(sc.t_max == 0.3);
    CHECK(sc.t_grid.count == 301);
    CHECK(sc.box.length == 1.0);
    CHECK(sc.t_start == 1e-6);  // untouched default

    {
        std::ofstream out(cfg);
        out << "detector_um = 2.0\n";
    }
    CHECK_THROWS_AS(load_scenario_file(cfg.string()), std::invalid_argument);

    {
        std::ofstream out(cfg);
        out << "t_max_ms = 0.3\nt_max_ms = 0.4\n";
    }
    CHECK_THROWS_AS(load_scenario_file(cfg.string()), std::invalid_argument);

    CHECK_THROWS_AS(load_scenario_file((dir / "missing.cfg").string()), std::runtime_error);
    fs::remove_all(dir);
}
