#include "doctest.h"

#include "qbox/observables.hpp"
#include "qbox/wavefunction.hpp"

#include <cmath>
#include <complex>

using namespace qbox;

TEST_CASE("plane wave density, current, and velocity") {
    PhysicalConstants c;
    const double k = 4.0;
    WaveSample w;
    w.psi = std::polar(0.7, k * 0.3);
    w.dpsi_dx = std::complex<double>{0.0, k} * w.psi;
    CHECK(density(w) == doctest::Approx(0.49).epsilon(1e-15));
    CHECK(current(w, c) == doctest::Approx(c.hbar / c.mass * k * 0.49).epsilon(1e-14));
    const auto v = velocity(w, c);
    REQUIRE(v.has_value());
    CHECK(*v == doctest::Approx(c.hbar / c.mass * k).epsilon(1e-14));
}

TEST_CASE("velocity is undefined at nodes") {
    PhysicalConstants c;
    WaveSample w;
    w.psi = {1e-8, 0.0};  // rho = 1e-16 < node floor
    w.dpsi_dx = {0.0, 1.0};
    CHECK_FALSE(velocity(w, c).has_value());
    const auto fp = field_point(w, c);
    CHECK_FALSE(fp.v.has_value());
    CHECK(fp.rho == doctest::Approx(1e-16));

    // A released even eigenstate keeps its node at the box center.
    Scenario sc;
    CHECK_FALSE(velocity(eigenstate_wave(2, 0.5, 0.02, sc), sc.constants).has_value());
}

TEST_CASE("current is small deep inside the box right after release") {
    // Immediately after release the interior current is only the edge-transient
    // ripple, a few 1e-4 of the natural scale 2*hbar*k/m; it grows thousands
    // of times larger once the packet actually spreads.
    Scenario sc;
    const double j_early = current(eigenstate_wave(1, 0.3, 1e-6, sc), sc.constants);
    const double j_later = current(eigenstate_wave(1, 1.2, 0.3, sc), sc.constants);
    const double scale = 2.0 * sc.constants.hbar * wavenumber(1, sc.box) / sc.constants.mass;
    CHECK(std::abs(j_early) < 1e-3 * scale);
    CHECK(std::abs(j_early) < 0.05 * std::abs(j_later));
}

TEST_CASE("current is antisymmetric about the box center") {
    Scenario sc;
    for (double d : {0.125, 0.25, 0.3125}) {
        CAPTURE(d);
        const double jp = current(eigenstate_wave(6, 0.5 + d, 0.03, sc), sc.constants);
        const double jm = current(eigenstate_wave(6, 0.5 - d, 0.03, sc), sc.constants);
        CHECK(std::abs(jp + jm) < 1e-10);
    }
}

TEST_CASE("density and current satisfy the continuity equation") {
    Scenario sc;
    const double dt = 1e-7;
    const double dx = 1e-5;
    auto residual = [&](double x, double t) {
        const double drho_dt =
            (density(evaluate_wave(sc, x, t + dt)) - density(evaluate_wave(sc, x, t - dt))) /
            (2.0 * dt);
        const double dj_dx =
            (current(evaluate_wave(sc, x + dx, t), sc.constants) -
             current(evaluate_wave(sc, x - dx, t), sc.constants)) / (2.0 * dx);
        return std::make_pair(drho_dt + dj_dx, std::abs(drho_dt) + std::abs(dj_dx));
    };

    sc.state = Eigenstate{6};
    for (double x : {0.31, 0.83, 1.4}) {
        for (double t : {0.01, 0.05}) {
            CAPTURE(x);
            CAPTURE(t);
            const auto [res, scale] = residual(x, t);
            CHECK(std::abs(res) < 2e-4 * std::max(scale, 1.0));
        }
    }
    sc.state = TruncatedGaussian{0.5, 0.25};
    for (double x : {0.42, 1.1}) {
        for (double t : {0.02, 0.08}) {
            CAPTURE(x);
            CAPTURE(t);
            const auto [res, scale] = residual(x, t);
            CHECK(std::abs(res) < 2e-4 * std::max(scale, 1.0));
        }
    }
}
