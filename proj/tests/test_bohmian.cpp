#include "doctest.h"

#include "qbox/bohmian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace qbox;

namespace {

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
    v.back() = b;
    return v;
}

// A free-Gaussian trajectory through (x0, t0) scales its offset from the
// packet center with the spreading width w(t) = sqrt(1 + (hbar t / 2 m s0^2)^2):
// x(t) = x0c + (x0 - x0c) w(t) / w(t0).
double free_gaussian_path(const Scenario& sc, double x0c, double s0, double x0, double t0,
                          double t) {
    auto width = [&](double tt) {
        const double r = sc.constants.hbar * tt / (2.0 * sc.constants.mass * s0 * s0);
        return std::sqrt(1.0 + r * r);
    };
    return x0c + (x0 - x0c) * width(t) / width(t0);
}

}  // namespace

TEST_CASE("fixed-step integration shows fourth-order convergence") {
    Scenario sc;
    sc.state = FreeGaussian{0.5, 0.2};
    const double x0 = 0.3;
    const std::vector<double> times{0.001, 0.201};

    auto endpoint_err = [&](double h) {
        IntegratorOptions opt;
        opt.fixed_step = true;
        opt.max_step = h;
        const auto tr = integrate_trajectory(sc, x0, times, opt);
        REQUIRE(tr.status == TrajectoryStatus::completed);
        REQUIRE(tr.samples.size() == 2);
        return std::abs(tr.samples.back().x - free_gaussian_path(sc, 0.5, 0.2, x0, 0.001, 0.201));
    };

    const double e1 = endpoint_err(0.01);
    const double e2 = endpoint_err(0.005);
    const double e3 = endpoint_err(0.0025);
    CAPTURE(e1);
    CAPTURE(e2);
    CAPTURE(e3);
    CHECK(e1 / e2 > 10.0);
    CHECK(e1 / e2 < 30.0);
    CHECK(e2 / e3 > 10.0);
    CHECK(e2 / e3 < 30.0);
}

TEST_CASE("adaptive integration hits the closed-form free-gaussian path") {
    Scenario sc;
    sc.state = FreeGaussian{0.5, 0.2};
    const auto times = linspace(0.001, 0.101, 11);
    IntegratorOptions opt;
    opt.tol = 1e-10;  // global drift accumulates above the per-step tolerance
    for (double x0 : {0.15, 0.42, 0.77}) {
        CAPTURE(x0);
        const auto tr = integrate_trajectory(sc, x0, times, opt);
        REQUIRE(tr.status == TrajectoryStatus::completed);
        REQUIRE(tr.samples.size() == times.size());
        for (const auto& s : tr.samples) {
            CHECK(std::abs(s.x - free_gaussian_path(sc, 0.5, 0.2, x0, 0.001, s.t)) < 1e-7);
        }
    }
}

TEST_CASE("dense output does not depend on the sample grid") {
    Scenario sc;
    sc.state = Eigenstate{7};
    const auto fine = linspace(1e-6, 0.03, 61);
    std::vector<double> coarse;  // every tenth fine time, bitwise equal
    for (std::size_t i = 0; i < fine.size(); i += 10) coarse.push_back(fine[i]);
    const auto tr_c = integrate_trajectory(sc, 0.31, coarse);
    const auto tr_f = integrate_trajectory(sc, 0.31, fine);
    REQUIRE(tr_c.status == TrajectoryStatus::completed);
    REQUIRE(tr_f.status == TrajectoryStatus::completed);
    for (std::size_t i = 0; i < coarse.size(); ++i) {
        const auto& sc_i = tr_c.samples[i];
        const auto& sf_i = tr_f.samples[10 * i];
        REQUIRE(sc_i.t == sf_i.t);
        CHECK(sc_i.x == sf_i.x);  // same accepted steps, same interpolant
        CHECK(sc_i.v == sf_i.v);
    }
}

TEST_CASE("trajectory stops at a node") {
    Scenario sc;
    sc.state = Eigenstate{2};
    // The box center is a persistent node of n = 2; starting there is hopeless.
    const auto tr = integrate_trajectory(sc, 0.5, linspace(1e-6, 0.01, 5));
    CHECK(tr.status == TrajectoryStatus::stopped_at_node);
    CHECK(tr.samples.empty());
}

TEST_CASE("trajectory reports leaving the domain") {
    Scenario sc;
    sc.state = Eigenstate{1};
    IntegratorOptions opt;
    opt.x_limit = 1.5;
    const auto tr = integrate_trajectory(sc, 0.9, linspace(1e-6, 0.6, 61), opt);
    CHECK(tr.status == TrajectoryStatus::left_domain);
    CHECK(tr.samples.size() < 61);
    CHECK(tr.samples.size() > 1);
}

TEST_CASE("born sampling is deterministic and distributed correctly") {
    const BoxGeometry box;
    const auto a = born_initial_positions(Eigenstate{3}, box, 400, 20240817u);
    const auto b = born_initial_positions(Eigenstate{3}, box, 400, 20240817u);
    CHECK(a == b);
    const auto c = born_initial_positions(Eigenstate{3}, box, 400, 7u);
    CHECK(a != c);

    // Kolmogorov-Smirnov distance against the exact CDF.
    auto ks = [&box](const InitialState& st, std::vector<double> xs) {
        std::sort(xs.begin(), xs.end());
        const double n = static_cast<double>(xs.size());
        auto cdf = [&](double x) {
            if (const auto* e = std::get_if<Eigenstate>(&st)) {
                const double k = wavenumber(e->n, box);
                return (x - std::sin(2.0 * k * x) / (2.0 * k)) / box.length;
            }
            const auto& g = std::get<TruncatedGaussian>(st);
            auto erfc_part = [&](double xx) {
                return 0.5 * (1.0 + std::erf((xx - g.x0) / (g.sigma0 * std::sqrt(2.0))));
            };
            return (erfc_part(x) - erfc_part(0.0)) / (erfc_part(box.length) - erfc_part(0.0));
        };
        double d = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double F = cdf(xs[i]);
            d = std::max(d, std::abs(F - static_cast<double>(i) / n));
            d = std::max(d, std::abs(F - static_cast<double>(i + 1) / n));
        }
        return d;
    };
    const auto e_draws = born_initial_positions(Eigenstate{3}, box, 1000, 20240817u);
    CHECK(ks(Eigenstate{3}, e_draws) < 0.05);
    const auto g_draws = born_initial_positions(TruncatedGaussian{0.5, 0.25}, box, 1000, 20240817u);
    CHECK(ks(TruncatedGaussian{0.5, 0.25}, g_draws) < 0.05);
}

TEST_CASE("quantile starts are sorted, interior, and symmetric") {
    const BoxGeometry box;
    const auto xs = quantile_initial_positions(Eigenstate{7}, box, 20);
    REQUIRE(xs.size() == 20);
    CHECK(std::is_sorted(xs.begin(), xs.end()));
    CHECK(xs.front() > 0.0);
    CHECK(xs.back() < 1.0);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        CHECK(std::abs(xs[i] + xs[xs.size() - 1 - i] - box.length) < 1e-9);
    }
}

TEST_CASE("ensemble integration is identical in serial and parallel") {
    Scenario sc;
    sc.state = Eigenstate{7};
    const auto starts = quantile_initial_positions(sc.state, sc.box, 16);
    const auto times = linspace(1e-6, 0.02, 21);
    const auto ser = integrate_ensemble(sc, starts, times, {}, Exec::serial);
    const auto par = integrate_ensemble(sc, starts, times, {}, Exec::parallel);
    REQUIRE(ser.trajectories.size() == par.trajectories.size());
    for (std::size_t i = 0; i < ser.trajectories.size(); ++i) {
        const auto& a = ser.trajectories[i];
        const auto& b = par.trajectories[i];
        REQUIRE(a.samples.size() == b.samples.size());
        CHECK(a.status == b.status);
        for (std::size_t s = 0; s < a.samples.size(); ++s) {
            CHECK(a.samples[s].x == b.samples[s].x);  // bitwise
            CHECK(a.samples[s].v == b.samples[s].v);
        }
    }
}

TEST_CASE("bifurcation detector fires on split ensembles only") {
    const double vn = 2.0;
    auto make = [](std::vector<std::vector<double>> vel_rows) {
        // vel_rows[traj][time]
        Ensemble e;
        for (const auto& row : vel_rows) {
            Trajectory tr;
            tr.status = TrajectoryStatus::completed;
            for (std::size_t s = 0; s < row.size(); ++s)
                tr.samples.push_back({0.1 * static_cast<double>(s + 1), 0.0, row[s]});
            e.trajectories.push_back(tr);
        }
        return e;
    };

    // Perfect split at the second sample: half near +vn, half near -vn.
    Ensemble split = make({{0.1, 1.9}, {0.2, 2.1}, {-0.1, -2.0}, {-0.2, -1.95}});
    const auto t = bifurcation_time(split, vn);
    REQUIRE(t.has_value());
    CHECK(*t == doctest::Approx(0.2));

    // Velocities spread far beyond the coherence window: no lock.
    Ensemble diffuse = make({{3.9}, {0.2}, {-0.3}, {-4.1}});
    CHECK_FALSE(bifurcation_time(diffuse, vn).has_value());

    // One-sided motion never splits.
    Ensemble onesided = make({{1.9}, {2.0}, {2.1}, {1.95}});
    CHECK_FALSE(bifurcation_time(onesided, vn).has_value());

    // Split present but slow (group mean below vn/2): no lock.
    Ensemble slow = make({{0.3}, {0.35}, {-0.3}, {-0.32}});
    CHECK_FALSE(bifurcation_time(slow, vn).has_value());
}

TEST_CASE("trajectory input validation") {
    Scenario sc;
    CHECK_THROWS_AS(integrate_trajectory(sc, 0.5, std::vector<double>{}), std::invalid_argument);
    CHECK_THROWS_AS(integrate_trajectory(sc, 0.5, std::vector<double>{0.2, 0.1}),
                    std::invalid_argument);
    IntegratorOptions opt;
    opt.fixed_step = true;  // missing max_step
    CHECK_THROWS_AS(integrate_trajectory(sc, 0.5, std::vector<double>{0.1, 0.2}, opt),
                    std::invalid_argument);
    CHECK_THROWS_AS(born_initial_positions(Eigenstate{1}, sc.box, 0, 1u), std::invalid_argument);
}
