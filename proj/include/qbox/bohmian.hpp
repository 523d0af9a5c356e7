#pragma once

#include "qbox/observables.hpp"
#include "qbox/parallel.hpp"
#include "qbox/scenario.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace qbox {

enum class TrajectoryStatus { completed, stopped_at_node, left_domain };

const char* to_string(TrajectoryStatus s);

struct TrajectorySample {
    double t = 0.0;  // ms
    double x = 0.0;  // um
    double v = 0.0;  // um/ms, guidance velocity evaluated at (x, t)
};

struct Trajectory {
    double x0 = 0.0;
    TrajectoryStatus status = TrajectoryStatus::completed;
    std::vector<TrajectorySample> samples;  // one per requested time, truncated on early stop
};

struct IntegratorOptions {
    double tol = 1e-9;       // per-step position tolerance, um
    double min_step = 1e-9;  // ms; controller failure below this stops the trajectory
    double max_step = 0.0;   // ms; 0 means uncapped
    double node_eps = k_node_eps;
    double x_limit = 1e4;    // um; |x| beyond this ends the trajectory as left_domain
    bool fixed_step = false; // integrate with constant step max_step (convergence studies)
};

// Integrates dx/dt = v(x, t) with classic RK4 under step-doubling error
// control, from sample_times.front() to sample_times.back(), recording a
// sample at every requested time (cubic Hermite dense output between
// accepted steps, velocity re-evaluated at the interpolated point).
Trajectory integrate_trajectory(const Scenario& sc, double x0,
                                std::span<const double> sample_times,
                                const IntegratorOptions& opt = {});

// Draws initial positions from |psi_0|^2 by inverse-CDF sampling. The
// uniform stream is derived from mt19937_64 raw words, so results are
// reproducible across platforms for a given seed.
std::vector<double> born_initial_positions(const InitialState& st, const BoxGeometry& box,
                                           int count, std::uint64_t seed);

// Deterministic midpoint quantiles of |psi_0|^2: u_i = (i + 0.5) / count.
std::vector<double> quantile_initial_positions(const InitialState& st, const BoxGeometry& box,
                                               int count);

struct Ensemble {
    std::vector<Trajectory> trajectories;
};

Ensemble integrate_ensemble(const Scenario& sc, std::span<const double> starts,
                            std::span<const double> sample_times,
                            const IntegratorOptions& opt = {}, Exec ex = Exec::parallel);

// Earliest sampled time at which the ensemble velocities have split into two
// opposite-sign groups, each holding at least 25% of the ensemble and each
// concentrated around the released-eigenstate speed: at least 80% of the
// group's speeds within v_n/4 of a common value whose in-window mean exceeds
// v_n/2. v_n = hbar k_n / m is passed by the caller. nullopt if never.
std::optional<double> bifurcation_time(const Ensemble& ens, double v_n);

}  // namespace qbox
