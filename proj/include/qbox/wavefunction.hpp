#pragma once

#include "qbox/scenario.hpp"

#include <complex>

namespace qbox {

struct WaveSample {
    double x = 0.0;  // um
    double t = 0.0;  // ms
    std::complex<double> psi{};      // 1/sqrt(um)
    std::complex<double> dpsi_dx{};  // 1/(um sqrt(um))
};

// Scaled coordinate xi_n(x, t) = sqrt(m / (pi hbar t)) (v_n t - x) with
// v_n = hbar k_n / m; the natural argument of the Fresnel description of a
// released eigenstate. Requires t > 0.
double xi_n(int n, double x, double t, const Scenario& sc);

// State at t = 0 (the instant of release). Truncated states vanish outside
// the box; the free Gaussian ignores the box entirely.
std::complex<double> initial_wave(const InitialState& st, double x, const BoxGeometry& box);

// Closed-form wave released from box eigenstate n, evaluated anywhere on the
// line for t > 0. Also returns the spatial derivative.
WaveSample eigenstate_wave(int n, double x, double t, const Scenario& sc);

// Closed-form wave released from a truncated Gaussian.
WaveSample gaussian_wave(double x0, double sigma0, double x, double t, const Scenario& sc);

// Free-space spreading Gaussian (no box at any time).
WaveSample free_gaussian_wave(double x0, double sigma0, double x, double t, const Scenario& sc);

// Dispatch on sc.state.
WaveSample evaluate_wave(const Scenario& sc, double x, double t);

// Propagator-based reference evaluation: numerically integrates the free
// kernel against the initial state with adaptive Gauss-Kronrod quadrature.
// Independent of the closed forms above; used to validate them. Throws
// QuadratureError if the tolerance cannot be reached.
WaveSample oracle_wave(const InitialState& st, double x, double t, const Scenario& sc,
                       double abs_tol = 1e-10);

}  // namespace qbox
