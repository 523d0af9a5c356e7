#include "qbox/wavefunction.hpp"

#include "qbox/quadrature.hpp"
#include "qbox/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qbox {

namespace {

constexpr std::complex<double> k_i{0.0, 1.0};
constexpr double k_pi = std::numbers::pi;

void require_time(double t) {
    if (!(t > 0.0)) throw std::domain_error("wave evaluation requires t > 0");
}

double gaussian_norm_prefactor(double sigma0) {
    return std::pow(2.0 * k_pi * sigma0 * sigma0, -0.25);
}

}  // namespace

double xi_n(int n, double x, double t, const Scenario& sc) {
    require_time(t);
    const double hb = sc.constants.hbar;
    const double m = sc.constants.mass;
    const double v = hb * wavenumber(n, sc.box) / m;
    return std::sqrt(m / (k_pi * hb * t)) * (v * t - x);
}

std::complex<double> initial_wave(const InitialState& st, double x, const BoxGeometry& box) {
    const double L = box.length;
    if (const auto* e = std::get_if<Eigenstate>(&st)) {
        if (x <= 0.0 || x >= L) return 0.0;
        return std::sqrt(2.0 / L) * std::sin(wavenumber(e->n, box) * x);
    }
    if (const auto* g = std::get_if<TruncatedGaussian>(&st)) {
        if (x <= 0.0 || x >= L) return 0.0;
        const double d = x - g->x0;
        return gaussian_norm_prefactor(g->sigma0) *
               std::exp(-d * d / (4.0 * g->sigma0 * g->sigma0));
    }
    const auto& f = std::get<FreeGaussian>(st);
    const double d = x - f.x0;
    return gaussian_norm_prefactor(f.sigma0) * std::exp(-d * d / (4.0 * f.sigma0 * f.sigma0));
}

WaveSample eigenstate_wave(int n, double x, double t, const Scenario& sc) {
    require_time(t);
    const double hb = sc.constants.hbar;
    const double m = sc.constants.mass;
    const double L = sc.box.length;
    const double k = wavenumber(n, sc.box);
    const double v = hb * k / m;
    const double s = std::sqrt(m / (k_pi * hb * t));
    const double vt = v * t;

    // The released eigenstate is a superposition of two counter-propagating
    // plane waves, each chopped by the box walls; after release each edge
    // produces a Fresnel transient.
    const double xi1 = s * (vt - (x - L));
    const double xi2 = s * (vt - x);
    const double xi3 = s * (vt - (L - x));
    const double xi4 = s * (vt + x);

    const std::complex<double> brp = fresnel_f(xi1) - fresnel_f(xi2);
    const std::complex<double> brm = fresnel_f(xi3) - fresnel_f(xi4);

    const double et = 0.5 * hb * k * k / m * t;  // E_n t / hbar
    const std::complex<double> ep = std::polar(1.0, k * x - et);
    const std::complex<double> em = std::polar(1.0, -k * x - et);
    const std::complex<double> amp = std::polar(0.5 / std::sqrt(L), -0.75 * k_pi);

    WaveSample out;
    out.x = x;
    out.t = t;
    out.psi = amp * (ep * brp + em * brm);

    const std::complex<double> dbrp =
        -s * (detail::exp_i_half_pi_sq(xi1) - detail::exp_i_half_pi_sq(xi2));
    const std::complex<double> dbrm =
        s * (detail::exp_i_half_pi_sq(xi3) - detail::exp_i_half_pi_sq(xi4));
    out.dpsi_dx = amp * (k_i * k * ep * brp + ep * dbrp - k_i * k * em * brm + em * dbrm);
    return out;
}

WaveSample gaussian_wave(double x0, double sigma0, double x, double t, const Scenario& sc) {
    require_time(t);
    if (!(sigma0 > 0.0)) throw std::domain_error("gaussian width must be positive");
    const double hb = sc.constants.hbar;
    const double m = sc.constants.mass;
    const double L = sc.box.length;

    // Evaluation in terms of boundary Faddeeva contributions keeps every
    // exponent's real part <= 0, so nothing overflows at small t or far x.
    const double q = m / (2.0 * hb * t);
    const double p = 1.0 / (4.0 * sigma0 * sigma0);
    const std::complex<double> a{p, -q};
    const std::complex<double> sqa = std::sqrt(a);
    const std::complex<double> bb = 2.0 * p * x0 - 2.0 * k_i * q * x;
    const std::complex<double> mu = bb / (2.0 * a);
    const std::complex<double> e1 = -mu * sqa;
    const std::complex<double> e2 = (L - mu) * sqa;
    const std::complex<double> g0{-p * x0 * x0, q * x * x};
    const std::complex<double> gL{-p * (L - x0) * (L - x0), q * (x - L) * (x - L)};
    const std::complex<double> G = k_i * p * q * (x - x0) * (x - x0) / a;
    const std::complex<double> norm =
        gaussian_norm_prefactor(sigma0) * std::sqrt(-k_i * q / k_pi);

    const double s1 = (e1.real() >= 0.0) ? 1.0 : -1.0;
    const double s2 = (e2.real() >= 0.0) ? 1.0 : -1.0;
    const std::complex<double> exp_g0 = std::exp(g0);
    const std::complex<double> exp_gL = std::exp(gL);
    const std::complex<double> tsum = (s2 - s1) * std::exp(G)
                                      - s2 * exp_gL * faddeeva_w(k_i * s2 * e2)
                                      + s1 * exp_g0 * faddeeva_w(k_i * s1 * e1);

    WaveSample out;
    out.x = x;
    out.t = t;
    out.psi = norm * (0.5 * std::sqrt(k_pi) / sqa) * tsum;
    out.dpsi_dx = 2.0 * k_i * q * ((x - mu) * out.psi + norm * (exp_gL - exp_g0) / (2.0 * a));
    return out;
}

WaveSample free_gaussian_wave(double x0, double sigma0, double x, double t, const Scenario& sc) {
    require_time(t);
    if (!(sigma0 > 0.0)) throw std::domain_error("gaussian width must be positive");
    const double hb = sc.constants.hbar;
    const double m = sc.constants.mass;
    const std::complex<double> beta = 1.0 + k_i * hb * t / (2.0 * m * sigma0 * sigma0);
    const double d = x - x0;
    WaveSample out;
    out.x = x;
    out.t = t;
    out.psi = gaussian_norm_prefactor(sigma0) / std::sqrt(beta) *
              std::exp(-d * d / (4.0 * sigma0 * sigma0 * beta));
    out.dpsi_dx = -out.psi * d / (2.0 * sigma0 * sigma0 * beta);
    return out;
}

WaveSample evaluate_wave(const Scenario& sc, double x, double t) {
    if (const auto* e = std::get_if<Eigenstate>(&sc.state))
        return eigenstate_wave(e->n, x, t, sc);
    if (const auto* g = std::get_if<TruncatedGaussian>(&sc.state))
        return gaussian_wave(g->x0, g->sigma0, x, t, sc);
    const auto& f = std::get<FreeGaussian>(sc.state);
    return free_gaussian_wave(f.x0, f.sigma0, x, t, sc);
}

WaveSample oracle_wave(const InitialState& st, double x, double t, const Scenario& sc,
                       double abs_tol) {
    require_time(t);
    const double hb = sc.constants.hbar;
    const double m = sc.constants.mass;

    double a = 0.0, b = sc.box.length;
    if (const auto* f = std::get_if<FreeGaussian>(&st)) {
        a = f->x0 - 13.0 * f->sigma0;
        b = f->x0 + 13.0 * f->sigma0;
    }

    const double alpha = m / (2.0 * hb * t);
    const std::complex<double> pref =
        std::sqrt(m / (2.0 * k_pi * hb * t)) * std::polar(1.0, -0.25 * k_pi);

    // Seed the adaptive pass with enough segments to see the kernel's
    // chirp and the initial state's own oscillation.
    const double max_d2 = std::max((x - a) * (x - a), (x - b) * (x - b));
    double osc = alpha * max_d2 / k_pi;
    if (const auto* e = std::get_if<Eigenstate>(&st)) osc += e->n;
    const int n0 = std::clamp(static_cast<int>(osc), 8, 20000);

    PairIntegrand f = [&](double xp, std::complex<double>& v1, std::complex<double>& v2) {
        const double d = x - xp;
        const std::complex<double> g =
            pref * std::exp(k_i * (alpha * d * d)) * initial_wave(st, xp, sc.box);
        v1 = g;
        v2 = g * (k_i * (2.0 * alpha) * d);
    };
    QuadOptions opt;
    opt.abs_tol = abs_tol;
    opt.max_intervals = 400000;
    opt.initial_segments = n0;
    // The derivative kernel carries an extra factor 2*alpha*d, so its error
    // estimate sits proportionally higher above the roundoff floor; tolerate
    // it at the matching scale instead of fighting the ulps.
    opt.second_scale = std::max(1.0, 2.0 * alpha * std::sqrt(max_d2));
    const PairResult res = integrate_gk_pair(f, a, b, opt);

    WaveSample out;
    out.x = x;
    out.t = t;
    out.psi = res.first;
    out.dpsi_dx = res.second;
    return out;
}

}  // namespace qbox
