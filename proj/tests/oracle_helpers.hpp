#pragma once

// Test-side reference implementations, deliberately independent of the
// library's evaluation paths: adaptive Simpson instead of Gauss-Kronrod, a
// continued fraction instead of the midpoint rule, and a from-scratch
// running-maximum scan for the arrival cutoff.

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

inline cplx simpson_rec(const std::function<cplx(double)>& f, double a, double b, cplx fa,
                        cplx fm, cplx fb, cplx whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const cplx flm = f(lm);
    const cplx frm = f(rm);
    const cplx left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const cplx right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const cplx delta = left + right - whole;
    if (depth <= 0) throw std::runtime_error("adaptive simpson: depth exhausted");
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

// Adaptive Simpson with an oscillation-aware pre-split.
inline cplx integrate(const std::function<cplx(double)>& f, double a, double b, double tol,
                      int presplit = 16) {
    cplx acc = 0.0;
    for (int s = 0; s < presplit; ++s) {
        const double xa = a + (b - a) * s / presplit;
        const double xb = a + (b - a) * (s + 1) / presplit;
        const double xm = 0.5 * (xa + xb);
        const cplx fa = f(xa), fm = f(xm), fb = f(xb);
        const cplx whole = (xb - xa) / 6.0 * (fa + 4.0 * fm + fb);
        acc += simpson_rec(f, xa, xb, fa, fm, fb, whole, tol / presplit, 60);
    }
    return acc;
}

// int_0^xi exp(i pi u^2 / 2) du straight from the definition.
inline cplx fresnel_reference(double xi, double tol = 1e-13) {
    const double a = std::abs(xi);
    const int presplit = std::max(16, static_cast<int>(a * a) + 1);
    const cplx val = integrate(
        [](double u) {
            const double ph = 1.5707963267948966 * u * u;
            return cplx{std::cos(ph), std::sin(ph)};
        },
        0.0, a, tol, presplit);
    return xi < 0.0 ? -val : val;
}

// Imaginary part of w on the real axis: (2/sqrt(pi)) exp(-x^2) int_0^x exp(t^2) dt.
inline double w_imag_reference(double x, double tol = 1e-13) {
    const cplx val = integrate(
        [x](double t) { return cplx{std::exp(t * t - x * x), 0.0}; }, 0.0, x, tol,
        std::max(4, static_cast<int>(x * x)));
    return 2.0 / std::sqrt(M_PI) * val.real();
}

// Laplace continued fraction for w(z); accurate for |z| not too small.
inline cplx w_continued_fraction(cplx z, int levels = 60) {
    cplx tail = 0.0;
    for (int k = levels; k >= 1; --k) tail = (0.5 * k) / (z - tail);
    return cplx{0.0, 0.5641895835477562869} / (z - tail);
}

// Brute-force first-crossing arrival rule: trapezoid cumulative flux, then a
// from-scratch scan of the running extrema at every sample. Ties retain the
// sample (Theta(0) = 1); wrong-signed retained current clamps to zero.
inline std::vector<double> cutoff_reference(const std::vector<double>& t,
                                            const std::vector<double>& j) {
    const std::size_t n = t.size();
    std::vector<double> f(n, 0.0);
    for (std::size_t i = 1; i < n; ++i)
        f[i] = f[i - 1] + 0.5 * (j[i] + j[i - 1]) * (t[i] - t[i - 1]);
    std::vector<double> raw(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double mp = f[0], mm = -f[0];
        for (std::size_t s = 0; s <= i; ++s) {
            mp = std::max(mp, f[s]);
            mm = std::max(mm, -f[s]);
        }
        const bool at_p = f[i] >= mp;
        const bool at_m = -f[i] >= mm;
        double r = j[i] * ((at_p ? 1.0 : 0.0) - (at_m ? 1.0 : 0.0));
        raw[i] = r < 0.0 ? 0.0 : r;
    }
    double z = 0.0;
    for (std::size_t i = 1; i < n; ++i)
        z += 0.5 * (raw[i] + raw[i - 1]) * (t[i] - t[i - 1]);
    for (auto& r : raw) r /= z;
    return raw;
}

}  // namespace oracle
