#pragma once

#include <complex>

namespace qbox {

// Complex Fresnel integral F(xi) = C(xi) + i S(xi) = int_0^xi exp(i pi u^2 / 2) du.
// Accurate to ~1e-13 absolute over the whole real line; odd in xi.
std::complex<double> fresnel_f(double xi);

// Faddeeva function w(z) = exp(-z^2) erfc(-i z) for Im z >= 0.
// Throws std::domain_error for Im z < 0.
std::complex<double> faddeeva_w(std::complex<double> z);

// Error function of a complex argument. Supported window: |Im z| <= 50
// (throws std::domain_error outside). Large |Im z| with small |Re z| can
// overflow to inf honestly, as erf itself grows like exp(y^2).
std::complex<double> erf_complex(std::complex<double> z);

namespace detail {

// Branch switch point between the Maclaurin series and the Faddeeva-based
// evaluation of fresnel_f.
inline constexpr double k_fresnel_switch = 1.25;

std::complex<double> fresnel_series(double xi);     // |xi| <= k_fresnel_switch
std::complex<double> fresnel_auxiliary(double xi);  // xi > 0

// Dawson integral D(x) = exp(-x^2) int_0^x exp(t^2) dt.
double dawson(double x);

// exp(i pi xi^2 / 2) with the phase reduced in extended precision so the
// result stays accurate for large xi (this is dF/dxi).
std::complex<double> exp_i_half_pi_sq(double xi);

}  // namespace detail

}  // namespace qbox
