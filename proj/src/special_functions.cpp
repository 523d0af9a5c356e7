#include "qbox/special_functions.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qbox {

namespace {

constexpr double k_sqrt_pi = 1.7724538509055160273;
constexpr double k_inv_sqrt_pi = 0.56418958354775628695;
constexpr double k_half_pi = 1.5707963267948966192;

// Midpoint-rule parameters for the Faddeeva evaluation: nodes at
// t_k = (k + 1/2) h. With h = 1/2 the trapezoid-family error term
// exp(-(pi/h)^2) is below 1e-16, and 13 nodes reach exp(-t^2) ~ 1e-17.
constexpr double k_w_h = 0.5;
constexpr int k_w_nodes = 13;

// Below this height the midpoint sum loses accuracy near the real axis;
// switch to a Taylor expansion off the axis instead.
constexpr double k_w_axis_cut = 1e-3;

std::array<double, k_w_nodes> make_node_weights() {
    std::array<double, k_w_nodes> e{};
    for (int k = 0; k < k_w_nodes; ++k) {
        const double tk = (k + 0.5) * k_w_h;
        e[static_cast<std::size_t>(k)] = std::exp(-tk * tk);
    }
    return e;
}

// exp(u) - 1 for complex u without cancellation for small |u|.
std::complex<double> expm1_c(std::complex<double> u) {
    const double a = u.real();
    const double b = u.imag();
    const double ea = std::exp(a);
    const double sh = std::sin(0.5 * b);
    return {std::expm1(a) - ea * 2.0 * sh * sh, ea * std::sin(b)};
}

}  // namespace

namespace detail {

double dawson(double x) {
    if (std::abs(x) < 0.2) {
        // D(x) = x (1 - 2x^2/3 (1 - 2x^2/5 (1 - ...))), truncated at x^13
        const double x2 = x * x;
        double acc = 1.0 - 2.0 * x2 / 13.0;
        acc = 1.0 - 2.0 * x2 / 11.0 * acc;
        acc = 1.0 - 2.0 * x2 / 9.0 * acc;
        acc = 1.0 - 2.0 * x2 / 7.0 * acc;
        acc = 1.0 - 2.0 * x2 / 5.0 * acc;
        acc = 1.0 - 2.0 * x2 / 3.0 * acc;
        return x * acc;
    }
    // Sampling-theorem form: D(x) = (1/sqrt(pi)) sum_{k odd} exp(-(x - k h)^2) / k
    const double h = 0.25;
    const double window = 6.8;  // exp(-6.8^2) ~ 8e-21
    int klo = static_cast<int>(std::ceil((x - window) / h));
    const int khi = static_cast<int>(std::floor((x + window) / h));
    if (klo % 2 == 0) ++klo;
    double sum = 0.0;
    for (int k = klo; k <= khi; k += 2) {
        const double d = x - k * h;
        sum += std::exp(-d * d) / k;
    }
    return k_inv_sqrt_pi * sum;
}

std::complex<double> exp_i_half_pi_sq(double xi) {
    // Phase pi xi^2 / 2 reduced exactly: xi^2 = s + e (two-product), and
    // s mod 4 is exact, so the sine/cosine arguments stay small.
    const double s = xi * xi;
    const double e = std::fma(xi, xi, -s);
    const double r = std::fmod(s, 4.0);
    const double ph = k_half_pi * r + k_half_pi * e;
    return {std::cos(ph), std::sin(ph)};
}

std::complex<double> fresnel_series(double xi) {
    const double x2 = xi * xi;
    const double x4 = x2 * x2;
    const double f = -k_half_pi * k_half_pi * x4;
    double a = 1.0;         // (-1)^k (pi/2)^{2k}   x^{4k} / (2k)!
    double b = k_half_pi;   // (-1)^k (pi/2)^{2k+1} x^{4k} / (2k+1)!
    double c = 0.0, s = 0.0;
    for (int k = 0; k < 24; ++k) {
        c += a / (4 * k + 1);
        s += b / (4 * k + 3);
        a *= f / ((2 * k + 1) * (2 * k + 2));
        b *= f / ((2 * k + 2) * (2 * k + 3));
        if (std::abs(a) < 1e-18 && std::abs(b) < 1e-18) break;
    }
    return {xi * c, xi * x2 * s};
}

std::complex<double> fresnel_auxiliary(double xi) {
    // F(xi) = (1+i)/2 (1 - exp(i pi xi^2/2) w(sqrt(pi)/2 (1+i) xi)), xi > 0
    const double cx = 0.5 * k_sqrt_pi * xi;
    const std::complex<double> w = faddeeva_w({cx, cx});
    const std::complex<double> ph = exp_i_half_pi_sq(xi);
    const std::complex<double> half_one_i{0.5, 0.5};
    return half_one_i * (1.0 - ph * w);
}

}  // namespace detail

std::complex<double> faddeeva_w(std::complex<double> z) {
    const double x = z.real();
    const double y = z.imag();
    if (std::isnan(x) || std::isnan(y)) return {std::nan(""), std::nan("")};
    if (y < 0.0) throw std::domain_error("faddeeva_w: argument must satisfy Im z >= 0");
    if (x < 0.0) return std::conj(faddeeva_w({-x, y}));

    if (y < k_w_axis_cut) {
        // Taylor step off the real axis: w(x + iy) = sum_k w^(k)(x) (iy)^k / k!
        // with w(x) = exp(-x^2) + 2i D(x)/sqrt(pi) and the recursion
        // w^(k) = -2(k-1) w^(k-2) - 2x w^(k-1).
        constexpr int order = 6;
        std::array<std::complex<double>, order + 1> d{};
        d[0] = {std::exp(-x * x), 2.0 * k_inv_sqrt_pi * detail::dawson(x)};
        d[1] = -2.0 * x * d[0] + std::complex<double>{0.0, 2.0 * k_inv_sqrt_pi};
        for (int k = 2; k <= order; ++k)
            d[static_cast<std::size_t>(k)] = -2.0 * (k - 1.0) * d[static_cast<std::size_t>(k - 2)]
                                             - 2.0 * x * d[static_cast<std::size_t>(k - 1)];
        double fact = 1.0;
        std::array<std::complex<double>, order + 1> coeff{};
        for (int k = 0; k <= order; ++k) {
            if (k > 0) fact *= k;
            coeff[static_cast<std::size_t>(k)] = d[static_cast<std::size_t>(k)] / fact;
        }
        const std::complex<double> iy{0.0, y};
        std::complex<double> acc = coeff[order];
        for (int k = order - 1; k >= 0; --k) acc = coeff[static_cast<std::size_t>(k)] + acc * iy;
        return acc;
    }

    static const std::array<double, k_w_nodes> exp_tk2 = make_node_weights();
    std::complex<double> sum{};
    for (int k = 0; k < k_w_nodes; ++k) {
        const double tk = (k + 0.5) * k_w_h;
        // 1/(z-t) + 1/(z+t) = 2z/((z-t)(z+t)); the factored form avoids the
        // cancellation that z^2 - t^2 suffers near the nodes.
        sum += exp_tk2[static_cast<std::size_t>(k)] / ((z - tk) * (z + tk));
    }
    std::complex<double> w = std::complex<double>{0.0, k_w_h / std::numbers::pi} * (2.0 * z * sum);

    if (y < std::numbers::pi / k_w_h) {
        // Residue correction for the poles the midpoint rule picks up:
        // 2 exp(-z^2) / (1 + exp(-2 pi i z / h)), with the node-exact phase
        // reduction exp(-2 pi i (m + 1/2)) = -1 so the denominator becomes
        // -(exp(2 pi (y - i delta)/h) - 1).
        const double node = (std::floor(x / k_w_h) + 0.5) * k_w_h;
        const double delta = x - node;
        const double c = 2.0 * std::numbers::pi / k_w_h;
        const std::complex<double> den = -expm1_c({c * y, -c * delta});
        w += 2.0 * std::exp(-z * z) / den;
    }
    return w;
}

std::complex<double> fresnel_f(double xi) {
    const double a = std::abs(xi);
    if (a <= detail::k_fresnel_switch) return detail::fresnel_series(xi);
    const std::complex<double> v = detail::fresnel_auxiliary(a);
    return xi < 0.0 ? -v : v;
}

std::complex<double> erf_complex(std::complex<double> z) {
    if (std::abs(z.imag()) > 50.0)
        throw std::domain_error("erf_complex: |Im z| > 50 is outside the supported window");
    if (z.real() < 0.0) return -erf_complex(-z);
    if (z.imag() < 0.0) return std::conj(erf_complex(std::conj(z)));
    const std::complex<double> iz{-z.imag(), z.real()};
    return 1.0 - std::exp(-z * z) * faddeeva_w(iz);
}

}  // namespace qbox
