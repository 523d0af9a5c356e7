#pragma once

#include <complex>
#include <functional>
#include <stdexcept>

namespace qbox {

struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct QuadOptions {
    double abs_tol = 1e-10;
    int max_intervals = 200000;
    int initial_segments = 1;
    // The second component's error estimate is divided by this before being
    // compared against abs_tol, so a naturally larger component (e.g. a
    // derivative kernel) can be integrated to a proportionally looser
    // absolute tolerance in the same pass.
    double second_scale = 1.0;
};

// Integrand evaluated once per abscissa, filling two complex components
// (used to integrate a kernel and its derivative kernel in one pass).
using PairIntegrand = std::function<void(double, std::complex<double>&, std::complex<double>&)>;

struct PairResult {
    std::complex<double> first{};
    std::complex<double> second{};
    double error = 0.0;
    long evaluations = 0;
};

// Globally adaptive Gauss-Kronrod (G7, K15) with a worst-interval-first
// refinement queue. Throws QuadratureError if the requested absolute
// tolerance cannot be met within max_intervals.
PairResult integrate_gk_pair(const PairIntegrand& f, double a, double b, const QuadOptions& opt);

double integrate_gk_real(const std::function<double(double)>& f, double a, double b,
                         const QuadOptions& opt);

}  // namespace qbox
