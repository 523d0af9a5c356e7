#include "qbox/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

namespace qbox {

namespace {

// Gauss-Kronrod (G7, K15) abscissae and weights on [-1, 1]. Kronrod points
// with odd index are the embedded Gauss points.
constexpr std::array<double, 8> k_xgk = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
constexpr std::array<double, 8> k_wgk = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr std::array<double, 4> k_wg = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Interval {
    double a = 0.0, b = 0.0;
    std::complex<double> v1{}, v2{};
    double err = 0.0;
};

bool by_error(const Interval& lhs, const Interval& rhs) { return lhs.err < rhs.err; }

Interval eval_k15(const PairIntegrand& f, double a, double b, double second_scale,
                  long& evals) {
    const double c = 0.5 * (a + b);
    const double hl = 0.5 * (b - a);
    std::complex<double> k1{}, k2{}, g1{}, g2{};
    std::complex<double> v1, v2;
    f(c, v1, v2);
    evals += 1;
    k1 = k_wgk[7] * v1;
    k2 = k_wgk[7] * v2;
    g1 = k_wg[3] * v1;
    g2 = k_wg[3] * v2;
    for (int i = 0; i < 7; ++i) {
        std::complex<double> a1, a2, b1, b2;
        f(c - hl * k_xgk[static_cast<std::size_t>(i)], a1, a2);
        f(c + hl * k_xgk[static_cast<std::size_t>(i)], b1, b2);
        evals += 2;
        k1 += k_wgk[static_cast<std::size_t>(i)] * (a1 + b1);
        k2 += k_wgk[static_cast<std::size_t>(i)] * (a2 + b2);
        if (i % 2 == 1) {
            g1 += k_wg[static_cast<std::size_t>(i / 2)] * (a1 + b1);
            g2 += k_wg[static_cast<std::size_t>(i / 2)] * (a2 + b2);
        }
    }
    Interval out;
    out.a = a;
    out.b = b;
    out.v1 = hl * k1;
    out.v2 = hl * k2;
    out.err = std::max(std::abs(out.v1 - hl * g1), std::abs(out.v2 - hl * g2) / second_scale);
    return out;
}

}  // namespace

PairResult integrate_gk_pair(const PairIntegrand& f, double a, double b, const QuadOptions& opt) {
    const int n0 = std::max(1, opt.initial_segments);
    const double scale2 = std::max(1.0, opt.second_scale);
    std::vector<Interval> heap;
    heap.reserve(static_cast<std::size_t>(opt.max_intervals) + 2);
    long evals = 0;
    double total_err = 0.0;
    for (int i = 0; i < n0; ++i) {
        const double xa = a + (b - a) * i / n0;
        const double xb = (i + 1 == n0) ? b : a + (b - a) * (i + 1) / n0;
        heap.push_back(eval_k15(f, xa, xb, scale2, evals));
        total_err += heap.back().err;
    }
    std::make_heap(heap.begin(), heap.end(), by_error);

    const double min_width = 1e-14 * (std::abs(a) + std::abs(b) + std::abs(b - a));
    while (total_err > opt.abs_tol) {
        if (static_cast<int>(heap.size()) >= opt.max_intervals)
            throw QuadratureError("adaptive quadrature: interval budget exhausted");
        std::pop_heap(heap.begin(), heap.end(), by_error);
        const Interval worst = heap.back();
        heap.pop_back();
        if (worst.b - worst.a < min_width)
            throw QuadratureError("adaptive quadrature: refinement stalled at roundoff width");
        total_err -= worst.err;
        const double mid = 0.5 * (worst.a + worst.b);
        for (const auto& child :
             {eval_k15(f, worst.a, mid, scale2, evals), eval_k15(f, mid, worst.b, scale2, evals)}) {
            total_err += child.err;
            heap.push_back(child);
            std::push_heap(heap.begin(), heap.end(), by_error);
        }
    }

    PairResult res;
    // Sum smallest-error intervals first to keep the accumulation tidy.
    std::sort_heap(heap.begin(), heap.end(), by_error);
    for (const auto& iv : heap) {
        res.first += iv.v1;
        res.second += iv.v2;
    }
    res.error = total_err;
    res.evaluations = evals;
    return res;
}

double integrate_gk_real(const std::function<double(double)>& f, double a, double b,
                         const QuadOptions& opt) {
    PairIntegrand wrap = [&f](double x, std::complex<double>& v1, std::complex<double>& v2) {
        v1 = f(x);
        v2 = 0.0;
    };
    return integrate_gk_pair(wrap, a, b, opt).first.real();
}

}  // namespace qbox
