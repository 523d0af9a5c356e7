#include "qbox/parallel.hpp"

#include <cstdint>
#include <exception>
#include <stdexcept>

namespace qbox {

bool openmp_enabled() {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

namespace {

// Runs body(i) for i in [0, n), in parallel when requested. Writes are by
// index so the serial and parallel results are bitwise identical.
template <typename Body>
void for_indices(std::int64_t n, Exec ex, const Body& body) {
    if (ex == Exec::parallel && openmp_enabled()) {
        std::exception_ptr err = nullptr;
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (std::int64_t i = 0; i < n; ++i) {
            try {
                body(i);
            } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
                err = std::current_exception();
            }
        }
        if (err) std::rethrow_exception(err);
    } else {
        for (std::int64_t i = 0; i < n; ++i) body(i);
    }
}

}  // namespace

std::vector<WaveSample> wave_line(const Scenario& sc, std::span<const double> xs, double t,
                                  Exec ex) {
    std::vector<WaveSample> out(xs.size());
    for_indices(static_cast<std::int64_t>(xs.size()), ex, [&](std::int64_t i) {
        out[static_cast<std::size_t>(i)] = evaluate_wave(sc, xs[static_cast<std::size_t>(i)], t);
    });
    return out;
}

std::vector<WaveSample> wave_at_times(const Scenario& sc, double x, std::span<const double> ts,
                                      Exec ex) {
    std::vector<WaveSample> out(ts.size());
    for_indices(static_cast<std::int64_t>(ts.size()), ex, [&](std::int64_t i) {
        out[static_cast<std::size_t>(i)] = evaluate_wave(sc, x, ts[static_cast<std::size_t>(i)]);
    });
    return out;
}

}  // namespace qbox
