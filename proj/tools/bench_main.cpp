// Compares the serial reference implementation against the OpenMP-parallel
// path on three representative workloads and verifies the results match
// bitwise. Reports best-of-three wall times.

#include "qbox/arrival.hpp"
#include "qbox/bohmian.hpp"
#include "qbox/parallel.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace qbox;

namespace {

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
    v.back() = b;
    return v;
}

double best_of(int reps, const std::function<void()>& work) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        work();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

void report(const std::string& name, double serial_ms, double parallel_ms, bool match) {
    std::printf("%-28s %12.2f %12.2f %9.2fx   %s\n", name.c_str(), serial_ms, parallel_ms,
                serial_ms / parallel_ms, match ? "bitwise" : "MISMATCH");
}

}  // namespace

int main() {
    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    std::printf("openmp: %s, threads: %d, best of 3 runs\n",
                openmp_enabled() ? "enabled" : "disabled", threads);
    std::printf("%-28s %12s %12s %10s   %s\n", "workload", "serial_ms", "parallel_ms", "speedup",
                "results");

    {
        Scenario sc;
        sc.state = Eigenstate{50};
        const auto xs = linspace(-1.0, 3.0, 200000);
        std::vector<WaveSample> ws, wp;
        const double ts = best_of(3, [&] { ws = wave_line(sc, xs, 0.05, Exec::serial); });
        const double tp = best_of(3, [&] { wp = wave_line(sc, xs, 0.05, Exec::parallel); });
        bool match = ws.size() == wp.size();
        for (std::size_t i = 0; match && i < ws.size(); ++i)
            match = ws[i].psi == wp[i].psi && ws[i].dpsi_dx == wp[i].dpsi_dx;
        report("wave line (n=50, 200k pts)", ts, tp, match);
    }

    {
        Scenario sc;
        sc.state = Eigenstate{7};
        const auto t = linspace(1e-6, 0.6, 20000);
        CurrentSeries cs, cp;
        const double ts = best_of(3, [&] { cs = current_series(sc, 2.0, t, Exec::serial); });
        const double tp = best_of(3, [&] { cp = current_series(sc, 2.0, t, Exec::parallel); });
        bool match = cs.j == cp.j && cs.t == cp.t;
        report("detector current (20k times)", ts, tp, match);
    }

    {
        Scenario sc;
        sc.state = Eigenstate{7};
        const auto starts = quantile_initial_positions(sc.state, sc.box, 64);
        const auto t = linspace(1e-6, 0.03, 50);
        Ensemble es, ep;
        const double ts = best_of(3, [&] { es = integrate_ensemble(sc, starts, t, {}, Exec::serial); });
        const double tp = best_of(3, [&] { ep = integrate_ensemble(sc, starts, t, {}, Exec::parallel); });
        bool match = es.trajectories.size() == ep.trajectories.size();
        for (std::size_t i = 0; match && i < es.trajectories.size(); ++i) {
            const auto& a = es.trajectories[i];
            const auto& b = ep.trajectories[i];
            match = a.status == b.status && a.samples.size() == b.samples.size();
            for (std::size_t k = 0; match && k < a.samples.size(); ++k)
                match = a.samples[k].x == b.samples[k].x && a.samples[k].v == b.samples[k].v;
        }
        report("ensemble (64 paths, n=7)", ts, tp, match);
    }

    return 0;
}
