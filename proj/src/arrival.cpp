#include "qbox/arrival.hpp"

#include "qbox/observables.hpp"

#include <cmath>
#include <stdexcept>

namespace qbox {

const char* to_string(ArrivalMethod m) {
    return m == ArrivalMethod::leavens ? "leavens" : "cutoff";
}

namespace {

void require_series(const CurrentSeries& cs) {
    if (cs.t.size() < 2 || cs.t.size() != cs.j.size())
        throw std::invalid_argument("current series needs >= 2 aligned samples");
    for (std::size_t i = 1; i < cs.t.size(); ++i)
        if (!(cs.t[i] > cs.t[i - 1]))
            throw std::invalid_argument("current series times must be strictly increasing");
}

double trapezoid(const std::vector<double>& t, const std::vector<double>& y) {
    double acc = 0.0;
    for (std::size_t i = 1; i < t.size(); ++i)
        acc += 0.5 * (y[i] + y[i - 1]) * (t[i] - t[i - 1]);
    return acc;
}

ArrivalDistribution normalize(ArrivalMethod method, const CurrentSeries& cs,
                              std::vector<double> raw) {
    const double z = trapezoid(cs.t, raw);
    if (!(z > 0.0)) throw std::runtime_error("arrival distribution has no detected flux");
    ArrivalDistribution d;
    d.method = method;
    d.t = cs.t;
    d.pi = std::move(raw);
    for (auto& p : d.pi) p /= z;
    std::vector<double> tp(d.t.size());
    for (std::size_t i = 0; i < d.t.size(); ++i) tp[i] = d.t[i] * d.pi[i];
    d.mean = trapezoid(d.t, tp);
    return d;
}

}  // namespace

CurrentSeries current_series(const Scenario& sc, double detector_x,
                             std::span<const double> t_grid, Exec ex) {
    CurrentSeries cs;
    cs.detector_x = detector_x;
    cs.t.assign(t_grid.begin(), t_grid.end());
    const auto waves = wave_at_times(sc, detector_x, t_grid, ex);
    cs.j.resize(waves.size());
    for (std::size_t i = 0; i < waves.size(); ++i) cs.j[i] = current(waves[i], sc.constants);
    return cs;
}

std::vector<double> cumulative_flux(const CurrentSeries& cs) {
    require_series(cs);
    std::vector<double> f(cs.t.size());
    f[0] = 0.0;
    for (std::size_t i = 1; i < cs.t.size(); ++i)
        f[i] = f[i - 1] + 0.5 * (cs.j[i] + cs.j[i - 1]) * (cs.t[i] - cs.t[i - 1]);
    return f;
}

double detection_probability(const CurrentSeries& cs, double t) {
    const auto f = cumulative_flux(cs);
    double max_p = 0.0, max_m = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (cs.t[i] > t) break;
        max_p = std::max(max_p, f[i]);
        max_m = std::max(max_m, -f[i]);
    }
    return max_p + max_m;
}

ArrivalDistribution arrival_leavens(const CurrentSeries& cs) {
    require_series(cs);
    std::vector<double> raw(cs.j.size());
    for (std::size_t i = 0; i < cs.j.size(); ++i) raw[i] = std::abs(cs.j[i]);
    return normalize(ArrivalMethod::leavens, cs, std::move(raw));
}

ArrivalDistribution arrival_cutoff(const CurrentSeries& cs) {
    require_series(cs);
    const auto f = cumulative_flux(cs);
    std::vector<double> raw(f.size());
    double run_p = f[0];
    double run_m = -f[0];
    for (std::size_t i = 0; i < f.size(); ++i) {
        // Theta(0) = 1: a sample tied with the running extremum still counts
        // as sitting at the front.
        const bool at_p = f[i] >= run_p;
        const bool at_m = -f[i] >= run_m;
        run_p = std::max(run_p, f[i]);
        run_m = std::max(run_m, -f[i]);
        const double bracket = (at_p ? 1.0 : 0.0) - (at_m ? 1.0 : 0.0);
        double r = cs.j[i] * bracket;
        // Discrete ties can retain an infinitesimally wrong-signed current;
        // the continuum expression is nonnegative, so clamp those to zero.
        if (r < 0.0) r = 0.0;
        raw[i] = r;
    }
    auto d = normalize(ArrivalMethod::cutoff, cs, std::move(raw));
    d.detection_prob = run_p + run_m;
    return d;
}

double mean_arrival(const ArrivalDistribution& d) {
    std::vector<double> tp(d.t.size());
    for (std::size_t i = 0; i < d.t.size(); ++i) tp[i] = d.t[i] * d.pi[i];
    const double z = trapezoid(d.t, d.pi);
    return trapezoid(d.t, tp) / z;
}

}  // namespace qbox
