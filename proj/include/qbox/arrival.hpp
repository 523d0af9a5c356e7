#pragma once

#include "qbox/parallel.hpp"
#include "qbox/scenario.hpp"

#include <optional>
#include <span>
#include <vector>

namespace qbox {

struct CurrentSeries {
    double detector_x = 0.0;  // um
    std::vector<double> t;    // ms, strictly increasing
    std::vector<double> j;    // 1/ms, probability current at detector_x
};

enum class ArrivalMethod { leavens, cutoff };

const char* to_string(ArrivalMethod m);

CurrentSeries current_series(const Scenario& sc, double detector_x,
                             std::span<const double> t_grid, Exec ex = Exec::parallel);

// Trapezoid cumulative flux f(t_i) = int_{t_0}^{t_i} j dt, with f(t_0) = 0.
std::vector<double> cumulative_flux(const CurrentSeries& cs);

// Probability the detector has fired by time t: max_{s<=t} f(s) + max_{s<=t} (-f(s)),
// evaluated on the series grid (both running maxima start at f(t_0) = 0).
double detection_probability(const CurrentSeries& cs, double t);

struct ArrivalDistribution {
    ArrivalMethod method = ArrivalMethod::leavens;
    std::vector<double> t;   // ms
    std::vector<double> pi;  // 1/ms, trapezoid-normalized to unit area
    double mean = 0.0;       // ms, first moment of pi
    std::optional<double> detection_prob;  // cutoff method only
};

// pi(t) = |j(t)| / int |j|.
ArrivalDistribution arrival_leavens(const CurrentSeries& cs);

// First-crossing rule: current retained only while the cumulative flux sits
// at a running extremum (ties count as at the extremum), then normalized.
ArrivalDistribution arrival_cutoff(const CurrentSeries& cs);

double mean_arrival(const ArrivalDistribution& d);

}  // namespace qbox
