#pragma once

#include "qbox/scenario.hpp"
#include "qbox/wavefunction.hpp"

#include <span>
#include <vector>

namespace qbox {

// Execution policy for the data-parallel kernels. Results are written by
// index, so serial and parallel runs of the same kernel are bitwise
// identical; Exec::parallel falls back to serial when OpenMP is absent.
enum class Exec { serial, parallel };

bool openmp_enabled();

// psi and dpsi/dx along a spatial grid at one time.
std::vector<WaveSample> wave_line(const Scenario& sc, std::span<const double> xs, double t,
                                  Exec ex = Exec::parallel);

// psi and dpsi/dx at one point across a time grid (detector histories).
std::vector<WaveSample> wave_at_times(const Scenario& sc, double x, std::span<const double> ts,
                                      Exec ex = Exec::parallel);

}  // namespace qbox
