#pragma once

#include "qbox/scenario.hpp"
#include "qbox/wavefunction.hpp"

#include <optional>

namespace qbox {

// Probability density floor below which the guidance velocity j/rho is
// treated as undefined (wavefunction node).
inline constexpr double k_node_eps = 1e-12;  // 1/um

// rho = |psi|^2, 1/um
double density(const WaveSample& w);

// j = (hbar/m) Im(psi* dpsi/dx), 1/ms
double current(const WaveSample& w, const PhysicalConstants& c);

// Guidance velocity v = j / rho in um/ms; nullopt at nodes (rho < node_eps).
std::optional<double> velocity(const WaveSample& w, const PhysicalConstants& c,
                               double node_eps = k_node_eps);

struct FieldPoint {
    double x = 0.0;
    double t = 0.0;
    double rho = 0.0;
    double j = 0.0;
    std::optional<double> v;
};

FieldPoint field_point(const WaveSample& w, const PhysicalConstants& c,
                       double node_eps = k_node_eps);

}  // namespace qbox
