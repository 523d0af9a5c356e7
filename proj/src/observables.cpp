#include "qbox/observables.hpp"

#include <cmath>

namespace qbox {

double density(const WaveSample& w) { return std::norm(w.psi); }

double current(const WaveSample& w, const PhysicalConstants& c) {
    return c.hbar / c.mass * std::imag(std::conj(w.psi) * w.dpsi_dx);
}

std::optional<double> velocity(const WaveSample& w, const PhysicalConstants& c, double node_eps) {
    const double rho = density(w);
    if (!(rho >= node_eps)) return std::nullopt;
    return current(w, c) / rho;
}

FieldPoint field_point(const WaveSample& w, const PhysicalConstants& c, double node_eps) {
    FieldPoint fp;
    fp.x = w.x;
    fp.t = w.t;
    fp.rho = density(w);
    fp.j = current(w, c);
    fp.v = velocity(w, c, node_eps);
    return fp;
}

}  // namespace qbox
