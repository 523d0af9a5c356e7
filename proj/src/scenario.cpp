#include "qbox/scenario.hpp"

#include "qbox/table_io.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qbox {

std::vector<double> GridSpec::points() const {
    if (count < 1) throw std::invalid_argument("grid count must be >= 1");
    std::vector<double> p(static_cast<std::size_t>(count));
    if (count == 1) {
        p[0] = min;
        return p;
    }
    const double step = (max - min) / (count - 1);
    for (int i = 0; i < count; ++i) p[static_cast<std::size_t>(i)] = min + step * i;
    p.back() = max;
    return p;
}

double wavenumber(int n, const BoxGeometry& box) {
    if (n < 1) throw std::invalid_argument("eigenstate index must be >= 1");
    return n * std::numbers::pi / box.length;
}

double semiclassical_time(int n, const Scenario& sc) {
    const double L = sc.box.length;
    return sc.constants.mass * L * L / (2.0 * n * std::numbers::pi * sc.constants.hbar);
}

ValidationReport validate(const Scenario& sc) {
    ValidationReport r;
    auto err = [&r](const std::string& m) { r.errors.push_back(m); };
    auto warn = [&r](const std::string& m) { r.warnings.push_back(m); };

    if (!(sc.constants.hbar > 0.0)) err("hbar must be positive");
    if (!(sc.constants.mass > 0.0)) err("mass must be positive");
    if (!(sc.box.length > 0.0)) err("box length must be positive");

    const double L = sc.box.length;
    if (const auto* e = std::get_if<Eigenstate>(&sc.state)) {
        if (e->n < 1) err("eigenstate index must be >= 1");
    } else if (const auto* g = std::get_if<TruncatedGaussian>(&sc.state)) {
        if (!(g->sigma0 > 0.0)) err("gaussian width must be positive");
        if (!(g->x0 > 0.0 && g->x0 < L)) err("truncated gaussian center must lie inside the box");
        if (g->sigma0 > L) warn("gaussian width exceeds the box length; most of the state is cut off");
    } else if (const auto* f = std::get_if<FreeGaussian>(&sc.state)) {
        if (!(f->sigma0 > 0.0)) err("gaussian width must be positive");
    }

    if (!(sc.t_start > 0.0)) err("t_start must be positive");
    if (!(sc.t_max > sc.t_start)) err("t_max must exceed t_start");
    if (sc.t_start > 1e-3) warn("t_start is late; the release transient happens well before it");

    if (sc.detector_x >= 0.0 && sc.detector_x <= L)
        warn("detector sits inside the initial box region");

    if (sc.x_grid.count < 1) err("x grid needs at least one point");
    if (sc.t_grid.count < 1) err("t grid needs at least one point");
    if (sc.x_grid.count > 1 && !(sc.x_grid.max > sc.x_grid.min)) err("x grid max must exceed min");
    if (sc.t_grid.count > 1 && !(sc.t_grid.max > sc.t_grid.min)) err("t grid max must exceed min");

    return r;
}

std::string describe_state(const InitialState& st) {
    if (const auto* e = std::get_if<Eigenstate>(&st)) return "n:" + std::to_string(e->n);
    if (const auto* g = std::get_if<TruncatedGaussian>(&st))
        return "gaussian:" + format_double(g->x0) + "," + format_double(g->sigma0);
    const auto& f = std::get<FreeGaussian>(st);
    return "free-gaussian:" + format_double(f.x0) + "," + format_double(f.sigma0);
}

}  // namespace qbox
