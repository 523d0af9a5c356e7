#include "qbox/bohmian.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <random>
#include <stdexcept>

namespace qbox {

const char* to_string(TrajectoryStatus s) {
    switch (s) {
        case TrajectoryStatus::completed: return "completed";
        case TrajectoryStatus::stopped_at_node: return "stopped_at_node";
        case TrajectoryStatus::left_domain: return "left_domain";
    }
    return "unknown";
}

namespace {

struct VelField {
    const Scenario& sc;
    double node_eps;

    // Returns false at a node (guidance velocity undefined).
    bool eval(double x, double t, double& v) const {
        const auto res = velocity(evaluate_wave(sc, x, t), sc.constants, node_eps);
        if (!res) return false;
        v = *res;
        return true;
    }
};

// One classic RK4 step; v1 is the already-known velocity at (x, t).
bool rk4_step(const VelField& f, double x, double t, double h, double v1, double& out) {
    double k2, k3, k4;
    if (!f.eval(x + 0.5 * h * v1, t + 0.5 * h, k2)) return false;
    if (!f.eval(x + 0.5 * h * k2, t + 0.5 * h, k3)) return false;
    if (!f.eval(x + h * k3, t + h, k4)) return false;
    out = x + h / 6.0 * (v1 + 2.0 * k2 + 2.0 * k3 + k4);
    return true;
}

double hermite(double theta, double x0, double m0, double x1, double m1) {
    const double t2 = theta * theta;
    const double t3 = t2 * theta;
    return (2.0 * t3 - 3.0 * t2 + 1.0) * x0 + (t3 - 2.0 * t2 + theta) * m0 +
           (-2.0 * t3 + 3.0 * t2) * x1 + (t3 - t2) * m1;
}

}  // namespace

Trajectory integrate_trajectory(const Scenario& sc, double x0,
                                std::span<const double> sample_times,
                                const IntegratorOptions& opt) {
    if (sample_times.empty()) throw std::invalid_argument("sample_times must not be empty");
    for (std::size_t i = 1; i < sample_times.size(); ++i)
        if (!(sample_times[i] > sample_times[i - 1]))
            throw std::invalid_argument("sample_times must be strictly increasing");
    if (opt.fixed_step && !(opt.max_step > 0.0))
        throw std::invalid_argument("fixed_step integration needs max_step > 0");

    const VelField field{sc, opt.node_eps};
    const double t_end = sample_times.back();

    Trajectory tr;
    tr.x0 = x0;
    tr.samples.reserve(sample_times.size());

    double t = sample_times.front();
    double x = x0;
    double v = 0.0;
    if (!field.eval(x, t, v)) {
        tr.status = TrajectoryStatus::stopped_at_node;
        return tr;
    }
    tr.samples.push_back({t, x, v});
    std::size_t next_sample = 1;

    if (sample_times.size() == 1) return tr;

    double h = (t_end - t) / 64.0;
    if (opt.max_step > 0.0) h = std::min(h, opt.max_step);
    if (opt.fixed_step) h = opt.max_step;

    while (t < t_end) {
        h = std::min(h, t_end - t);

        double x_big, x_half, x_new, v_mid;
        const bool ok = rk4_step(field, x, t, h, v, x_big) &&
                        rk4_step(field, x, t, 0.5 * h, v, x_half) &&
                        field.eval(x_half, t + 0.5 * h, v_mid) &&
                        rk4_step(field, x_half, t + 0.5 * h, 0.5 * h, v_mid, x_new);
        if (!ok) {
            // A stage landed on a node; try resolving it with a smaller step.
            if (!opt.fixed_step && 0.5 * h >= opt.min_step) {
                h *= 0.5;
                continue;
            }
            tr.status = TrajectoryStatus::stopped_at_node;
            return tr;
        }

        if (!opt.fixed_step) {
            const double err = std::abs(x_new - x_big) / 15.0;
            if (err > opt.tol) {
                const double shrink =
                    std::clamp(0.9 * std::pow(opt.tol / err, 0.2), 0.2, 1.0);
                h *= shrink;
                if (h < opt.min_step) {
                    tr.status = TrajectoryStatus::stopped_at_node;
                    return tr;
                }
                continue;
            }
            double grow = 5.0;
            if (err > 0.0) grow = std::min(grow, 0.9 * std::pow(opt.tol / err, 0.2));
            double h_next = h * std::max(grow, 1.0);
            if (opt.max_step > 0.0) h_next = std::min(h_next, opt.max_step);

            double v_end;
            if (!field.eval(x_new, t + h, v_end)) {
                tr.status = TrajectoryStatus::stopped_at_node;
                return tr;
            }
            // Dense output across the accepted step [t, t+h].
            while (next_sample < sample_times.size() && sample_times[next_sample] <= t + h) {
                const double ts = sample_times[next_sample];
                double xs, vs;
                if (ts == t + h) {
                    xs = x_new;
                    vs = v_end;
                } else {
                    const double theta = (ts - t) / h;
                    xs = hermite(theta, x, h * v, x_new, h * v_end);
                    if (!field.eval(xs, ts, vs)) {
                        tr.status = TrajectoryStatus::stopped_at_node;
                        return tr;
                    }
                }
                tr.samples.push_back({ts, xs, vs});
                ++next_sample;
            }
            t += h;
            x = x_new;
            v = v_end;
            h = h_next;
        } else {
            double v_end;
            if (!field.eval(x_new, t + h, v_end)) {
                tr.status = TrajectoryStatus::stopped_at_node;
                return tr;
            }
            while (next_sample < sample_times.size() && sample_times[next_sample] <= t + h) {
                const double ts = sample_times[next_sample];
                double xs, vs;
                if (ts == t + h) {
                    xs = x_new;
                    vs = v_end;
                } else {
                    const double theta = (ts - t) / h;
                    xs = hermite(theta, x, h * v, x_new, h * v_end);
                    if (!field.eval(xs, ts, vs)) {
                        tr.status = TrajectoryStatus::stopped_at_node;
                        return tr;
                    }
                }
                tr.samples.push_back({ts, xs, vs});
                ++next_sample;
            }
            t += h;
            x = x_new;
            v = v_end;
        }

        if (std::abs(x) > opt.x_limit) {
            tr.status = TrajectoryStatus::left_domain;
            return tr;
        }
    }
    tr.status = TrajectoryStatus::completed;
    return tr;
}

namespace {

// 53-bit uniform in [0, 1) from raw mt19937_64 words; independent of any
// standard-library distribution implementation.
double uniform01(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

double erf_cdf(double x, double x0, double sigma0) {
    return 0.5 * (1.0 + std::erf((x - x0) / (sigma0 * std::numbers::sqrt2)));
}

struct InitialCdf {
    const InitialState& st;
    const BoxGeometry& box;
    double lo = 0.0, hi = 0.0;

    InitialCdf(const InitialState& s, const BoxGeometry& b) : st(s), box(b) {
        if (const auto* f = std::get_if<FreeGaussian>(&st)) {
            lo = f->x0 - 10.0 * f->sigma0;
            hi = f->x0 + 10.0 * f->sigma0;
        } else {
            lo = 0.0;
            hi = box.length;
        }
    }

    double operator()(double x) const {
        if (const auto* e = std::get_if<Eigenstate>(&st)) {
            const double k = wavenumber(e->n, box);
            return (x - std::sin(2.0 * k * x) / (2.0 * k)) / box.length;
        }
        if (const auto* g = std::get_if<TruncatedGaussian>(&st)) {
            const double base = erf_cdf(0.0, g->x0, g->sigma0);
            const double top = erf_cdf(box.length, g->x0, g->sigma0);
            return (erf_cdf(x, g->x0, g->sigma0) - base) / (top - base);
        }
        const auto& f = std::get<FreeGaussian>(st);
        return erf_cdf(x, f.x0, f.sigma0);
    }

    double invert(double u) const {
        double a = lo, b = hi;
        for (int it = 0; it < 200 && b - a > 1e-15 * (std::abs(a) + std::abs(b) + 1.0); ++it) {
            const double mid = 0.5 * (a + b);
            if ((*this)(mid) < u) a = mid;
            else b = mid;
        }
        return 0.5 * (a + b);
    }
};

}  // namespace

std::vector<double> born_initial_positions(const InitialState& st, const BoxGeometry& box,
                                           int count, std::uint64_t seed) {
    if (count < 1) throw std::invalid_argument("count must be >= 1");
    const InitialCdf cdf(st, box);
    std::mt19937_64 gen(seed);
    std::vector<double> xs;
    xs.reserve(static_cast<std::size_t>(count));
    while (static_cast<int>(xs.size()) < count) {
        const double u = uniform01(gen);
        const double x = cdf.invert(u);
        if (std::norm(initial_wave(st, x, box)) < k_node_eps) continue;  // node; redraw
        xs.push_back(x);
    }
    return xs;
}

std::vector<double> quantile_initial_positions(const InitialState& st, const BoxGeometry& box,
                                               int count) {
    if (count < 1) throw std::invalid_argument("count must be >= 1");
    const InitialCdf cdf(st, box);
    std::vector<double> xs;
    xs.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) xs.push_back(cdf.invert((i + 0.5) / count));
    return xs;
}

Ensemble integrate_ensemble(const Scenario& sc, std::span<const double> starts,
                            std::span<const double> sample_times, const IntegratorOptions& opt,
                            Exec ex) {
    Ensemble ens;
    ens.trajectories.resize(starts.size());
    std::exception_ptr err = nullptr;
    if (ex == Exec::parallel && openmp_enabled()) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(starts.size()); ++i) {
            try {
                ens.trajectories[static_cast<std::size_t>(i)] =
                    integrate_trajectory(sc, starts[static_cast<std::size_t>(i)], sample_times, opt);
            } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
                err = std::current_exception();
            }
        }
    } else {
        for (std::size_t i = 0; i < starts.size(); ++i)
            ens.trajectories[i] = integrate_trajectory(sc, starts[i], sample_times, opt);
    }
    if (err) std::rethrow_exception(err);
    return ens;
}

namespace {

struct GroupVerdict {
    bool locked = false;
};

// Does this sign group's speed distribution cluster around a value above
// v_n/2? "Cluster" means the densest window of half-width v_n/4 holds at
// least 80% of the group.
GroupVerdict group_locked(std::vector<double>& speeds, double v_n) {
    GroupVerdict out;
    if (speeds.empty()) return out;
    std::sort(speeds.begin(), speeds.end());
    const double width = 0.5 * v_n;  // full window width = 2 * (v_n / 4)
    const std::size_t need =
        static_cast<std::size_t>(std::ceil(0.8 * static_cast<double>(speeds.size())));
    std::size_t jj = 0;
    for (std::size_t i = 0; i < speeds.size(); ++i) {
        if (jj < i) jj = i;
        while (jj + 1 < speeds.size() && speeds[jj + 1] <= speeds[i] + width) ++jj;
        const std::size_t cnt = jj - i + 1;
        if (cnt < need) continue;
        double mean = 0.0;
        for (std::size_t k = i; k <= jj; ++k) mean += speeds[k];
        mean /= static_cast<double>(cnt);
        if (mean > 0.5 * v_n) {
            out.locked = true;
            return out;
        }
    }
    return out;
}

}  // namespace

std::optional<double> bifurcation_time(const Ensemble& ens, double v_n) {
    if (ens.trajectories.empty()) return std::nullopt;
    std::size_t max_len = 0;
    for (const auto& tr : ens.trajectories) max_len = std::max(max_len, tr.samples.size());
    const std::size_t total = ens.trajectories.size();

    for (std::size_t si = 0; si < max_len; ++si) {
        std::vector<double> pos, neg;
        double t = 0.0;
        bool have_t = false;
        for (const auto& tr : ens.trajectories) {
            if (si >= tr.samples.size()) continue;
            const auto& s = tr.samples[si];
            t = s.t;
            have_t = true;
            if (s.v > 0.0) pos.push_back(s.v);
            else if (s.v < 0.0) neg.push_back(-s.v);
        }
        if (!have_t) break;
        const std::size_t quarter =
            static_cast<std::size_t>(std::ceil(0.25 * static_cast<double>(total)));
        if (pos.size() < quarter || neg.size() < quarter) continue;
        if (group_locked(pos, v_n).locked && group_locked(neg, v_n).locked) return t;
    }
    return std::nullopt;
}

}  // namespace qbox
