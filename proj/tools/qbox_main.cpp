// Command-line front end: evaluates densities, detector currents, Bohmian
// trajectories, and arrival-time distributions for a particle released from
// a one-dimensional box, writing CSV/JSON tables plus a run manifest.

#include "qbox/arrival.hpp"
#include "qbox/bohmian.hpp"
#include "qbox/config.hpp"
#include "qbox/observables.hpp"
#include "qbox/parallel.hpp"
#include "qbox/table_io.hpp"
#include "qbox/version.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace qbox;

namespace {

struct CommonArgs {
    std::string config;
    std::string state;
    double detector_x = 0.0;
    double t_start = 0.0;
    double t_max = 0.0;
    std::string grid_x;
    std::string grid_t;
    std::string out_dir = "out";
    std::string format = "csv";

    CLI::Option* o_state = nullptr;
    CLI::Option* o_detector = nullptr;
    CLI::Option* o_t_start = nullptr;
    CLI::Option* o_t_max = nullptr;
    CLI::Option* o_grid_x = nullptr;
    CLI::Option* o_grid_t = nullptr;
};

void add_common(CLI::App* cmd, CommonArgs& a) {
    cmd->add_option("--config", a.config, "Scenario file (key value per line)")
        ->check(CLI::ExistingFile);
    a.o_state = cmd->add_option("--state", a.state,
                                "Initial state: n:<k>, gaussian:<x0>,<sigma0>, or "
                                "free-gaussian:<x0>,<sigma0>");
    a.o_detector = cmd->add_option("--detector-x", a.detector_x, "Detector position [um]");
    a.o_t_start = cmd->add_option("--t-start", a.t_start, "Earliest evaluation time [ms]");
    a.o_t_max = cmd->add_option("--t-max", a.t_max, "Latest evaluation time [ms]");
    a.o_grid_x = cmd->add_option("--grid-x", a.grid_x, "Position grid min:max:count [um]");
    a.o_grid_t = cmd->add_option("--grid-t", a.grid_t, "Time grid min:max:count [ms]");
    cmd->add_option("--out", a.out_dir, "Output directory")->capture_default_str();
    cmd->add_option("--format", a.format, "Table format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
}

Scenario build_scenario(const CommonArgs& a) {
    Scenario sc = a.config.empty() ? Scenario{} : load_scenario_file(a.config);
    if (a.o_state->count() > 0) sc.state = parse_state_spec(a.state);
    if (a.o_detector->count() > 0) sc.detector_x = a.detector_x;
    if (a.o_t_start->count() > 0) sc.t_start = a.t_start;
    if (a.o_t_max->count() > 0) sc.t_max = a.t_max;
    if (a.o_grid_x->count() > 0) sc.x_grid = parse_grid_spec(a.grid_x);
    if (a.o_grid_t->count() > 0) sc.t_grid = parse_grid_spec(a.grid_t);
    return sc;
}

std::string grid_str(const GridSpec& g) {
    return format_double(g.min) + ":" + format_double(g.max) + ":" + std::to_string(g.count);
}

json scenario_json(const Scenario& sc) {
    return json{{"mass_kg", sc.constants.mass},
                {"box_length_um", sc.box.length},
                {"state", describe_state(sc.state)},
                {"detector_x_um", sc.detector_x},
                {"t_start_ms", sc.t_start},
                {"t_max_ms", sc.t_max},
                {"grid_x", grid_str(sc.x_grid)},
                {"grid_t", grid_str(sc.t_grid)}};
}

void write_manifest(const fs::path& dir, json manifest) {
    manifest["version"] = k_version;
    write_text_file(dir / "run.json", manifest.dump(2) + "\n");
}

// Time samples for dynamic quantities: the scenario's time grid, but never
// before t_start (the wave is only evaluated after release).
std::vector<double> time_samples(const Scenario& sc) {
    std::vector<double> t;
    for (double v : sc.t_grid.points())
        if (v >= sc.t_start) t.push_back(v);
    if (t.empty()) throw std::runtime_error("time grid has no points at or after t_start");
    return t;
}

int run_density(const CommonArgs& a) {
    const Scenario sc = build_scenario(a);
    const auto xs = sc.x_grid.points();
    const auto ts = time_samples(sc);
    const fs::path dir(a.out_dir);
    fs::create_directories(dir);

    std::vector<std::vector<double>> rho(ts.size());
    for (std::size_t k = 0; k < ts.size(); ++k) {
        const auto line = wave_line(sc, xs, ts[k], Exec::parallel);
        rho[k].reserve(xs.size());
        for (const auto& w : line) rho[k].push_back(density(w));
    }

    std::string out_name;
    if (a.format == "csv") {
        out_name = "density.csv";
        std::vector<std::string> header{"x_um"};
        for (double t : ts) header.push_back("t=" + format_double(t) + "ms");
        std::vector<std::vector<std::string>> rows;
        rows.reserve(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) {
            std::vector<std::string> row{format_double(xs[i])};
            for (std::size_t k = 0; k < ts.size(); ++k) row.push_back(format_double(rho[k][i]));
            rows.push_back(std::move(row));
        }
        write_csv(dir / out_name, header, rows);
    } else {
        out_name = "density.json";
        write_text_file(dir / out_name,
                        json{{"x_um", xs}, {"t_ms", ts}, {"density", rho}}.dump(2) + "\n");
    }

    write_manifest(dir, json{{"command", "density"},
                             {"scenario", scenario_json(sc)},
                             {"outputs", json::array({out_name})}});
    return 0;
}

int run_current(const CommonArgs& a) {
    const Scenario sc = build_scenario(a);
    const auto ts = time_samples(sc);
    const fs::path dir(a.out_dir);
    fs::create_directories(dir);

    const auto cs = current_series(sc, sc.detector_x, ts, Exec::parallel);

    std::string out_name;
    if (a.format == "csv") {
        out_name = "current.csv";
        std::vector<std::vector<std::string>> rows;
        rows.reserve(ts.size());
        for (std::size_t i = 0; i < ts.size(); ++i)
            rows.push_back({format_double(cs.t[i]), format_double(cs.j[i])});
        write_csv(dir / out_name, {"t_ms", "j_per_ms"}, rows);
    } else {
        out_name = "current.json";
        write_text_file(dir / out_name,
                        json{{"detector_x_um", cs.detector_x}, {"t_ms", cs.t}, {"j_per_ms", cs.j}}
                                .dump(2) +
                            "\n");
    }

    write_manifest(dir, json{{"command", "current"},
                             {"scenario", scenario_json(sc)},
                             {"outputs", json::array({out_name})}});
    return 0;
}

int run_trajectories(const CommonArgs& a, int count, const std::string& mode,
                     std::uint64_t seed) {
    const Scenario sc = build_scenario(a);
    const auto ts = time_samples(sc);
    const fs::path dir(a.out_dir);
    fs::create_directories(dir);

    const std::vector<double> starts =
        mode == "born" ? born_initial_positions(sc.state, sc.box, count, seed)
                       : quantile_initial_positions(sc.state, sc.box, count);
    const Ensemble ens = integrate_ensemble(sc, starts, ts, {}, Exec::parallel);

    std::string out_name;
    if (a.format == "csv") {
        out_name = "trajectories.csv";
        std::vector<std::vector<std::string>> rows;
        for (std::size_t id = 0; id < ens.trajectories.size(); ++id) {
            const auto& tr = ens.trajectories[id];
            for (const auto& s : tr.samples)
                rows.push_back({std::to_string(id), format_double(s.t), format_double(s.x),
                                format_double(s.v), std::string(to_string(tr.status))});
        }
        write_csv(dir / out_name, {"trajectory_id", "t_ms", "x_um", "v_um_per_ms", "status"},
                  rows);
    } else {
        out_name = "trajectories.json";
        json arr = json::array();
        for (std::size_t id = 0; id < ens.trajectories.size(); ++id) {
            const auto& tr = ens.trajectories[id];
            json item{{"trajectory_id", id},
                      {"x0_um", tr.x0},
                      {"status", to_string(tr.status)}};
            json t = json::array(), x = json::array(), v = json::array();
            for (const auto& s : tr.samples) {
                t.push_back(s.t);
                x.push_back(s.x);
                v.push_back(s.v);
            }
            item["t_ms"] = std::move(t);
            item["x_um"] = std::move(x);
            item["v_um_per_ms"] = std::move(v);
            arr.push_back(std::move(item));
        }
        write_text_file(dir / out_name, arr.dump(2) + "\n");
    }

    write_manifest(dir, json{{"command", "trajectories"},
                             {"scenario", scenario_json(sc)},
                             {"count", count},
                             {"mode", mode},
                             {"seed", seed},
                             {"outputs", json::array({out_name})}});
    return 0;
}

json arrival_summary_entry(const Scenario& sc, const std::string& method,
                           const ArrivalDistribution& dist) {
    json e{{"state", describe_state(sc.state)},
           {"method", method},
           {"mean_ms", dist.mean}};
    if (dist.detection_prob)
        e["detection_probability"] = *dist.detection_prob;
    else
        e["detection_probability"] = nullptr;
    return e;
}

void write_arrival_table(const fs::path& dir, const std::string& name, const std::string& format,
                         const ArrivalDistribution& dist, std::vector<std::string>& outputs) {
    if (format == "csv") {
        const std::string out_name = name + ".csv";
        std::vector<std::vector<std::string>> rows;
        rows.reserve(dist.t.size());
        for (std::size_t i = 0; i < dist.t.size(); ++i)
            rows.push_back({format_double(dist.t[i]), format_double(dist.pi[i])});
        write_csv(dir / out_name, {"t_ms", "pi_per_ms"}, rows);
        outputs.push_back(out_name);
    } else {
        const std::string out_name = name + ".json";
        write_text_file(dir / out_name,
                        json{{"t_ms", dist.t}, {"pi_per_ms", dist.pi}}.dump(2) + "\n");
        outputs.push_back(out_name);
    }
}

int run_arrival(const CommonArgs& a, const std::string& method, const std::vector<int>& n_list) {
    Scenario sc = build_scenario(a);
    const auto ts = time_samples(sc);
    const fs::path dir(a.out_dir);
    fs::create_directories(dir);

    auto distribution = [&](const Scenario& s) {
        const auto cs = current_series(s, s.detector_x, ts, Exec::parallel);
        return method == "cutoff" ? arrival_cutoff(cs) : arrival_leavens(cs);
    };

    std::vector<std::string> outputs;
    json summary = json::array();
    if (n_list.empty()) {
        const auto dist = distribution(sc);
        write_arrival_table(dir, "arrival", a.format, dist, outputs);
        summary.push_back(arrival_summary_entry(sc, method, dist));
    } else {
        for (int n : n_list) {
            Scenario sn = sc;
            sn.state = Eigenstate{n};
            const auto report = validate(sn);
            if (!report.ok())
                throw std::invalid_argument("invalid --n-list entry " + std::to_string(n));
            const auto dist = distribution(sn);
            write_arrival_table(dir, "arrival_n" + std::to_string(n), a.format, dist, outputs);
            json e = arrival_summary_entry(sn, method, dist);
            e["n"] = n;
            summary.push_back(std::move(e));
        }
    }
    write_text_file(dir / "arrival_summary.json", summary.dump(2) + "\n");
    outputs.push_back("arrival_summary.json");

    json manifest{{"command", "arrival"},
                  {"scenario", scenario_json(sc)},
                  {"method", method},
                  {"outputs", outputs}};
    if (!n_list.empty()) manifest["n_list"] = n_list;
    write_manifest(dir, manifest);
    return 0;
}

int check_scenario(const Scenario& sc) {
    const auto report = validate(sc);
    for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
    if (!report.ok()) {
        for (const auto& e : report.errors) std::cerr << "error: " << e << "\n";
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Free evolution of a particle released from a 1-D box: densities, currents, "
                 "Bohmian trajectories, and arrival-time distributions."};
    app.set_version_flag("--version", std::string(k_version));
    app.require_subcommand(1);

    CommonArgs cd, cc, ct, ca;
    CLI::App* density = app.add_subcommand("density", "Probability density over the x/t grids");
    add_common(density, cd);
    CLI::App* current = app.add_subcommand("current", "Probability current at the detector");
    add_common(current, cc);

    CLI::App* traj = app.add_subcommand("trajectories", "Bohmian trajectory ensemble");
    add_common(traj, ct);
    int count = 16;
    std::string mode = "quantile";
    std::uint64_t seed = 20240817;
    traj->add_option("--count", count, "Number of trajectories")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    traj->add_option("--mode", mode, "Initial-position sampling")
        ->check(CLI::IsMember({"quantile", "born"}))
        ->capture_default_str();
    traj->add_option("--seed", seed, "Seed for born sampling")->capture_default_str();

    CLI::App* arrival = app.add_subcommand("arrival", "Arrival-time distribution at the detector");
    add_common(arrival, ca);
    std::string method = "cutoff";
    std::vector<int> n_list;
    arrival->add_option("--method", method, "Arrival-time rule")
        ->check(CLI::IsMember({"leavens", "cutoff"}))
        ->capture_default_str();
    arrival->add_option("--n-list", n_list, "Comma-separated eigenstate sweep")->delimiter(',');

    CLI11_PARSE(app, argc, argv);

    try {
        if (density->parsed()) {
            const Scenario sc = build_scenario(cd);
            if (int rc = check_scenario(sc)) return rc;
            return run_density(cd);
        }
        if (current->parsed()) {
            const Scenario sc = build_scenario(cc);
            if (int rc = check_scenario(sc)) return rc;
            return run_current(cc);
        }
        if (traj->parsed()) {
            const Scenario sc = build_scenario(ct);
            if (int rc = check_scenario(sc)) return rc;
            return run_trajectories(ct, count, mode, seed);
        }
        const Scenario sc = build_scenario(ca);
        if (int rc = check_scenario(sc)) return rc;
        return run_arrival(ca, method, n_list);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
