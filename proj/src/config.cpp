#include "qbox/config.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

namespace qbox {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

int parse_int(const std::string& token, const std::string& what) {
    int v = 0;
    const char* first = token.data();
    const char* last = first + token.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last)
        throw std::invalid_argument("bad integer for " + what + ": '" + token + "'");
    return v;
}

}  // namespace

double parse_double(const std::string& token, const std::string& what) {
    double v = 0.0;
    const char* first = token.data();
    const char* last = first + token.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last)
        throw std::invalid_argument("bad number for " + what + ": '" + token + "'");
    return v;
}

InitialState parse_state_spec(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("state spec needs '<kind>:<params>', got '" + spec + "'");
    const std::string kind = spec.substr(0, colon);
    const std::string rest = spec.substr(colon + 1);
    if (kind == "n") {
        const int n = parse_int(rest, "eigenstate index");
        if (n < 1) throw std::invalid_argument("eigenstate index must be >= 1");
        return Eigenstate{n};
    }
    if (kind == "gaussian" || kind == "free-gaussian") {
        const auto comma = rest.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("gaussian state needs '<x0>,<sigma0>', got '" + rest + "'");
        const double x0 = parse_double(rest.substr(0, comma), "gaussian center");
        const double s0 = parse_double(rest.substr(comma + 1), "gaussian width");
        if (kind == "gaussian") return TruncatedGaussian{x0, s0};
        return FreeGaussian{x0, s0};
    }
    throw std::invalid_argument("unknown state kind '" + kind + "' (want n, gaussian, free-gaussian)");
}

GridSpec parse_grid_spec(const std::string& spec) {
    const auto c1 = spec.find(':');
    const auto c2 = (c1 == std::string::npos) ? std::string::npos : spec.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw std::invalid_argument("grid spec needs '<min>:<max>:<count>', got '" + spec + "'");
    GridSpec g;
    g.min = parse_double(trim(spec.substr(0, c1)), "grid min");
    g.max = parse_double(trim(spec.substr(c1 + 1, c2 - c1 - 1)), "grid max");
    g.count = parse_int(trim(spec.substr(c2 + 1)), "grid count");
    if (g.count < 1) throw std::invalid_argument("grid count must be >= 1");
    return g;
}

Scenario scenario_from_keys(const std::map<std::string, std::string>& kv) {
    Scenario sc;
    for (const auto& [key, value] : kv) {
        if (key == "mass_kg") sc.constants.mass = parse_double(value, key);
        else if (key == "box_length_um") sc.box.length = parse_double(value, key);
        else if (key == "state") sc.state = parse_state_spec(value);
        else if (key == "detector_x_um") sc.detector_x = parse_double(value, key);
        else if (key == "t_start_ms") sc.t_start = parse_double(value, key);
        else if (key == "t_max_ms") sc.t_max = parse_double(value, key);
        else if (key == "grid_x") sc.x_grid = parse_grid_spec(value);
        else if (key == "grid_t") sc.t_grid = parse_grid_spec(value);
        else throw std::invalid_argument("unknown config key '" + key + "'");
    }
    return sc;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                        ": expected 'key = value'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty() || value.empty())
            throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                        ": empty key or value");
        if (!kv.emplace(key, value).second)
            throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                        ": duplicate key '" + key + "'");
    }
    return scenario_from_keys(kv);
}

}  // namespace qbox
