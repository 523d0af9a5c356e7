#pragma once

#include "qbox/scenario.hpp"

#include <map>
#include <string>

namespace qbox {

// Parses "n:7", "gaussian:<x0>,<sigma0>" or "free-gaussian:<x0>,<sigma0>".
// Throws std::invalid_argument on malformed input.
InitialState parse_state_spec(const std::string& spec);

// Parses "<min>:<max>:<count>".
GridSpec parse_grid_spec(const std::string& spec);

// Strict double parser: the whole token must be consumed.
double parse_double(const std::string& token, const std::string& what);

// Flat key = value scenario files; '#' starts a comment, blank lines are
// skipped. Recognized keys: mass_kg, box_length_um, state, detector_x_um,
// t_start_ms, t_max_ms, grid_x, grid_t. Unknown or duplicate keys throw.
Scenario scenario_from_keys(const std::map<std::string, std::string>& kv);
Scenario load_scenario_file(const std::string& path);

}  // namespace qbox
