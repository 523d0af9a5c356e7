#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

// Unit system used throughout the library: lengths in micrometers (um),
// times in milliseconds (ms), masses in kilograms (kg).
// Energies are then kg um^2 / ms^2 and hbar is kg um^2 / ms.

namespace qbox {

inline constexpr double k_hbar = 1.054571817e-25;   // kg um^2 / ms
inline constexpr double k_default_mass = 1.42e-25;  // kg (heavy alkali atom)

struct PhysicalConstants {
    double hbar = k_hbar;
    double mass = k_default_mass;
};

struct BoxGeometry {
    double length = 1.0;  // um, box occupies [0, length]
};

// Initial state inside the box at the moment the walls are removed (t = 0).
struct Eigenstate {
    int n = 1;  // quantum number, n >= 1
};

// Gaussian restricted to the box interior and renormalized there.
struct TruncatedGaussian {
    double x0 = 0.5;      // center, um
    double sigma0 = 0.25; // width of |psi|^2, um
};

// Free-space Gaussian with no box at all; comparison mode for trajectories
// and arrival statistics.
struct FreeGaussian {
    double x0 = 0.5;
    double sigma0 = 0.25;
};

using InitialState = std::variant<Eigenstate, TruncatedGaussian, FreeGaussian>;

struct GridSpec {
    double min = 0.0;
    double max = 1.0;
    int count = 2;

    std::vector<double> points() const;
};

struct Scenario {
    PhysicalConstants constants;
    BoxGeometry box;
    InitialState state = Eigenstate{1};
    double detector_x = 2.0;  // um
    double t_start = 1e-6;    // ms, first time evaluated after release
    double t_max = 0.6;       // ms
    GridSpec x_grid{-1.0, 3.0, 401};
    GridSpec t_grid{1e-6, 0.6, 601};
};

// k_n = n pi / L
double wavenumber(int n, const BoxGeometry& box);

// Time for a classical particle with the eigenstate speed hbar k_n / m to
// cross half the box: t_n = m L^2 / (2 n pi hbar).
double semiclassical_time(int n, const Scenario& sc);

struct ValidationReport {
    std::vector<std::string> errors;
    std::vector<std::string> warnings;
    bool ok() const { return errors.empty(); }
};

ValidationReport validate(const Scenario& sc);

// Compact state spelling used by config files and the CLI:
// "n:7", "gaussian:0.5,0.25", "free-gaussian:0.5,0.25".
std::string describe_state(const InitialState& st);

}  // namespace qbox
