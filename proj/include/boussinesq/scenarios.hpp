#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "boussinesq/dispersion.hpp"
#include "boussinesq/grid.hpp"
#include "boussinesq/swe.hpp"

namespace boussinesq {

// Bottom profiles with the still-water surface at H = 0.8 m.
double dingemans_bathymetry(double x);
double spike_bathymetry(double x);
double cavity_bathymetry(double x);

enum class BathymetryKind { flat, dingemans, spike, cavity };

std::string_view to_string(BathymetryKind kind);
std::optional<BathymetryKind> parse_bathymetry_kind(std::string_view text);
double bathymetry_at(BathymetryKind kind, double x);

Bathymetry sample_bathymetry(const Grid& grid, BathymetryKind kind, double H);

/// Periodic moving average over [x_i - delta, x_i + delta], applied `passes` times.
Field mollify(const Grid& grid, FieldView b, double delta, int passes);

/// Positive root K of omega^2 = g K tanh(K d0).
double solve_wavenumber(double omega, double d0, double g);

struct WaveTrainSpec {
    double amplitude = 0.02;
    double period = 2.02 * 1.4142135623730951;
    int n_crests = 8;
    double center = -60.0;

    bool operator==(const WaveTrainSpec&) const = default;
};

/// Smooth envelope: 1 on the crest core, raised-cosine over one wavelength at each end.
double train_envelope(double x, double center, double wavelength, int n_crests);

/// Surface elevation s = A cos(K(x - c) + phase) env(x) and velocity
/// v = sqrt((g/K) tanh(K d0)) s / d0, superposed on still water. The carrier phase
/// puts exactly n_crests crests on the core. Throws GeometryError if the train's
/// support is not on flat bottom or does not fit in the domain.
State wave_train(const Grid& grid, const Bathymetry& bathy, double amplitude, double K, double d0, double g,
                 int n_crests, double center);

struct MollifySpec {
    double delta = 0.0;
    int passes = 0;

    bool operator==(const MollifySpec&) const = default;
};

/// Everything that defines one experiment apart from the grid spacing.
struct Scenario {
    std::string name;
    double x_left = -138.0;
    double x_right = 46.0;
    BathymetryKind bathymetry = BathymetryKind::flat;
    double H = 0.8;
    double g = standard_gravity;
    WaveTrainSpec train;
    std::vector<double> gauges;
    ParamSet params;
    DiffusionConfig diffusion{0.1, false};
    double cfl = 0.2;
    double t_end = 70.0;
    MollifySpec mollify;

    bool operator==(const Scenario&) const = default;
};

const std::vector<double>& dingemans_gauges_a();
const std::vector<double>& dingemans_gauges_b();

/// "dingemans", "spike" or "cavity".
std::optional<Scenario> builtin_scenario(std::string_view name);
std::vector<std::string> builtin_scenario_names();

/// Throws GeometryError when the scenario itself is inconsistent.
void validate(const Scenario& s);

/// Sampled (and, if requested, mollified) bottom for the scenario on `grid`.
Bathymetry scenario_bathymetry(const Scenario& s, const Grid& grid);

/// Wave train on still water. The carrier wavenumber solves the linear dispersion
/// relation for the train period on the local still-water depth at its center.
State initial_state(const Scenario& s, const Grid& grid, const Bathymetry& bathy);

struct GaugeSeries {
    std::vector<double> x;
    std::vector<double> t;
    std::vector<std::vector<double>> s;  ///< s[g][j]: gauge g at time t[j]

    explicit GaugeSeries(std::vector<double> locations = {});
    std::size_t gauge_count() const noexcept { return x.size(); }
};

/// Surface elevation d + b - H at x by linear interpolation between bracketing nodes.
double interpolate_surface(const Grid& grid, const State& state, const Bathymetry& bathy, double x);

/// Appends one sample per gauge at time t. Throws std::invalid_argument if t does not increase.
void sample_gauges(const Grid& grid, const State& state, const Bathymetry& bathy, GaugeSeries& series, double t);

}  // namespace boussinesq
