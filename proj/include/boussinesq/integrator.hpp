#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "boussinesq/banded.hpp"
#include "boussinesq/dispersive.hpp"
#include "boussinesq/scenarios.hpp"
#include "boussinesq/swe.hpp"

namespace boussinesq {

/// Everything the spatial discretisation needs, with the two dispersive
/// operators assembled once.
class Model {
public:
    Model(Grid grid, Bathymetry bathy, DispersiveCoeffs coeffs, DiffusionConfig diffusion,
          double g = standard_gravity);

    static Model from_scenario(const Scenario& s, double h);

    const Grid& grid() const noexcept { return grid_; }
    const Bathymetry& bathymetry() const noexcept { return bathy_; }
    const DispersiveCoeffs& coeffs() const noexcept { return coeffs_; }
    const DiffusionConfig& diffusion() const noexcept { return diffusion_; }
    double gravity() const noexcept { return g_; }
    const CyclicBandedMatrix& L_beta() const noexcept { return L_beta_; }
    const CyclicBandedMatrix& L_gamma() const noexcept { return L_gamma_; }

private:
    Grid grid_;
    Bathymetry bathy_;
    DispersiveCoeffs coeffs_;
    DiffusionConfig diffusion_;
    double g_;
    CyclicBandedMatrix L_beta_;
    CyclicBandedMatrix L_gamma_;
};

/// Time derivatives of (d, P) of the full semi-discrete model. The momentum
/// equation carries L_beta v_t, so every call solves (diag(d) - L_beta) v_t = r.
Tendency semi_discrete_rhs(const Model& model, const State& state);

/// E = sum h U_i + h/4 sum beta_hat_i ((D+ v_i)^2 + (D- v_i)^2).
double modified_energy(const Grid& grid, const State& state, const Bathymetry& bathy,
                       const DispersiveCoeffs& coeffs, double g);
double modified_energy(const Model& model, const State& state);

/// dE/dt for the given tendency, contracted through the chain rule.
double energy_rate(const Model& model, const State& state, const Tendency& rate);

double total_mass(const Grid& grid, const State& state);

/// Classical RK4 on semi_discrete_rhs. Test-grade: no stability control.
State reference_step_rk4(const Model& model, const State& state, double dt);

/// One step of the semi-implicit scheme: the shallow-water part and the beta term
/// explicit, the gamma term implicit. Throws AlphaNotZero unless every alpha_hat vanishes.
State imex_step(const Model& model, const State& state, double dt);

struct StepReport {
    double t = 0.0;
    double dt = 0.0;
    double energy = 0.0;
    double min_depth = 0.0;
    double max_abs_v = 0.0;
};

enum class Stepper { imex, rk4 };

struct RunOptions {
    double cfl = 0.2;
    double t_end = 0.0;
    std::vector<double> snapshot_times;
    Stepper stepper = Stepper::imex;
    /// Called after every step; return false to stop early.
    std::function<bool(const StepReport&, const State&)> on_step;
};

struct Snapshot {
    double requested_t;
    double t;
    State state;
};

struct RunResult {
    State final_state;
    std::vector<StepReport> reports;  ///< reports[0] describes the initial state
    GaugeSeries gauges;
    std::vector<Snapshot> snapshots;
    std::size_t steps = 0;
    double initial_mass = 0.0;
    double final_mass = 0.0;
};

/// Integrates with constant dt = cfl h for ceil(t_end/dt) steps, sampling gauges
/// after every step. A snapshot is taken at the first step whose time reaches each
/// requested time. Throws BlowUp on NaN or nonpositive depth.
RunResult run(const Model& model, State initial, const std::vector<double>& gauges, const RunOptions& options);

}  // namespace boussinesq
