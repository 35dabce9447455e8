#pragma once

#include <utility>

#include "boussinesq/grid.hpp"

namespace boussinesq {

inline constexpr double standard_gravity = 9.81;

/// Artificial diffusion coefficient lambda_{i+1/2}.
///
/// The constant floor is used everywhere; in adaptive mode each interface takes
/// max(lambda0, |Delta+ v_i| / 4), which removes the local anti-diffusion of the
/// entropy-conservative continuity flux.
struct DiffusionConfig {
    double lambda0 = 0.0;
    bool adaptive = false;

    bool operator==(const DiffusionConfig&) const = default;
};

/// Time derivatives (or residuals) of the two conserved fields.
struct Tendency {
    Field d;
    Field P;
};

/// Interface fluxes at x_{i+1/2}, stored at index i.
struct InterfaceFluxes {
    Field P;
    Field Q;
};

/// Entropy (mechanical energy) density U = P^2/(2d) + g d^2/2 + g d b.
Field entropy_density(const State& state, const Bathymetry& bathy, double g);
/// Physical entropy flux F = P^3/(2d^2) + g d P + g P b.
Field entropy_flux(const State& state, const Bathymetry& bathy, double g);
/// w1 = g(d+b) - P^2/(2d^2), w2 = P/d.
std::pair<Field, Field> entropy_variables(const State& state, const Bathymetry& bathy, double g);

/// Two-point entropy-conservative flux (dbar vbar, dbar vbar^2 + g mean(d^2)/2).
std::pair<double, double> ec_flux(double d_i, double d_ip1, double v_i, double v_ip1, double g);

/// Entropy-conservative fluxes at every interface.
InterfaceFluxes ec_fluxes(FieldView d, FieldView v, double g);

/// g/2 (dbar_{i+1/2} D+ b_i + dbar_{i-1/2} D- b_i).
Field bathy_source(const Grid& grid, FieldView d, FieldView b, double g);

/// lambda_{i+1/2} for the given velocity field.
Field interface_lambda(FieldView v, const DiffusionConfig& cfg);

/// Fluxes of the artificial diffusion at each interface:
/// (lambda Delta+(d+b), lambda vbar Delta+(d+b) + lambda dbar Delta+ v).
InterfaceFluxes diffusion_fluxes(const State& state, const Bathymetry& bathy, const DiffusionConfig& cfg);

/// D- of the diffusion fluxes, i.e. the right-hand side contribution of the
/// artificial diffusion to the d and P equations.
Tendency artificial_diffusion_rhs(const Grid& grid, const State& state, const Bathymetry& bathy,
                                  const DiffusionConfig& cfg);

/// Entropy production of the diffusion at each interface, obtained by contracting
/// the diffusion fluxes with Delta+ w. Nonpositive for every admissible state.
Field diffusion_entropy_production(const State& state, const Bathymetry& bathy,
                                   const DiffusionConfig& cfg, double g);

/// Diffused fluxes P~ = P - lambda Delta+(d+b) and Q~ = Q - lambda vbar Delta+(d+b) - lambda dbar Delta+ v.
InterfaceFluxes diffused_fluxes(const State& state, const Bathymetry& bathy, const DiffusionConfig& cfg,
                                double g);

/// Shallow-water part of the semi-discrete scheme.
///
/// Returns d_t = -D- P~ and the momentum residual -D- Q~ - bathy_source. Throws
/// NonpositiveDepth.
Tendency swe_rhs(const Grid& grid, const State& state, const Bathymetry& bathy, const DiffusionConfig& cfg,
                 double g);

/// Numerical entropy flux F_{i+1/2} at every interface.
Field numerical_entropy_flux(const State& state, const Bathymetry& bathy, double g);

struct ShuffleCheck {
    Field residual;   ///< LHS - RHS of the entropy-conservation condition per interface
    double max_term;  ///< largest magnitude among the individual terms
};

/// Checks 1/2 Dw1 P + 1/2 Dw2 Q - g/2 vbar dbar Db = 1/2 DPsi at every interface.
ShuffleCheck shuffle_check(const State& state, const Bathymetry& bathy, double g);

}  // namespace boussinesq
