#pragma once

#include "boussinesq/banded.hpp"
#include "boussinesq/dispersion.hpp"
#include "boussinesq/grid.hpp"

namespace boussinesq {

/// Depth-dependent dispersive coefficients evaluated pointwise at the nodes.
struct DispersiveCoeffs {
    Field alpha_hat;
    Field beta_hat;
    Field gamma_hat;

    bool alpha_vanishes() const;
};

/// alpha_hat = sqrt(a sqrt(g h) h^2), beta_hat = b h^3, gamma_hat = c sqrt(g h) h^3 with
/// h the still-water depth. Throws NegativeParameter if a < 0 or b < 0.
DispersiveCoeffs build_coeffs(const Bathymetry& bathy, double g, const ParamSet& params);

DispersiveCoeffs zero_coeffs(std::size_t n);

/// 1/2 (D-(a D+(a D-(d+b))) + D+(a D-(a D+(d+b)))), a = alpha_hat.
Field d3_d(const Grid& grid, const DispersiveCoeffs& c, FieldView d, FieldView b);

/// 1/2 (D-(vbar_{i-1/2} a D+(a D-(d+b))) + D+(vbar_{i+1/2} a D-(a D+(d+b)))).
Field d3_P(const Grid& grid, const DispersiveCoeffs& c, FieldView v, FieldView d, FieldView b);

/// 1/2 D-(beta_hat D+ v) + 1/2 D+(beta_hat D- v), the operator under the time derivative.
Field apply_L_beta(const Grid& grid, const DispersiveCoeffs& c, FieldView v);

/// 1/2 D+(gamma_hat D- D+ v) + 1/2 D- D+(gamma_hat D- v). Skew-adjoint on periodic grids.
Field apply_L_gamma(const Grid& grid, const DispersiveCoeffs& c, FieldView v);

enum class DispersiveOperator { beta, gamma };

/// Stencil of L_beta (bandwidth 1) or L_gamma (bandwidth 2) as a cyclic banded matrix.
CyclicBandedMatrix matrix_of(DispersiveOperator op, const DispersiveCoeffs& c, const Grid& grid);

}  // namespace boussinesq
