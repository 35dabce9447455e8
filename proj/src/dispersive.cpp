#include "boussinesq/dispersive.hpp"

#include <algorithm>
#include <cmath>

#include "boussinesq/errors.hpp"

namespace boussinesq {

bool DispersiveCoeffs::alpha_vanishes() const {
    return std::all_of(alpha_hat.begin(), alpha_hat.end(), [](double a) { return a == 0.0; });
}

DispersiveCoeffs build_coeffs(const Bathymetry& bathy, double g, const ParamSet& params) {
    if (params.alpha_t < 0.0)
        throw NegativeParameter("alpha~ must be nonnegative on variable bathymetry (got " +
                                std::to_string(params.alpha_t) + ")");
    if (params.beta_t < 0.0)
        throw NegativeParameter("beta~ must be nonnegative (got " + std::to_string(params.beta_t) + ")");
    const Field hs = bathy.still_depth();
    const std::size_t n = hs.size();
    DispersiveCoeffs c{Field(n), Field(n), Field(n)};
    for (std::size_t i = 0; i < n; ++i) {
        const double h = hs[i];
        if (h < 0.0) throw GeometryError("still-water depth is negative at node " + std::to_string(i));
        const double c0 = std::sqrt(g * h);
        c.alpha_hat[i] = std::sqrt(params.alpha_t * c0 * h * h);
        c.beta_hat[i] = params.beta_t * h * h * h;
        c.gamma_hat[i] = params.gamma_t * c0 * h * h * h;
    }
    return c;
}

DispersiveCoeffs zero_coeffs(std::size_t n) { return {Field(n, 0.0), Field(n, 0.0), Field(n, 0.0)}; }

Field d3_d(const Grid& grid, const DispersiveCoeffs& c, FieldView d, FieldView b) {
    const double h = grid.h();
    const Field& a = c.alpha_hat;
    const Field eta = Field(d.begin(), d.end()) + Field(b.begin(), b.end());
    const Field left = d_minus(hadamard(a, d_plus(hadamard(a, d_minus(eta, h)), h)), h);
    const Field right = d_plus(hadamard(a, d_minus(hadamard(a, d_plus(eta, h)), h)), h);
    Field out(d.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = 0.5 * (left[i] + right[i]);
    return out;
}

Field d3_P(const Grid& grid, const DispersiveCoeffs& c, FieldView v, FieldView d, FieldView b) {
    const double h = grid.h();
    const std::size_t n = d.size();
    const Field& a = c.alpha_hat;
    const Field eta = Field(d.begin(), d.end()) + Field(b.begin(), b.end());
    const Field vbar = mean(v);  // vbar_{i+1/2} at index i

    Field inner_left = hadamard(a, d_plus(hadamard(a, d_minus(eta, h)), h));
    Field inner_right = hadamard(a, d_minus(hadamard(a, d_plus(eta, h)), h));
    for (std::size_t i = 0; i < n; ++i) {
        inner_left[i] *= vbar[grid.prev(i)];
        inner_right[i] *= vbar[i];
    }
    const Field left = d_minus(inner_left, h);
    const Field right = d_plus(inner_right, h);
    Field out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = 0.5 * (left[i] + right[i]);
    return out;
}

Field apply_L_beta(const Grid& grid, const DispersiveCoeffs& c, FieldView v) {
    const double h = grid.h();
    const Field left = d_minus(hadamard(c.beta_hat, d_plus(v, h)), h);
    const Field right = d_plus(hadamard(c.beta_hat, d_minus(v, h)), h);
    Field out(v.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = 0.5 * left[i] + 0.5 * right[i];
    return out;
}

Field apply_L_gamma(const Grid& grid, const DispersiveCoeffs& c, FieldView v) {
    const double h = grid.h();
    const Field first = d_plus(hadamard(c.gamma_hat, d2(v, h)), h);
    const Field second = d2(hadamard(c.gamma_hat, d_minus(v, h)), h);
    Field out(v.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = 0.5 * first[i] + 0.5 * second[i];
    return out;
}

CyclicBandedMatrix matrix_of(DispersiveOperator op, const DispersiveCoeffs& c, const Grid& grid) {
    const std::size_t n = grid.size();
    const double h = grid.h();
    if (op == DispersiveOperator::beta) {
        const Field& bh = c.beta_hat;
        const double s = 1.0 / (2.0 * h * h);
        CyclicBandedMatrix A(n, 1);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t ip = grid.next(i), im = grid.prev(i);
            A.at(i, 1) = s * (bh[i] + bh[ip]);
            A.at(i, -1) = s * (bh[im] + bh[i]);
            A.at(i, 0) = -s * (bh[im] + 2.0 * bh[i] + bh[ip]);
        }
        return A;
    }
    const Field& gh = c.gamma_hat;
    const double s = 1.0 / (2.0 * h * h * h);
    CyclicBandedMatrix A(n, 2);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t ip = grid.next(i), im = grid.prev(i);
        A.at(i, 2) = s * gh[ip];
        A.at(i, 1) = -s * (gh[ip] + gh[i]);
        A.at(i, 0) = 0.0;
        A.at(i, -1) = s * (gh[i] + gh[im]);
        A.at(i, -2) = -s * gh[im];
    }
    return A;
}

}  // namespace boussinesq
