#include "boussinesq/swe.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace boussinesq {

namespace {

Field surface(const State& state, const Bathymetry& bathy) { return state.d + bathy.b; }

}  // namespace

Field entropy_density(const State& state, const Bathymetry& bathy, double g) {
    require_positive_depth(state.d);
    Field U(state.size());
    for (std::size_t i = 0; i < U.size(); ++i) {
        const double d = state.d[i];
        const double P = state.P[i];
        U[i] = 0.5 * P * P / d + 0.5 * g * d * d + g * d * bathy.b[i];
    }
    return U;
}

Field entropy_flux(const State& state, const Bathymetry& bathy, double g) {
    require_positive_depth(state.d);
    Field F(state.size());
    for (std::size_t i = 0; i < F.size(); ++i) {
        const double d = state.d[i];
        const double P = state.P[i];
        F[i] = 0.5 * P * P * P / (d * d) + g * d * P + g * P * bathy.b[i];
    }
    return F;
}

std::pair<Field, Field> entropy_variables(const State& state, const Bathymetry& bathy, double g) {
    require_positive_depth(state.d);
    const std::size_t n = state.size();
    Field w1(n), w2(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double d = state.d[i];
        const double P = state.P[i];
        w1[i] = g * (d + bathy.b[i]) - P * P / (2.0 * d * d);
        w2[i] = P / d;
    }
    return {std::move(w1), std::move(w2)};
}

std::pair<double, double> ec_flux(double d_i, double d_ip1, double v_i, double v_ip1, double g) {
    const double dbar = 0.5 * (d_i + d_ip1);
    const double vbar = 0.5 * (v_i + v_ip1);
    const double d2bar = 0.5 * (d_i * d_i + d_ip1 * d_ip1);
    return {dbar * vbar, dbar * vbar * vbar + 0.5 * g * d2bar};
}

InterfaceFluxes ec_fluxes(FieldView d, FieldView v, double g) {
    const std::size_t n = d.size();
    InterfaceFluxes f{Field(n), Field(n)};
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = i + 1 == n ? 0 : i + 1;
        std::tie(f.P[i], f.Q[i]) = ec_flux(d[i], d[j], v[i], v[j], g);
    }
    return f;
}

Field bathy_source(const Grid& grid, FieldView d, FieldView b, double g) {
    const Field dbar = mean(d);
    const Field db = d_plus(b, grid.h());
    const std::size_t n = d.size();
    Field s(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t im = grid.prev(i);
        // D- b_i = D+ b_{i-1}
        s[i] = 0.5 * g * (dbar[i] * db[i] + dbar[im] * db[im]);
    }
    return s;
}

Field interface_lambda(FieldView v, const DiffusionConfig& cfg) {
    Field lambda(v.size(), cfg.lambda0);
    if (cfg.adaptive) {
        const Field dv = delta_plus(v);
        for (std::size_t i = 0; i < lambda.size(); ++i)
            lambda[i] = std::max(cfg.lambda0, 0.25 * std::abs(dv[i]));
    }
    return lambda;
}

InterfaceFluxes diffusion_fluxes(const State& state, const Bathymetry& bathy, const DiffusionConfig& cfg) {
    const Field v = state.velocity();
    const Field lambda = interface_lambda(v, cfg);
    const Field deta = delta_plus(surface(state, bathy));
    const Field dv = delta_plus(v);
    const Field vbar = mean(v);
    const Field dbar = mean(state.d);
    const std::size_t n = state.size();
    InterfaceFluxes f{Field(n), Field(n)};
    for (std::size_t i = 0; i < n; ++i) {
        f.P[i] = lambda[i] * deta[i];
        f.Q[i] = lambda[i] * vbar[i] * deta[i] + lambda[i] * dbar[i] * dv[i];
    }
    return f;
}

Tendency artificial_diffusion_rhs(const Grid& grid, const State& state, const Bathymetry& bathy,
                                  const DiffusionConfig& cfg) {
    const InterfaceFluxes f = diffusion_fluxes(state, bathy, cfg);
    return {d_minus(f.P, grid.h()), d_minus(f.Q, grid.h())};
}

Field diffusion_entropy_production(const State& state, const Bathymetry& bathy,
                                   const DiffusionConfig& cfg, double g) {
    const InterfaceFluxes f = diffusion_fluxes(state, bathy, cfg);
    const auto [w1, w2] = entropy_variables(state, bathy, g);
    const Field dw1 = delta_plus(w1);
    const Field dw2 = delta_plus(w2);
    Field ad(state.size());
    for (std::size_t i = 0; i < ad.size(); ++i) ad[i] = -(dw1[i] * f.P[i] + dw2[i] * f.Q[i]);
    return ad;
}

InterfaceFluxes diffused_fluxes(const State& state, const Bathymetry& bathy, const DiffusionConfig& cfg,
                                double g) {
    const Field v = state.velocity();
    InterfaceFluxes f = ec_fluxes(state.d, v, g);
    if (cfg.lambda0 > 0.0 || cfg.adaptive) {
        const InterfaceFluxes diff = diffusion_fluxes(state, bathy, cfg);
        for (std::size_t i = 0; i < f.P.size(); ++i) {
            f.P[i] -= diff.P[i];
            f.Q[i] -= diff.Q[i];
        }
    }
    return f;
}

Tendency swe_rhs(const Grid& grid, const State& state, const Bathymetry& bathy, const DiffusionConfig& cfg,
                 double g) {
    const InterfaceFluxes f = diffused_fluxes(state, bathy, cfg, g);
    const Field src = bathy_source(grid, state.d, bathy.b, g);
    Tendency out{d_minus(f.P, grid.h()), d_minus(f.Q, grid.h())};
    for (std::size_t i = 0; i < out.d.size(); ++i) {
        out.d[i] = -out.d[i];
        out.P[i] = -out.P[i] - src[i];
    }
    return out;
}

Field numerical_entropy_flux(const State& state, const Bathymetry& bathy, double g) {
    const Field v = state.velocity();
    const auto [w1, w2] = entropy_variables(state, bathy, g);
    const InterfaceFluxes f = ec_fluxes(state.d, v, g);
    const Field w1bar = mean(w1);
    const Field w2bar = mean(w2);
    const Field dv = delta_plus(v);
    const Field dbar = mean(state.d);
    const Field db = delta_plus(bathy.b);
    Field psi(state.size());
    for (std::size_t i = 0; i < psi.size(); ++i) psi[i] = 0.5 * g * state.P[i] * state.d[i];
    const Field psibar = mean(psi);
    Field F(state.size());
    for (std::size_t i = 0; i < F.size(); ++i)
        F[i] = w1bar[i] * f.P[i] + w2bar[i] * f.Q[i] - 0.5 * g * dv[i] * dbar[i] * db[i] - psibar[i];
    return F;
}

ShuffleCheck shuffle_check(const State& state, const Bathymetry& bathy, double g) {
    const Field v = state.velocity();
    const auto [w1, w2] = entropy_variables(state, bathy, g);
    const InterfaceFluxes f = ec_fluxes(state.d, v, g);
    const Field dw1 = delta_plus(w1);
    const Field dw2 = delta_plus(w2);
    const Field w2bar = mean(w2);
    const Field dbar = mean(state.d);
    const Field db = delta_plus(bathy.b);
    Field psi(state.size());
    for (std::size_t i = 0; i < psi.size(); ++i) psi[i] = 0.5 * g * state.P[i] * state.d[i];
    const Field dpsi = delta_plus(psi);

    ShuffleCheck out{Field(state.size()), 0.0};
    for (std::size_t i = 0; i < state.size(); ++i) {
        const double t1 = 0.5 * dw1[i] * f.P[i];
        const double t2 = 0.5 * dw2[i] * f.Q[i];
        const double t3 = 0.5 * g * w2bar[i] * dbar[i] * db[i];
        const double rhs = 0.5 * dpsi[i];
        out.residual[i] = t1 + t2 - t3 - rhs;
        out.max_term = std::max({out.max_term, std::abs(t1), std::abs(t2), std::abs(t3), std::abs(rhs)});
    }
    return out;
}

}  // namespace boussinesq
