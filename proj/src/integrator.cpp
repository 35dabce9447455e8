#include "boussinesq/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "boussinesq/errors.hpp"

namespace boussinesq {

Model::Model(Grid grid, Bathymetry bathy, DispersiveCoeffs coeffs, DiffusionConfig diffusion, double g)
    : grid_(std::move(grid)),
      bathy_(std::move(bathy)),
      coeffs_(std::move(coeffs)),
      diffusion_(diffusion),
      g_(g),
      L_beta_(matrix_of(DispersiveOperator::beta, coeffs_, grid_)),
      L_gamma_(matrix_of(DispersiveOperator::gamma, coeffs_, grid_)) {
    const std::size_t n = grid_.size();
    if (bathy_.b.size() != n || coeffs_.alpha_hat.size() != n || coeffs_.beta_hat.size() != n ||
        coeffs_.gamma_hat.size() != n)
        throw std::invalid_argument("model fields do not match the grid");
}

Model Model::from_scenario(const Scenario& s, double h) {
    validate(s);
    Grid grid = Grid::with_spacing(s.x_left, s.x_right, h);
    Bathymetry bathy = scenario_bathymetry(s, grid);
    DispersiveCoeffs coeffs = build_coeffs(bathy, s.g, s.params);
    return Model(std::move(grid), std::move(bathy), std::move(coeffs), s.diffusion, s.g);
}

namespace {

// Right-hand side r of (diag(d) - L_beta) v_t = r, given d_t and the shallow-water
// momentum residual.
Field momentum_rhs(const Model& m, const State& state, const Field& v, const Field& ddt_d, const Field& swe_P) {
    const Field d3p = d3_P(m.grid(), m.coeffs(), v, state.d, m.bathymetry().b);
    const Field lg = m.L_gamma().multiply(v);
    Field r(v.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = -v[i] * ddt_d[i] + swe_P[i] + d3p[i] + lg[i];
    return r;
}

}  // namespace

Tendency semi_discrete_rhs(const Model& m, const State& state) {
    const Field v = state.velocity();
    const Tendency swe = swe_rhs(m.grid(), state, m.bathymetry(), m.diffusion(), m.gravity());
    const Field d3d = d3_d(m.grid(), m.coeffs(), state.d, m.bathymetry().b);
    Field ddt_d(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) ddt_d[i] = swe.d[i] + d3d[i];

    const Field r = momentum_rhs(m, state, v, ddt_d, swe.P);
    const CyclicBandedMatrix A = CyclicBandedMatrix::diagonal(state.d, 1).plus(m.L_beta(), -1.0);
    const Field vt = cyclic_banded_solve(A, r);

    Field ddt_P(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) ddt_P[i] = v[i] * ddt_d[i] + state.d[i] * vt[i];
    return {std::move(ddt_d), std::move(ddt_P)};
}

double modified_energy(const Grid& grid, const State& state, const Bathymetry& bathy,
                       const DispersiveCoeffs& coeffs, double g) {
    const Field U = entropy_density(state, bathy, g);
    const Field v = state.velocity();
    const double h = grid.h();
    const Field vp = d_plus(v, h), vm = d_minus(v, h);
    double disp = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) disp += coeffs.beta_hat[i] * (vp[i] * vp[i] + vm[i] * vm[i]);
    return h * sum(U) + 0.25 * h * disp;
}

double modified_energy(const Model& m, const State& state) {
    return modified_energy(m.grid(), state, m.bathymetry(), m.coeffs(), m.gravity());
}

double energy_rate(const Model& m, const State& state, const Tendency& rate) {
    const double h = m.grid().h();
    const auto [w1, w2] = entropy_variables(state, m.bathymetry(), m.gravity());
    const Field v = state.velocity();
    Field vt(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) vt[i] = (rate.P[i] - v[i] * rate.d[i]) / state.d[i];
    const Field vp = d_plus(v, h), vm = d_minus(v, h);
    const Field vtp = d_plus(vt, h), vtm = d_minus(vt, h);
    double bulk = 0.0, disp = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        bulk += w1[i] * rate.d[i] + w2[i] * rate.P[i];
        disp += m.coeffs().beta_hat[i] * (vp[i] * vtp[i] + vm[i] * vtm[i]);
    }
    return h * bulk + 0.5 * h * disp;
}

double total_mass(const Grid& grid, const State& state) { return grid.h() * sum(state.d); }

namespace {

State axpy(const State& s, double a, const Tendency& k) {
    State out = s;
    for (std::size_t i = 0; i < s.size(); ++i) {
        out.d[i] += a * k.d[i];
        out.P[i] += a * k.P[i];
    }
    return out;
}

}  // namespace

State reference_step_rk4(const Model& m, const State& state, double dt) {
    const Tendency k1 = semi_discrete_rhs(m, state);
    const Tendency k2 = semi_discrete_rhs(m, axpy(state, 0.5 * dt, k1));
    const Tendency k3 = semi_discrete_rhs(m, axpy(state, 0.5 * dt, k2));
    const Tendency k4 = semi_discrete_rhs(m, axpy(state, dt, k3));
    State out = state;
    for (std::size_t i = 0; i < state.size(); ++i) {
        out.d[i] += dt / 6.0 * (k1.d[i] + 2.0 * k2.d[i] + 2.0 * k3.d[i] + k4.d[i]);
        out.P[i] += dt / 6.0 * (k1.P[i] + 2.0 * k2.P[i] + 2.0 * k3.P[i] + k4.P[i]);
    }
    return out;
}

State imex_step(const Model& m, const State& state, double dt) {
    if (!m.coeffs().alpha_vanishes()) throw AlphaNotZero();
    const Field v = state.velocity();
    const Tendency swe = swe_rhs(m.grid(), state, m.bathymetry(), m.diffusion(), m.gravity());
    const std::size_t n = v.size();

    const CyclicBandedMatrix mass = CyclicBandedMatrix::diagonal(state.d, 1).plus(m.L_beta(), -1.0);
    const Field mv = mass.multiply(v);
    Field rhs(n);
    for (std::size_t i = 0; i < n; ++i) rhs[i] = mv[i] + dt * (-v[i] * swe.d[i] + swe.P[i]);
    const Field v_new = cyclic_banded_solve(mass.plus(m.L_gamma(), -dt), rhs);

    State out{Field(n), Field(n)};
    for (std::size_t i = 0; i < n; ++i) {
        out.d[i] = state.d[i] + dt * swe.d[i];
        out.P[i] = out.d[i] * v_new[i];
    }
    return out;
}

namespace {

StepReport report_for(const Model& m, const State& s, double t, double dt) {
    StepReport r;
    r.t = t;
    r.dt = dt;
    r.min_depth = s.min_depth();
    for (std::size_t i = 0; i < s.size(); ++i) r.max_abs_v = std::max(r.max_abs_v, std::abs(s.P[i] / s.d[i]));
    r.energy = modified_energy(m, s);
    return r;
}

void require_admissible(const State& s, std::size_t step, double t) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!std::isfinite(s.d[i]) || !std::isfinite(s.P[i]))
            throw BlowUp(step, t, "non-finite value at node " + std::to_string(i));
        if (!(s.d[i] > 0.0))
            throw BlowUp(step, t, "nonpositive depth " + std::to_string(s.d[i]) + " at node " + std::to_string(i));
    }
}

}  // namespace

RunResult run(const Model& m, State initial, const std::vector<double>& gauges, const RunOptions& options) {
    if (!(options.cfl > 0.0)) throw std::invalid_argument("CFL number must be positive");
    if (!(options.t_end >= 0.0)) throw std::invalid_argument("end time must be nonnegative");
    if (initial.size() != m.grid().size()) throw std::invalid_argument("initial state does not match the grid");
    require_admissible(initial, 0, 0.0);

    const double dt = options.cfl * m.grid().h();
    const auto n_steps = static_cast<std::size_t>(std::max(0.0, std::ceil(options.t_end / dt - 1e-9)));

    std::vector<double> pending = options.snapshot_times;
    std::sort(pending.begin(), pending.end());
    pending.erase(std::unique(pending.begin(), pending.end()), pending.end());
    std::size_t next_snap = 0;

    RunResult res{std::move(initial), {}, GaugeSeries(gauges), {}, 0, 0.0, 0.0};
    State& s = res.final_state;
    res.initial_mass = total_mass(m.grid(), s);
    res.reports.push_back(report_for(m, s, 0.0, dt));
    sample_gauges(m.grid(), s, m.bathymetry(), res.gauges, 0.0);

    auto take_snapshots = [&](double t) {
        while (next_snap < pending.size() && pending[next_snap] <= t + 1e-9 * dt) {
            res.snapshots.push_back({pending[next_snap], t, s});
            ++next_snap;
        }
    };
    take_snapshots(0.0);

    for (std::size_t step = 1; step <= n_steps; ++step) {
        const double t = static_cast<double>(step) * dt;
        try {
            s = options.stepper == Stepper::imex ? imex_step(m, s, dt) : reference_step_rk4(m, s, dt);
        } catch (const NonpositiveDepth& e) {
            throw BlowUp(step, t, e.what());
        } catch (const SingularMatrix& e) {
            throw BlowUp(step, t, e.what());
        }
        require_admissible(s, step, t);
        res.steps = step;
        res.reports.push_back(report_for(m, s, t, dt));
        sample_gauges(m.grid(), s, m.bathymetry(), res.gauges, t);
        take_snapshots(t);
        if (options.on_step && !options.on_step(res.reports.back(), s)) break;
    }
    for (; next_snap < pending.size(); ++next_snap) {
        if (pending[next_snap] > options.t_end) break;
        res.snapshots.push_back({pending[next_snap], res.reports.back().t, s});
    }
    res.final_mass = total_mass(m.grid(), s);
    return res;
}

}  // namespace boussinesq
