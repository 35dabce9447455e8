#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "boussinesq/errors.hpp"
#include "boussinesq/integrator.hpp"
#include "helpers.hpp"

using namespace boussinesq;

namespace {

constexpr double pi = std::numbers::pi;

ParamSet with_alpha() { return {"a", 0.01, 0.3, 0.05, 0, 1, ErrorKind::relative}; }

Model flat_model(std::size_t n, double length, const ParamSet& p, DiffusionConfig diff, double g = 1.0,
                 double depth = 1.0) {
    const Grid grid(0.0, length, n);
    Bathymetry bathy{Field(n, 0.0), depth};
    DispersiveCoeffs c = build_coeffs(bathy, g, p);
    return Model(grid, std::move(bathy), std::move(c), diff, g);
}

Model dingemans_model(double h, const ParamSet& p, DiffusionConfig diff) {
    const Grid grid = Grid::with_spacing(-138.0, 46.0, h);
    Bathymetry bathy = sample_bathymetry(grid, BathymetryKind::dingemans, 0.8);
    DispersiveCoeffs c = build_coeffs(bathy, 9.81, p);
    return Model(grid, std::move(bathy), std::move(c), diff, 9.81);
}

// A smooth, strongly nonlinear right-going pulse on a periodic flat bottom.
State pulse(const Grid& grid, double amplitude) {
    Field d(grid.size()), v(grid.size());
    const double L = grid.x_right() - grid.x_left();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double th = 2 * pi * (grid.x(i) - grid.x_left()) / L;
        d[i] = 1.0 + amplitude * std::cos(th);
        v[i] = amplitude * (std::cos(th) + 0.3 * std::sin(2 * th));
    }
    return State::from_velocity(d, v);
}

State lake(const Model& m) { return {m.bathymetry().still_depth(), Field(m.grid().size(), 0.0)}; }

double max_diff(const Field& a, const Field& b) {
    double e = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
    return e;
}

}  // namespace

TEST(SemiDiscrete, LakeAtRest) {
    for (const ParamSet& p : {*find_param_set("set3"), with_alpha()}) {
        const Model m = dingemans_model(0.1, p, {0.1, true});
        const Tendency t = semi_discrete_rhs(m, lake(m));
        EXPECT_LE(max_abs(t.d), 1e-12);
        EXPECT_LE(max_abs(t.P), 1e-12);
    }
}

TEST(SemiDiscrete, ReducesToShallowWaterWithoutDispersion) {
    std::mt19937_64 rng(40);
    const Grid grid(0.0, 10.0, 64);
    Bathymetry bathy{testing_support::smooth(rng, grid, 0.0, 0.1), 1.0};
    const DiffusionConfig diff{0.1, true};
    const Model m(grid, bathy, zero_coeffs(64), diff, 9.81);
    const State s = State::from_velocity(testing_support::smooth(rng, grid, 1.0, 0.2),
                                         testing_support::smooth(rng, grid, 0.0, 0.3));
    const Tendency a = semi_discrete_rhs(m, s);
    const Tendency b = swe_rhs(grid, s, bathy, diff, 9.81);
    EXPECT_LE(max_diff(a.d, b.d), 1e-15 * max_abs(b.d));
    EXPECT_LE(max_diff(a.P, b.P), 1e-13 * max_abs(b.P));
}

TEST(Energy, SpecialCases) {
    const Grid grid(0.0, 4.0, 16);
    const Bathymetry flat{Field(16, 0.0), 0.7};
    const State rest{Field(16, 0.7), Field(16, 0.0)};
    const DispersiveCoeffs c = build_coeffs(flat, 9.81, *find_param_set("set3"));
    EXPECT_NEAR(modified_energy(grid, rest, flat, c, 9.81), 16 * grid.h() * 0.5 * 9.81 * 0.49, 1e-13);

    std::mt19937_64 rng(41);
    const Bathymetry bathy{testing_support::uniform(rng, 16, -0.2, 0.2), 0.7};
    const State s = State::from_velocity(testing_support::uniform(rng, 16, 0.5, 1.0),
                                         testing_support::uniform(rng, 16, -0.5, 0.5));
    const Field U = entropy_density(s, bathy, 9.81);
    EXPECT_NEAR(modified_energy(grid, s, bathy, zero_coeffs(16), 9.81), grid.h() * sum(U), 1e-13);
}

TEST(Energy, ConservedBySpatialSchemeWithoutDiffusion) {
    std::mt19937_64 rng(42);
    for (const ParamSet& p : {*find_param_set("set3"), *find_param_set("set4")}) {
        const Grid grid(0.0, 20.0, 200);
        Bathymetry bathy{testing_support::smooth(rng, grid, 0.0, 0.2), 1.0};
        DispersiveCoeffs c = build_coeffs(bathy, 9.81, p);
        const Model m(grid, bathy, c, {0.0, false}, 9.81);
        const State s = State::from_velocity(testing_support::smooth(rng, grid, 1.0, 0.2),
                                             testing_support::smooth(rng, grid, 0.0, 0.4));
        const double E = modified_energy(m, s);
        EXPECT_LE(std::abs(energy_rate(m, s, semi_discrete_rhs(m, s))), 1e-11 * std::abs(E)) << p.name;
    }
}

TEST(Energy, AlphaTermsLeakThroughVelocityAverages) {
    // With alpha > 0 the averages vbar_{i-1/2} inside D- and vbar_{i+1/2} inside D+ do not
    // telescope against the kinetic part of w1; by summation by parts the remainder is
    // 1/2 sum h (vbar_{i+1/2} - vbar_{i-1/2}) (X_i D+v_i - Z_i D-v_i),
    // X = a D+(a D-(d+b)), Z = a D-(a D+(d+b)).
    std::mt19937_64 rng(46);
    const Grid grid(0.0, 20.0, 200);
    const double h = grid.h();
    Bathymetry bathy{testing_support::smooth(rng, grid, 0.0, 0.2), 1.0};
    DispersiveCoeffs c = build_coeffs(bathy, 9.81, with_alpha());
    const Model m(grid, bathy, c, {0.0, false}, 9.81);
    const State s = State::from_velocity(testing_support::smooth(rng, grid, 1.0, 0.2),
                                         testing_support::smooth(rng, grid, 0.0, 0.4));
    const Field v = s.velocity(), eta = s.d + bathy.b, &a = c.alpha_hat;
    const Field X = hadamard(a, d_plus(hadamard(a, d_minus(eta, h)), h));
    const Field Z = hadamard(a, d_minus(hadamard(a, d_plus(eta, h)), h));
    const Field vbar = mean(v), dpv = d_plus(v, h), dmv = d_minus(v, h);
    double leak = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        leak += 0.5 * h * (vbar[i] - vbar[grid.prev(i)]) * (X[i] * dpv[i] - Z[i] * dmv[i]);
    const double E = modified_energy(m, s);
    EXPECT_GT(std::abs(leak), 1e-9 * E);
    EXPECT_NEAR(energy_rate(m, s, semi_discrete_rhs(m, s)), leak, 1e-11 * E);
}

TEST(Energy, DissipatedByDiffusion) {
    std::mt19937_64 rng(43);
    for (bool adaptive : {false, true}) {
        const Grid grid(0.0, 20.0, 200);
        Bathymetry bathy{testing_support::smooth(rng, grid, 0.0, 0.2), 1.0};
        DispersiveCoeffs c = build_coeffs(bathy, 9.81, with_alpha());
        const Model m(grid, bathy, c, {0.1, adaptive}, 9.81);
        const State s = State::from_velocity(testing_support::smooth(rng, grid, 1.0, 0.2),
                                             testing_support::smooth(rng, grid, 0.0, 0.4));
        const double rate = energy_rate(m, s, semi_discrete_rhs(m, s));
        EXPECT_LT(rate, 1e-11 * modified_energy(m, s));
        EXPECT_LT(rate, 0.0);
    }
}

TEST(Energy, RateMatchesFiniteDifference) {
    std::mt19937_64 rng(44);
    const Grid grid(0.0, 20.0, 100);
    Bathymetry bathy{testing_support::smooth(rng, grid, 0.0, 0.2), 1.0};
    DispersiveCoeffs c = build_coeffs(bathy, 9.81, with_alpha());
    const Model m(grid, bathy, c, {0.1, false}, 9.81);
    const State s = State::from_velocity(testing_support::smooth(rng, grid, 1.0, 0.2),
                                         testing_support::smooth(rng, grid, 0.0, 0.4));
    const Tendency t = semi_discrete_rhs(m, s);
    const double eps = 1e-6;
    const State plus{s.d + eps * t.d, s.P + eps * t.P};
    const State minus{s.d - eps * t.d, s.P - eps * t.P};
    const double fd = (modified_energy(m, plus) - modified_energy(m, minus)) / (2 * eps);
    const double rate = energy_rate(m, s, t);
    EXPECT_NEAR(rate, fd, 1e-6 * (std::abs(rate) + 1e-3 * modified_energy(m, s)));
}

TEST(Rk4, LakeAtRestUnchanged) {
    const Model m = dingemans_model(0.2, *find_param_set("set3"), {0.1, false});
    const State s0 = lake(m);
    State s = s0;
    for (int i = 0; i < 20; ++i) s = reference_step_rk4(m, s, 0.04);
    EXPECT_LE(max_diff(s.d, s0.d), 1e-12);
    EXPECT_LE(max_abs(s.P), 1e-12);
}

TEST(Rk4, EnergyDriftIsFourthOrder) {
    const Model m = flat_model(64, 20.0, *find_param_set("set3"), {0.0, false});
    const State s0 = pulse(m.grid(), 0.2);
    const double E0 = modified_energy(m, s0);
    auto drift = [&](int steps) {
        State s = s0;
        const double dt = 2.0 / steps;
        for (int i = 0; i < steps; ++i) s = reference_step_rk4(m, s, dt);
        return std::abs(modified_energy(m, s) - E0);
    };
    const double coarse = drift(10), fine = drift(20);
    EXPECT_GT(coarse, 1e3 * 1e-16 * E0);
    const double ratio = coarse / fine;
    EXPECT_GT(ratio, 16.0 * 0.7) << coarse << " " << fine;
    EXPECT_LT(ratio, 16.0 * 1.5) << coarse << " " << fine;
}

TEST(Rk4, PhaseSpeedMatchesDispersionRelation) {
    // Linear wave of wavenumber k on unit depth with g = 1: the crest should move at
    // omega_model(k)/k.
    for (const char* name : {"set3", "set4"}) {
        const ParamSet p = *find_param_set(name);
        const double k = 2.0;
        const std::size_t n = 512;
        const double L = 2 * pi / k * 4;
        const Model m = flat_model(n, L, p, {0.0, false});
        const double omega = omega_model(k, p);
        const double eps = 1e-5;
        Field d(n), v(n);
        for (std::size_t i = 0; i < n; ++i) {
            d[i] = 1.0 + eps * std::cos(k * m.grid().x(i));
            v[i] = omega / k * eps * std::cos(k * m.grid().x(i));
        }
        State s = State::from_velocity(d, v);
        const double T = 1.2;
        const int steps = 400;
        for (int i = 0; i < steps; ++i) s = reference_step_rk4(m, s, T / steps);
        double c = 0.0, sn = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            c += (s.d[i] - 1.0) * std::cos(k * m.grid().x(i));
            sn += (s.d[i] - 1.0) * std::sin(k * m.grid().x(i));
        }
        const double measured = std::atan2(sn, c) / T;
        EXPECT_NEAR(measured / omega, 1.0, 0.01) << name;
    }
}

TEST(Imex, RequiresVanishingAlpha) {
    const Model m = flat_model(32, 10.0, with_alpha(), {});
    EXPECT_THROW(imex_step(m, pulse(m.grid(), 0.1), 0.01), AlphaNotZero);
}

TEST(Imex, LakeAtRestOverDingemansBar) {
    const Model m = dingemans_model(0.1, *find_param_set("set3"), {0.1, false});
    const State s0 = lake(m);
    State s = s0;
    for (int i = 0; i < 1000; ++i) s = imex_step(m, s, 0.02);
    double surf = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) surf = std::max(surf, std::abs(s.d[i] + m.bathymetry().b[i] - 0.8));
    EXPECT_LE(surf, 1e-12);
    EXPECT_LE(max_abs(s.velocity()), 1e-12);
}

TEST(Imex, UniformFlowIsFixedPoint) {
    const Model m = flat_model(32, 10.0, *find_param_set("set3"), {0.1, true}, 9.81);
    const State s = State::from_velocity(Field(32, 1.0), Field(32, 0.4));
    const State next = imex_step(m, s, 0.05);
    EXPECT_LE(max_diff(next.d, s.d), 1e-14);
    EXPECT_LE(max_diff(next.P, s.P), 1e-14);
}

TEST(Imex, ReducesToForwardEulerWithoutDispersion) {
    std::mt19937_64 rng(45);
    const Grid grid(0.0, 10.0, 64);
    Bathymetry bathy{testing_support::smooth(rng, grid, 0.0, 0.1), 1.0};
    const Model m(grid, bathy, zero_coeffs(64), {0.0, false}, 9.81);
    const State s = State::from_velocity(testing_support::smooth(rng, grid, 1.0, 0.2),
                                         testing_support::smooth(rng, grid, 0.0, 0.3));
    const Tendency t = swe_rhs(grid, s, bathy, {0.0, false}, 9.81);
    const Field v = s.velocity();
    for (double dt : {1e-2, 1e-3}) {
        // explicit Euler written for (d, v): exact up to roundoff
        const State a = imex_step(m, s, dt);
        const Field d1 = s.d + dt * t.d;
        Field v1(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) v1[i] = v[i] + dt * (t.P[i] - v[i] * t.d[i]) / s.d[i];
        EXPECT_LE(max_diff(a.d, d1), 1e-14);
        EXPECT_LE(max_diff(a.P, hadamard(d1, v1)), 1e-13);
    }
    // against Euler on (d, P) the closure leaves a dt^2 gap
    const double tiny = 1e-6;
    EXPECT_LE(max_diff(imex_step(m, s, tiny).P, s.P + tiny * t.P), 1e-12);
    const double g1 = max_diff(imex_step(m, s, 2e-3).P, s.P + 2e-3 * t.P);
    const double g2 = max_diff(imex_step(m, s, 1e-3).P, s.P + 1e-3 * t.P);
    EXPECT_NEAR(g1 / g2, 4.0, 0.1);
}

TEST(Imex, AgreesWithRk4ToSecondOrderPerStep) {
    const Model m = flat_model(128, 20.0, *find_param_set("set3"), {0.1, false}, 9.81);
    const State s = pulse(m.grid(), 0.1);
    auto gap = [&](double dt) {
        const State a = imex_step(m, s, dt), b = reference_step_rk4(m, s, dt);
        return std::max(max_diff(a.d, b.d), max_diff(a.P, b.P));
    };
    const double r = gap(2e-3) / gap(1e-3);
    EXPECT_NEAR(r, 4.0, 0.4);
}

TEST(Imex, ImplicitMatrixResidual) {
    const Model m = dingemans_model(0.1, *find_param_set("set3"), {0.1, false});
    const State s = lake(m);
    const double k = 0.02;
    const CyclicBandedMatrix A =
        CyclicBandedMatrix::diagonal(s.d, 2).plus(m.L_beta(), -1.0).plus(m.L_gamma(), -k);
    Field rhs(s.size());
    for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] = std::sin(0.1 * static_cast<double>(i));
    const Field x = cyclic_banded_solve(A, rhs);
    const Field r = A.multiply(x);
    const auto n = static_cast<long>(rhs.size());
    for (std::size_t i = 0; i < rhs.size(); ++i) {
        double bound = std::abs(rhs[i]);
        for (int o = -2; o <= 2; ++o)
            bound += std::abs(A.at(i, o)) * std::abs(x[static_cast<std::size_t>((static_cast<long>(i) + n + o) % n)]);
        EXPECT_LE(std::abs(r[i] - rhs[i]), 1e-10 * bound);
    }
}

TEST(Run, ConservesMassAndTakesSnapshots) {
    const Model m = flat_model(128, 20.0, *find_param_set("set3"), {0.1, false}, 9.81);
    RunOptions o;
    o.cfl = 0.1;
    o.t_end = 1.0;
    o.snapshot_times = {0.0, 0.5, 0.5, 1.0};
    const RunResult r = run(m, pulse(m.grid(), 0.02), {1.0, 10.0}, o);
    const double dt = 0.1 * m.grid().h();
    EXPECT_EQ(r.steps, static_cast<std::size_t>(std::ceil(1.0 / dt - 1e-9)));
    EXPECT_EQ(r.reports.size(), r.steps + 1);
    EXPECT_EQ(r.gauges.t.size(), r.steps + 1);
    EXPECT_LE(std::abs(r.final_mass - r.initial_mass), 1e-12 * r.initial_mass);
    ASSERT_EQ(r.snapshots.size(), 3u);
    EXPECT_EQ(r.snapshots[0].t, 0.0);
    EXPECT_GE(r.snapshots[1].t, 0.5);
    EXPECT_LT(r.snapshots[1].t, 0.5 + dt);
    EXPECT_GE(r.reports.back().t, 1.0 - 1e-12);
    for (std::size_t j = 1; j < r.reports.size(); ++j) EXPECT_GT(r.reports[j].t, r.reports[j - 1].t);
}

TEST(Run, MassConservedOverThousandStepsOnBar) {
    const Model m = dingemans_model(0.1, *find_param_set("set3"), {0.1, false});
    const Scenario sc = *builtin_scenario("dingemans");
    const State s0 = initial_state(sc, m.grid(), m.bathymetry());
    RunOptions o;
    o.t_end = 1000 * 0.2 * 0.1;
    const RunResult r = run(m, s0, {}, o);
    EXPECT_EQ(r.steps, 1000u);
    EXPECT_LE(std::abs(r.final_mass - r.initial_mass), 1e-12 * r.initial_mass);
}

TEST(Run, DetectsBlowUp) {
    const Model m = flat_model(64, 10.0, *find_param_set("set3"), {0.0, false}, 9.81);
    RunOptions o;
    o.cfl = 5.0;
    o.t_end = 50.0;
    try {
        run(m, pulse(m.grid(), 0.3), {}, o);
        FAIL() << "expected BlowUp";
    } catch (const BlowUp& e) {
        EXPECT_GT(e.step(), 0u);
    }
}

TEST(Run, CallbackCanStopEarly) {
    const Model m = flat_model(64, 10.0, *find_param_set("set3"), {0.1, false}, 9.81);
    RunOptions o;
    o.t_end = 5.0;
    int calls = 0;
    o.on_step = [&](const StepReport& rep, const State&) {
        EXPECT_GT(rep.min_depth, 0.0);
        return ++calls < 7;
    };
    const RunResult r = run(m, pulse(m.grid(), 0.05), {}, o);
    EXPECT_EQ(calls, 7);
    EXPECT_EQ(r.steps, 7u);
}

TEST(Run, Deterministic) {
    const Model m = flat_model(64, 10.0, *find_param_set("set3"), {0.1, true}, 9.81);
    RunOptions o;
    o.t_end = 1.0;
    const RunResult a = run(m, pulse(m.grid(), 0.05), {2.0}, o);
    const RunResult b = run(m, pulse(m.grid(), 0.05), {2.0}, o);
    EXPECT_EQ(a.final_state.d, b.final_state.d);
    EXPECT_EQ(a.final_state.P, b.final_state.P);
    EXPECT_EQ(a.gauges.s, b.gauges.s);
}

TEST(Model, FromScenario) {
    const Scenario s = *builtin_scenario("dingemans");
    const Model m = Model::from_scenario(s, 0.2);
    EXPECT_EQ(m.grid().size(), 920u);
    EXPECT_EQ(m.L_beta().bandwidth(), 1);
    EXPECT_EQ(m.L_gamma().bandwidth(), 2);
    EXPECT_TRUE(m.L_beta().is_symmetric());
    EXPECT_EQ(m.gravity(), s.g);
}
