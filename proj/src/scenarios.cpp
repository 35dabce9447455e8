#include "boussinesq/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "boussinesq/errors.hpp"

namespace boussinesq {

double dingemans_bathymetry(double x) {
    // 0.8 m offshore, ramp up to a 0.2 m deep bar crest, ramp back down
    if (x < 11.01) return 0.0;
    if (x < 23.04) return 0.6 * (x - 11.01) / (23.04 - 11.01);
    if (x < 27.04) return 0.6;
    if (x < 33.07) return 0.6 * (33.07 - x) / (33.07 - 27.04);
    return 0.0;
}

double spike_bathymetry(double x) {
    if (x > -26.0 && x < -25.0) return 0.7 * (x + 26.0);
    return 0.0;
}

double cavity_bathymetry(double x) {
    if (x < -75.0) return 0.5;
    if (x < -50.0) return 0.0;
    return 0.5;
}

std::string_view to_string(BathymetryKind kind) {
    switch (kind) {
        case BathymetryKind::flat: return "flat";
        case BathymetryKind::dingemans: return "dingemans";
        case BathymetryKind::spike: return "spike";
        case BathymetryKind::cavity: return "cavity";
    }
    return "flat";
}

std::optional<BathymetryKind> parse_bathymetry_kind(std::string_view text) {
    for (auto k : {BathymetryKind::flat, BathymetryKind::dingemans, BathymetryKind::spike, BathymetryKind::cavity})
        if (to_string(k) == text) return k;
    return std::nullopt;
}

double bathymetry_at(BathymetryKind kind, double x) {
    switch (kind) {
        case BathymetryKind::flat: return 0.0;
        case BathymetryKind::dingemans: return dingemans_bathymetry(x);
        case BathymetryKind::spike: return spike_bathymetry(x);
        case BathymetryKind::cavity: return cavity_bathymetry(x);
    }
    return 0.0;
}

Bathymetry sample_bathymetry(const Grid& grid, BathymetryKind kind, double H) {
    Bathymetry bathy{Field(grid.size()), H};
    for (std::size_t i = 0; i < grid.size(); ++i) bathy.b[i] = bathymetry_at(kind, grid.x(i));
    return bathy;
}

Field mollify(const Grid& grid, FieldView b, double delta, int passes) {
    if (passes < 0) throw std::invalid_argument("mollifier passes must be nonnegative");
    Field out(b.begin(), b.end());
    if (passes == 0) return out;
    if (!(delta >= grid.h() * (1.0 - 1e-12))) throw std::invalid_argument("mollifier width must be at least h");
    const auto half = static_cast<std::size_t>(std::floor(delta / grid.h() + 1e-9));
    const std::size_t n = grid.size();
    if (2 * half + 1 > n) throw std::invalid_argument("mollifier wider than the domain");
    const double width = static_cast<double>(2 * half + 1);
    for (int pass = 0; pass < passes; ++pass) {
        Field next(n);
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t k = 0; k < 2 * half + 1; ++k) s += out[(i + n - half + k) % n];
            next[i] = s / width;
        }
        out = std::move(next);
    }
    return out;
}

double solve_wavenumber(double omega, double d0, double g) {
    if (!(omega > 0.0) || !(d0 > 0.0) || !(g > 0.0))
        throw std::invalid_argument("wavenumber solve needs positive omega, d0 and g");
    const double w2 = omega * omega;
    auto f = [&](double K) { return g * K * std::tanh(K * d0) - w2; };
    double lo = std::max(w2 / g, omega / std::sqrt(g * d0));  // f(lo) <= 0
    double hi = 2.0 * lo;
    while (f(hi) < 0.0) {
        lo = hi;
        hi *= 2.0;
    }
    for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    return std::abs(f(lo)) <= std::abs(f(hi)) ? lo : hi;
}

double train_envelope(double x, double center, double wavelength, int n_crests) {
    const double core = 0.5 * (n_crests - 1) * wavelength;
    const double xi = std::abs(x - center);
    if (xi <= core) return 1.0;
    if (xi >= core + wavelength) return 0.0;
    return 0.5 * (1.0 + std::cos(std::numbers::pi * (xi - core) / wavelength));
}

State wave_train(const Grid& grid, const Bathymetry& bathy, double amplitude, double K, double d0, double g,
                 int n_crests, double center) {
    if (n_crests < 1) throw std::invalid_argument("wave train needs at least one crest");
    if (!(K > 0.0) || !(d0 > 0.0)) throw std::invalid_argument("wave train needs positive K and d0");
    const double wavelength = 2.0 * std::numbers::pi / K;
    const double half = (0.5 * (n_crests - 1) + 1.0) * wavelength;
    const std::size_t n = grid.size();
    Field hs = bathy.still_depth();

    if (amplitude != 0.0) {
        if (center - half < grid.x_left() || center + half > grid.x_right())
            throw GeometryError("wave train does not fit inside the domain");
        const auto ic = static_cast<std::size_t>(std::lround((center - grid.x_left()) / grid.h())) % n;
        const double b_center = bathy.b[ic];
        for (std::size_t i = 0; i < n; ++i) {
            const double x = grid.x(i);
            if (std::abs(x - center) < half && bathy.b[i] != b_center)
                throw GeometryError("wave train overlaps non-flat bathymetry at x=" + std::to_string(x));
        }
    }

    const double speed = std::sqrt(g / K * std::tanh(K * d0));
    const double phase = std::numbers::pi * static_cast<double>(n_crests - 1);
    Field d(n), v(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = grid.x(i);
        double s = 0.0;
        if (amplitude != 0.0) {
            const double env = train_envelope(x, center, wavelength, n_crests);
            if (env > 0.0) s = amplitude * std::cos(K * (x - center) + phase) * env;
        }
        d[i] = hs[i] + s;
        v[i] = speed * s / d0;
    }
    require_positive_depth(d);
    return State::from_velocity(std::move(d), v);
}

const std::vector<double>& dingemans_gauges_a() {
    static const std::vector<double> xs = {3.04, 9.44, 20.04, 26.04, 30.44, 37.04};
    return xs;
}

const std::vector<double>& dingemans_gauges_b() {
    static const std::vector<double> xs = {7.04, 9.44, 24.04, 28.04, 33.64, 41.04};
    return xs;
}

std::optional<Scenario> builtin_scenario(std::string_view name) {
    Scenario s;
    s.name = std::string(name);
    if (name == "dingemans") {
        s.bathymetry = BathymetryKind::dingemans;
        s.gauges = dingemans_gauges_a();
        s.params = *find_param_set("set3");
        s.t_end = 70.0;
        return s;
    }
    if (name == "spike") {
        s.bathymetry = BathymetryKind::spike;
        s.gauges = {-40.0, -30.0, -25.5, -20.0, -10.0};
        s.params = *find_param_set("set4");
        s.t_end = 10.0;
        return s;
    }
    if (name == "cavity") {
        s.bathymetry = BathymetryKind::cavity;
        // the only stretch of flat bottom ahead of the cavity is the 0.3 m plateau
        s.train.center = -100.0;
        s.gauges = {-90.0, -75.0, -62.5, -50.0, -40.0};
        s.params = *find_param_set("set4");
        s.t_end = 20.0;
        return s;
    }
    return std::nullopt;
}

std::vector<std::string> builtin_scenario_names() { return {"dingemans", "spike", "cavity"}; }

void validate(const Scenario& s) {
    if (!(s.x_right > s.x_left)) throw GeometryError("scenario domain is empty");
    for (double x : s.gauges)
        if (x < s.x_left || x >= s.x_right)
            throw GeometryError("gauge at x=" + std::to_string(x) + " lies outside the domain");
    if (!(s.cfl > 0.0)) throw GeometryError("CFL number must be positive");
    if (!(s.t_end >= 0.0)) throw GeometryError("end time must be nonnegative");
    if (s.diffusion.lambda0 < 0.0) throw GeometryError("lambda0 must be nonnegative");
    if (!(s.g > 0.0)) throw GeometryError("gravity must be positive");
}

Bathymetry scenario_bathymetry(const Scenario& s, const Grid& grid) {
    Bathymetry bathy = sample_bathymetry(grid, s.bathymetry, s.H);
    if (s.mollify.passes > 0) bathy.b = mollify(grid, bathy.b, s.mollify.delta, s.mollify.passes);
    return bathy;
}

State initial_state(const Scenario& s, const Grid& grid, const Bathymetry& bathy) {
    const double d0 = s.H - bathymetry_at(s.bathymetry, s.train.center);
    if (!(d0 > 0.0)) throw GeometryError("wave train center lies on dry bottom");
    const double omega = 2.0 * std::numbers::pi / s.train.period;
    const double K = solve_wavenumber(omega, d0, s.g);
    return wave_train(grid, bathy, s.train.amplitude, K, d0, s.g, s.train.n_crests, s.train.center);
}

GaugeSeries::GaugeSeries(std::vector<double> locations) : x(std::move(locations)), s(x.size()) {}

double interpolate_surface(const Grid& grid, const State& state, const Bathymetry& bathy, double x) {
    const std::size_t n = grid.size();
    const double xi = (x - grid.x_left()) / grid.h();
    const double fl = std::floor(xi);
    const double frac = xi - fl;
    const auto i = static_cast<std::size_t>((static_cast<long long>(fl) % static_cast<long long>(n) +
                                             static_cast<long long>(n)) %
                                            static_cast<long long>(n));
    const std::size_t j = grid.next(i);
    const double si = state.d[i] + bathy.b[i] - bathy.H;
    if (frac == 0.0) return si;
    const double sj = state.d[j] + bathy.b[j] - bathy.H;
    return si + frac * (sj - si);
}

void sample_gauges(const Grid& grid, const State& state, const Bathymetry& bathy, GaugeSeries& series, double t) {
    if (!series.t.empty() && !(t > series.t.back()))
        throw std::invalid_argument("gauge sample times must increase");
    series.t.push_back(t);
    for (std::size_t g = 0; g < series.x.size(); ++g)
        series.s[g].push_back(interpolate_surface(grid, state, bathy, series.x[g]));
}

}  // namespace boussinesq
