#include "boussinesq/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <mutex>
#include <ostream>
#include <random>
#include <thread>

#include "boussinesq/errors.hpp"

namespace boussinesq {

using nlohmann::json;

std::string_view version() { return BOUSSINESQ_VERSION; }

namespace {

void check_keys(const json& obj, std::initializer_list<std::string_view> allowed, const std::string& where) {
    if (!obj.is_object()) throw ConfigError(where + " must be an object");
    for (const auto& [key, value] : obj.items())
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw ConfigError("unknown key '" + key + "' in " + where);
}

double number(const json& obj, const char* key, const std::string& where) {
    const json& v = obj.at(key);
    if (!v.is_number()) throw ConfigError(where + "." + key + " must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(where + "." + key + " must be finite");
    return x;
}

void read_number(const json& obj, const char* key, const std::string& where, double& dst) {
    if (obj.contains(key)) dst = number(obj, key, where);
}

std::string text(const json& obj, const char* key, const std::string& where) {
    const json& v = obj.at(key);
    if (!v.is_string()) throw ConfigError(where + "." + key + " must be a string");
    return v.get<std::string>();
}

bool flag(const json& obj, const char* key, const std::string& where) {
    const json& v = obj.at(key);
    if (!v.is_boolean()) throw ConfigError(where + "." + key + " must be a boolean");
    return v.get<bool>();
}

std::vector<double> number_list(const json& obj, const char* key, const std::string& where) {
    const json& v = obj.at(key);
    if (!v.is_array()) throw ConfigError(where + "." + key + " must be an array of numbers");
    std::vector<double> out;
    for (const json& x : v) {
        if (!x.is_number() || !std::isfinite(x.get<double>()))
            throw ConfigError(where + "." + key + " must be an array of finite numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

void read_train(const json& obj, WaveTrainSpec& train) {
    const std::string where = "train";
    check_keys(obj, {"amplitude", "period", "n_crests", "center"}, where);
    read_number(obj, "amplitude", where, train.amplitude);
    read_number(obj, "period", where, train.period);
    read_number(obj, "center", where, train.center);
    if (obj.contains("n_crests")) {
        const json& v = obj.at("n_crests");
        if (!v.is_number_integer() || v.get<long long>() < 1)
            throw ConfigError("train.n_crests must be a positive integer");
        train.n_crests = static_cast<int>(v.get<long long>());
    }
    if (!(train.period > 0.0)) throw ConfigError("train.period must be positive");
}

void read_mollify(const json& obj, MollifySpec& m) {
    check_keys(obj, {"delta", "passes"}, "mollify");
    read_number(obj, "delta", "mollify", m.delta);
    if (obj.contains("passes")) {
        const json& v = obj.at("passes");
        if (!v.is_number_integer() || v.get<long long>() < 0)
            throw ConfigError("mollify.passes must be a nonnegative integer");
        m.passes = static_cast<int>(v.get<long long>());
    }
}

Scenario read_scenario(const json& spec) {
    if (spec.is_string()) {
        const auto name = spec.get<std::string>();
        auto s = builtin_scenario(name);
        if (!s) throw ConfigError("unknown scenario '" + name + "'");
        return *s;
    }
    const std::string where = "scenario";
    check_keys(spec, {"name", "base", "bathymetry", "x_left", "x_right", "H", "g"}, where);
    Scenario s;
    s.name = "custom";
    if (spec.contains("base")) {
        const auto base = text(spec, "base", where);
        auto b = builtin_scenario(base);
        if (!b) throw ConfigError("unknown base scenario '" + base + "'");
        s = *b;
    }
    if (spec.contains("name")) s.name = text(spec, "name", where);
    if (spec.contains("bathymetry")) {
        const auto kind = text(spec, "bathymetry", where);
        auto k = parse_bathymetry_kind(kind);
        if (!k) throw ConfigError("unknown bathymetry '" + kind + "'");
        s.bathymetry = *k;
    }
    read_number(spec, "x_left", where, s.x_left);
    read_number(spec, "x_right", where, s.x_right);
    read_number(spec, "H", where, s.H);
    read_number(spec, "g", where, s.g);
    return s;
}

}  // namespace

ParamSet resolve_params(const json& spec) {
    if (spec.is_string()) {
        const auto name = spec.get<std::string>();
        auto p = find_param_set(name);
        if (!p) throw ConfigError("unknown parameter set '" + name + "'");
        return *p;
    }
    const std::string where = "params";
    check_keys(spec, {"name", "alpha", "beta", "gamma", "k_min", "k_max", "kind"}, where);
    for (const char* key : {"alpha", "beta", "gamma"})
        if (!spec.contains(key)) throw ConfigError(std::string("params.") + key + " is required");
    ParamSet p;
    p.name = spec.contains("name") ? text(spec, "name", where) : "custom";
    p.alpha_t = number(spec, "alpha", where);
    p.beta_t = number(spec, "beta", where);
    p.gamma_t = number(spec, "gamma", where);
    read_number(spec, "k_min", where, p.k_min);
    read_number(spec, "k_max", where, p.k_max);
    if (spec.contains("kind")) {
        const auto kind = text(spec, "kind", where);
        auto k = parse_error_kind(kind);
        if (!k) throw ConfigError("params.kind must be 'rel' or 'abs'");
        p.error_kind = *k;
    }
    return p;
}

json to_json(const ParamSet& p) {
    return {{"name", p.name},   {"alpha", p.alpha_t}, {"beta", p.beta_t},
            {"gamma", p.gamma_t}, {"k_min", p.k_min},  {"k_max", p.k_max},
            {"kind", std::string(to_string(p.error_kind))}};
}

RunConfig parse_run_config(const json& doc) {
    const std::string where = "config";
    check_keys(doc, {"scenario", "h", "cfl", "lambda0", "adaptive_lambda", "params", "t_end", "gauges", "train",
                     "mollify", "snapshot_times", "output_dir", "stepper"},
               where);
    if (!doc.contains("scenario")) throw ConfigError("config.scenario is required");

    RunConfig cfg;
    cfg.scenario = read_scenario(doc.at("scenario"));
    Scenario& s = cfg.scenario;
    read_number(doc, "h", where, cfg.h);
    read_number(doc, "cfl", where, s.cfl);
    read_number(doc, "lambda0", where, s.diffusion.lambda0);
    if (doc.contains("adaptive_lambda")) s.diffusion.adaptive = flag(doc, "adaptive_lambda", where);
    if (doc.contains("params")) s.params = resolve_params(doc.at("params"));
    read_number(doc, "t_end", where, s.t_end);
    if (doc.contains("gauges")) s.gauges = number_list(doc, "gauges", where);
    if (doc.contains("train")) read_train(doc.at("train"), s.train);
    if (doc.contains("mollify")) read_mollify(doc.at("mollify"), s.mollify);
    if (doc.contains("snapshot_times")) cfg.snapshot_times = number_list(doc, "snapshot_times", where);
    if (doc.contains("output_dir")) cfg.output_dir = text(doc, "output_dir", where);
    if (doc.contains("stepper")) {
        const auto name = text(doc, "stepper", where);
        if (name == "imex") cfg.stepper = Stepper::imex;
        else if (name == "rk4") cfg.stepper = Stepper::rk4;
        else throw ConfigError("config.stepper must be 'imex' or 'rk4'");
    }

    if (!(cfg.h > 0.0)) throw ConfigError("config.h must be positive");
    if (s.params.alpha_t < 0.0 || s.params.beta_t < 0.0)
        throw ConfigError("dispersive parameters alpha and beta must be nonnegative for runs");
    if (s.mollify.passes > 0 && !(s.mollify.delta >= cfg.h))
        throw ConfigError("mollify.delta must be at least h");
    try {
        validate(s);
        (void)Grid::with_spacing(s.x_left, s.x_right, cfg.h);
    } catch (const GeometryError& e) {
        throw ConfigError(e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    for (double t : cfg.snapshot_times)
        if (t < 0.0 || t > s.t_end) throw ConfigError("snapshot time " + format_double(t) + " outside [0, t_end]");
    return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON in ") + path.string() + ": " + e.what());
    }
    return parse_run_config(doc);
}

json to_json(const RunConfig& cfg) {
    const Scenario& s = cfg.scenario;
    json doc;
    doc["scenario"] = {{"name", s.name},       {"bathymetry", std::string(to_string(s.bathymetry))},
                       {"x_left", s.x_left},   {"x_right", s.x_right},
                       {"H", s.H},             {"g", s.g}};
    doc["h"] = cfg.h;
    doc["cfl"] = s.cfl;
    doc["lambda0"] = s.diffusion.lambda0;
    doc["adaptive_lambda"] = s.diffusion.adaptive;
    doc["params"] = to_json(s.params);
    doc["t_end"] = s.t_end;
    doc["gauges"] = s.gauges;
    doc["train"] = {{"amplitude", s.train.amplitude},
                    {"period", s.train.period},
                    {"n_crests", s.train.n_crests},
                    {"center", s.train.center}};
    doc["mollify"] = {{"delta", s.mollify.delta}, {"passes", s.mollify.passes}};
    doc["snapshot_times"] = cfg.snapshot_times;
    doc["output_dir"] = cfg.output_dir;
    doc["stepper"] = cfg.stepper == Stepper::imex ? "imex" : "rk4";
    return doc;
}

std::string format_double(double x) {
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), res.ptr);
}

void write_gauges_csv(std::ostream& out, const GaugeSeries& series) {
    out << "# gauge series; t in s, g1..g" << series.gauge_count() << " surface elevation d+b-H in m\n";
    out << "# gauge x [m]";
    for (double x : series.x) out << ',' << format_double(x);
    out << "\nt";
    for (std::size_t g = 0; g < series.gauge_count(); ++g) out << ",g" << g + 1;
    out << '\n';
    for (std::size_t j = 0; j < series.t.size(); ++j) {
        out << format_double(series.t[j]);
        for (std::size_t g = 0; g < series.gauge_count(); ++g) out << ',' << format_double(series.s[g][j]);
        out << '\n';
    }
}

void write_snapshot_csv(std::ostream& out, const Grid& grid, const Bathymetry& bathy, const Snapshot& snap) {
    out << "# snapshot at t=" << format_double(snap.t) << " s (requested " << format_double(snap.requested_t)
        << " s); x, b, d, s in m, v in m/s\n";
    out << "x,b,d,v,s\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double d = snap.state.d[i];
        out << format_double(grid.x(i)) << ',' << format_double(bathy.b[i]) << ',' << format_double(d) << ','
            << format_double(snap.state.P[i] / d) << ',' << format_double(d + bathy.b[i] - bathy.H) << '\n';
    }
}

void write_steps_csv(std::ostream& out, const std::vector<StepReport>& reports) {
    out << "# step reports; t in s, E (modified energy per unit density) in m^4/s^2, min_depth in m, dt in s\n";
    out << "t,E,min_depth,dt\n";
    for (const StepReport& r : reports)
        out << format_double(r.t) << ',' << format_double(r.energy) << ',' << format_double(r.min_depth) << ','
            << format_double(r.dt) << '\n';
}

void write_error_curve_csv(std::ostream& out, const ErrorCurve& curve, const ParamSet& p) {
    out << "# dispersion error of " << p.name << " (alpha=" << format_double(p.alpha_t)
        << ", beta=" << format_double(p.beta_t) << ", gamma=" << format_double(p.gamma_t)
        << "); k scaled by d0, omega by sqrt(g/d0), errors dimensionless\n";
    out << "k,omega_euler,omega_model,rel_err,abs_err\n";
    for (const ErrorSample& e : curve.samples)
        out << format_double(e.k) << ',' << format_double(e.omega_euler) << ',' << format_double(e.omega_model)
            << ',' << format_double(e.rel_err) << ',' << format_double(e.abs_err) << '\n';
}

std::string snapshot_file_name(double requested_t) { return "snapshot_t" + format_double(requested_t) + ".csv"; }

namespace {

void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    body(out);
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace

RunOutcome cmd_run(const RunConfig& cfg) {
    const Scenario& s = cfg.scenario;
    std::optional<Model> model;
    State initial;
    try {
        model.emplace(Model::from_scenario(s, cfg.h));
        initial = initial_state(s, model->grid(), model->bathymetry());
        if (cfg.stepper == Stepper::imex && !model->coeffs().alpha_vanishes()) throw AlphaNotZero();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }

    RunOptions opt;
    opt.cfl = s.cfl;
    opt.t_end = s.t_end;
    opt.stepper = cfg.stepper;
    opt.snapshot_times = cfg.snapshot_times;
    if (std::find(opt.snapshot_times.begin(), opt.snapshot_times.end(), s.t_end) == opt.snapshot_times.end())
        opt.snapshot_times.push_back(s.t_end);

    RunOutcome outcome{run(*model, std::move(initial), s.gauges, opt), {}};
    if (cfg.output_dir.empty()) return outcome;

    const std::filesystem::path dir(cfg.output_dir);
    std::filesystem::create_directories(dir);
    const RunResult& r = outcome.result;
    write_file(dir / "gauges.csv", [&](std::ostream& o) { write_gauges_csv(o, r.gauges); });
    write_file(dir / "steps.csv", [&](std::ostream& o) { write_steps_csv(o, r.reports); });
    json snaps = json::array();
    for (const Snapshot& snap : r.snapshots) {
        const std::string name = snapshot_file_name(snap.requested_t);
        write_file(dir / name,
                   [&](std::ostream& o) { write_snapshot_csv(o, model->grid(), model->bathymetry(), snap); });
        snaps.push_back({{"requested_t", snap.requested_t}, {"t", snap.t}, {"file", name}});
    }
    json gauges = json::array();
    for (std::size_t g = 0; g < s.gauges.size(); ++g)
        gauges.push_back({{"column", "g" + std::to_string(g + 1)}, {"x", s.gauges[g]}});

    json manifest;
    manifest["version"] = std::string(version());
    manifest["config"] = to_json(cfg);
    manifest["grid"] = {{"n", model->grid().size()}, {"h", model->grid().h()}};
    manifest["steps"] = r.steps;
    manifest["final_time"] = r.reports.back().t;
    manifest["mass"] = {{"initial", r.initial_mass}, {"final", r.final_mass}};
    manifest["gauges"] = gauges;
    manifest["files"] = {{"gauges", "gauges.csv"}, {"steps", "steps.csv"}};
    manifest["snapshots"] = snaps;
    write_file(dir / "manifest.json", [&](std::ostream& o) { o << manifest.dump(2) << '\n'; });
    outcome.bundle = dir;
    return outcome;
}

std::vector<CheckLine> cmd_check(const Scenario& s, double h, unsigned seed) {
    std::optional<Model> model;
    try {
        model.emplace(Model::from_scenario(s, h));
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    const Grid& grid = model->grid();
    const Bathymetry& bathy = model->bathymetry();
    const std::size_t n = grid.size();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> depth(0.1, 2.0), vel(-1.0, 1.0);
    auto random_state = [&] {
        Field d(n), v(n);
        for (std::size_t i = 0; i < n; ++i) {
            d[i] = depth(rng);
            v[i] = vel(rng);
        }
        return State::from_velocity(std::move(d), v);
    };

    std::vector<CheckLine> lines;

    double shuffle = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const ShuffleCheck c = shuffle_check(random_state(), bathy, s.g);
        shuffle = std::max(shuffle, max_abs(c.residual) / c.max_term);
    }
    lines.push_back({"shuffle identity (relative residual)", shuffle, 1e-12, shuffle <= 1e-12});

    Field d0 = bathy.still_depth();
    State state = State::from_velocity(d0, Field(n, 0.0));
    const double dt = s.cfl * grid.h();
    for (int step = 0; step < 1000; ++step) state = imex_step(*model, state, dt);
    double surface = 0.0, speed = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        surface = std::max(surface, std::abs(state.d[i] + bathy.b[i] - bathy.H));
        speed = std::max(speed, std::abs(state.P[i] / state.d[i]));
    }
    lines.push_back({"lake at rest, max |d+b-H| after 1000 steps", surface, 1e-12, surface <= 1e-12});
    lines.push_back({"lake at rest, max |v| after 1000 steps", speed, 1e-12, speed <= 1e-12});

    double production = -1.0;
    for (bool adaptive : {false, true}) {
        const DiffusionConfig cfg{std::max(s.diffusion.lambda0, 0.1), adaptive};
        for (int trial = 0; trial < 20; ++trial) {
            const Field ad = diffusion_entropy_production(random_state(), bathy, cfg, s.g);
            const double scale = max_abs(ad);
            for (double a : ad) production = std::max(production, scale > 0.0 ? a / scale : a);
        }
    }
    lines.push_back({"diffusion entropy production (max, relative)", production, 1e-14, production <= 1e-14});
    return lines;
}

bool ConvergenceTable::monotone() const {
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (!(rows[i].l2_difference < rows[i - 1].l2_difference)) return false;
    return true;
}

namespace {

double interpolate_in_time(const std::vector<double>& t, const std::vector<double>& y, double tq) {
    const auto it = std::upper_bound(t.begin(), t.end(), tq);
    if (it == t.begin()) return y.front();
    if (it == t.end()) return y.back();
    const std::size_t j = static_cast<std::size_t>(it - t.begin());
    const double w = (tq - t[j - 1]) / (t[j] - t[j - 1]);
    return y[j - 1] + w * (y[j] - y[j - 1]);
}

}  // namespace

double gauge_l2_difference(const GaugeSeries& a, const GaugeSeries& b, std::optional<std::size_t> gauge) {
    if (a.gauge_count() != b.gauge_count()) throw std::invalid_argument("gauge series have different gauges");
    if (a.t.size() < 2 || b.t.size() < 2) throw std::invalid_argument("gauge series too short to compare");
    if (gauge && *gauge >= a.gauge_count()) throw std::invalid_argument("gauge index out of range");
    const double dt = std::max(a.t[1] - a.t[0], b.t[1] - b.t[0]);
    const double t_end = std::min(a.t.back(), b.t.back());
    const auto m = static_cast<std::size_t>(std::floor(t_end / dt + 1e-9));
    double acc = 0.0;
    for (std::size_t g = 0; g < a.gauge_count(); ++g) {
        if (gauge && g != *gauge) continue;
        for (std::size_t j = 0; j <= m; ++j) {
            const double tq = static_cast<double>(j) * dt;
            const double diff = interpolate_in_time(a.t, a.s[g], tq) - interpolate_in_time(b.t, b.s[g], tq);
            acc += diff * diff * dt;
        }
    }
    return std::sqrt(acc);
}

ConvergenceTable cmd_converge(const Scenario& s, const ConvergeOptions& options) {
    ConvergenceTable table;
    if (options.hs.empty()) throw ConfigError("converge needs at least one grid spacing");
    if (options.hs.size() == 1) {
        table.warnings.push_back("a single grid spacing gives nothing to compare");
        return table;
    }
    std::vector<RunConfig> configs;
    for (std::size_t i = 0; i < options.hs.size(); ++i) {
        const double h = options.hs[i];
        json doc = to_json(RunConfig{s, h, {}, {}, options.stepper});
        doc["t_end"] = options.t_end;
        if (!options.output_dir.empty())
            doc["output_dir"] = (std::filesystem::path(options.output_dir) /
                                 ("run" + std::to_string(i + 1) + "_h" + format_double(h)))
                                    .string();
        configs.push_back(parse_run_config(doc));
    }

    std::vector<std::optional<GaugeSeries>> series(configs.size());
    std::vector<std::exception_ptr> errors(configs.size());
    std::size_t next = 0;
    std::mutex lock;
    auto worker = [&] {
        for (;;) {
            std::size_t job;
            {
                std::lock_guard guard(lock);
                if (next == configs.size()) return;
                job = next++;
            }
            try {
                series[job] = cmd_run(configs[job]).result.gauges;
            } catch (...) {
                errors[job] = std::current_exception();
            }
        }
    };
    const unsigned threads = std::min<unsigned>(worker_threads(options.threads), static_cast<unsigned>(configs.size()));
    {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    for (std::size_t i = 1; i < configs.size(); ++i)
        table.rows.push_back({options.hs[i - 1], options.hs[i],
                              gauge_l2_difference(*series[i - 1], *series[i], options.gauge)});
    return table;
}

}  // namespace boussinesq
