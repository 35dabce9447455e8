#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "boussinesq/dispersion.hpp"
#include "boussinesq/errors.hpp"
#include "boussinesq/io.hpp"

namespace bq = boussinesq;
using nlohmann::json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config = 2;
constexpr int exit_blowup = 3;
constexpr int exit_check = 4;

struct Common {
    std::string config;
    std::string scenario;
    std::string out;
    std::string set;
    std::vector<double> hs;
    std::optional<double> t_end, cfl, lambda;
    bool adaptive = false;
    std::string stepper;
};

json base_document(const Common& c) {
    json doc = json::object();
    if (!c.config.empty()) {
        std::ifstream in(c.config);
        if (!in) throw bq::ConfigError("cannot open config file " + c.config);
        try {
            doc = json::parse(in);
        } catch (const json::parse_error& e) {
            throw bq::ConfigError("malformed JSON in " + c.config + ": " + e.what());
        }
    }
    if (!c.scenario.empty()) doc["scenario"] = c.scenario;
    if (!doc.contains("scenario")) throw bq::ConfigError("either --config or --scenario is required");
    if (!c.set.empty()) doc["params"] = c.set;
    if (c.t_end) doc["t_end"] = *c.t_end;
    if (c.cfl) doc["cfl"] = *c.cfl;
    if (c.lambda) doc["lambda0"] = *c.lambda;
    if (c.adaptive) doc["adaptive_lambda"] = true;
    if (!c.out.empty()) doc["output_dir"] = c.out;
    if (!c.stepper.empty()) doc["stepper"] = c.stepper;
    return doc;
}

int do_run(const Common& c) {
    json doc = base_document(c);
    if (c.hs.size() > 1) throw bq::ConfigError("run takes a single --h");
    if (!c.hs.empty()) doc["h"] = c.hs.front();
    const bq::RunConfig cfg = bq::parse_run_config(doc);
    const bq::RunOutcome outcome = bq::cmd_run(cfg);
    const bq::RunResult& r = outcome.result;
    double e_max = r.reports.front().energy;
    double depth = r.reports.front().min_depth;
    for (const auto& rep : r.reports) {
        e_max = std::max(e_max, rep.energy);
        depth = std::min(depth, rep.min_depth);
    }
    std::cout << std::setprecision(10) << "scenario " << cfg.scenario.name << ": " << r.steps << " steps to t="
              << r.reports.back().t << "\n  E(0)=" << r.reports.front().energy << "  max E=" << e_max
              << "  E(end)=" << r.reports.back().energy << "\n  min depth=" << depth
              << "  relative mass change=" << (r.final_mass - r.initial_mass) / r.initial_mass << '\n';
    if (!outcome.bundle.empty()) std::cout << "  bundle written to " << outcome.bundle.string() << '\n';
    return exit_ok;
}

struct DispersionArgs {
    std::string set;
    std::optional<double> alpha, beta, gamma, k_min, k_max;
    int n = bq::default_error_samples;
    std::string kind;
    std::string out;
};

bq::ParamSet dispersion_params(const DispersionArgs& a) {
    if (!a.set.empty()) {
        if (a.alpha || a.beta || a.gamma) throw bq::ConfigError("give either --set or --alpha/--beta/--gamma");
        return bq::resolve_params(json(a.set));
    }
    if (!a.alpha || !a.beta || !a.gamma) throw bq::ConfigError("--set or the full triple --alpha --beta --gamma is required");
    bq::ParamSet p;
    p.name = "custom";
    p.alpha_t = *a.alpha;
    p.beta_t = *a.beta;
    p.gamma_t = *a.gamma;
    return p;
}

bq::ErrorKind parse_kind(const std::string& text, bq::ErrorKind fallback) {
    if (text.empty()) return fallback;
    auto k = bq::parse_error_kind(text);
    if (!k) throw bq::ConfigError("--kind must be rel or abs");
    return *k;
}

int do_dispersion(const DispersionArgs& a) {
    const bq::ParamSet p = dispersion_params(a);
    const double k_min = a.k_min.value_or(p.k_min);
    const double k_max = a.k_max ? *a.k_max : p.k_max;
    if (!(k_max > k_min)) throw bq::ConfigError("--kmax must exceed --kmin");
    const bq::ErrorKind kind = parse_kind(a.kind, p.error_kind);
    bq::ErrorCurve curve;
    try {
        curve = bq::error_curve(p, k_min, k_max, a.n, kind);
    } catch (const std::invalid_argument& e) {
        throw bq::ConfigError(e.what());
    }
    if (a.out.empty()) {
        bq::write_error_curve_csv(std::cout, curve, p);
    } else {
        std::ofstream file(a.out);
        if (!file) throw bq::ConfigError("cannot write " + a.out);
        bq::write_error_curve_csv(file, curve, p);
    }
    double max_rel = 0.0;
    for (const auto& s : curve.samples) max_rel = std::max(max_rel, s.rel_err);
    std::cerr << std::setprecision(6) << p.name << " on (" << k_min << ", " << k_max << "]: max "
              << bq::to_string(kind) << " error " << curve.max_error << " at k=" << curve.argmax_k
              << " (max relative " << 100.0 * max_rel << "%)\n";
    return exit_ok;
}

struct FitArgs {
    double k_min = 0.0;
    double k_max = 0.0;
    std::string kind = "rel";
    bool alpha_free = false;
    int resolution = 41;
    int levels = 5;
};

int do_fit(const FitArgs& a) {
    bq::FitOptions opt;
    opt.k_min = a.k_min;
    opt.k_max = a.k_max;
    opt.kind = parse_kind(a.kind, bq::ErrorKind::relative);
    opt.alpha_free = a.alpha_free;
    opt.sweep_resolution = a.resolution;
    opt.levels = a.levels;
    bq::FitResult r;
    try {
        r = bq::fit_params(opt);
    } catch (const std::invalid_argument& e) {
        throw bq::ConfigError(e.what());
    }
    json out = bq::to_json(r.params);
    out["max_error"] = r.max_error;
    out["max_rel_error"] = r.max_rel_error;
    out["evaluations"] = r.evaluations;
    std::cout << out.dump(2) << '\n';
    return exit_ok;
}

int do_check(const Common& c) {
    const json doc = base_document(c);
    const bq::RunConfig cfg = bq::parse_run_config(doc);
    const double h = c.hs.empty() ? cfg.h : c.hs.front();
    bool ok = true;
    for (const auto& line : bq::cmd_check(cfg.scenario, h)) {
        std::printf("%-48s %12.4e  tol %.1e  %s\n", line.name.c_str(), line.value, line.tolerance,
                    line.pass ? "PASS" : "FAIL");
        ok = ok && line.pass;
    }
    return ok ? exit_ok : exit_check;
}

int do_converge(const Common& c, std::optional<std::size_t> gauge) {
    json doc = base_document(c);
    doc.erase("output_dir");
    const bq::RunConfig cfg = bq::parse_run_config(doc);
    bq::ConvergeOptions opt;
    opt.hs = c.hs;
    opt.t_end = cfg.scenario.t_end;
    opt.gauge = gauge;
    opt.output_dir = c.out;
    opt.stepper = cfg.stepper;
    const bq::ConvergenceTable table = bq::cmd_converge(cfg.scenario, opt);
    for (const auto& w : table.warnings) std::cerr << "warning: " << w << '\n';
    if (table.rows.empty()) return exit_ok;
    std::printf("%12s %12s %16s\n", "h_a", "h_b", "L2 difference");
    for (const auto& row : table.rows)
        std::printf("%12.6g %12.6g %16.8e\n", row.h_coarse, row.h_fine, row.l2_difference);
    if (!table.monotone()) {
        std::cerr << "differences do not decrease monotonically\n";
        return exit_check;
    }
    return exit_ok;
}

void add_common(CLI::App* cmd, Common& c, bool with_h, bool with_out) {
    cmd->add_option("--config", c.config, "JSON run configuration")->check(CLI::ExistingFile);
    cmd->add_option("--scenario", c.scenario, "builtin scenario: dingemans, spike or cavity");
    cmd->add_option("--set", c.set, "dispersive parameter set (set1..set4)");
    cmd->add_option("--Tend", c.t_end, "end time [s]");
    cmd->add_option("--cfl", c.cfl, "time step as a multiple of h");
    cmd->add_option("--lambda", c.lambda, "artificial diffusion lambda0");
    cmd->add_flag("--adaptive-lambda", c.adaptive, "raise lambda to |dv|/4 where needed");
    cmd->add_option("--stepper", c.stepper, "imex (default) or rk4");
    if (with_h) cmd->add_option("--h", c.hs, "grid spacing [m]");
    if (with_out) cmd->add_option("--out", c.out, "output directory");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entropy-stable dispersive shallow-water solver"};
    app.set_help_flag("--help", "print this help and exit");
    app.set_version_flag("--version", std::string(bq::version()));
    app.require_subcommand(1);

    Common run_args;
    auto* run = app.add_subcommand("run", "integrate a scenario and write a result bundle");
    add_common(run, run_args, true, true);

    DispersionArgs disp_args;
    auto* disp = app.add_subcommand("dispersion", "tabulate the dispersion error of a parameter set");
    disp->add_option("--set", disp_args.set, "parameter set name");
    disp->add_option("--alpha", disp_args.alpha);
    disp->add_option("--beta", disp_args.beta);
    disp->add_option("--gamma", disp_args.gamma);
    disp->add_option("--kmin", disp_args.k_min, "lower end of the k range (excluded)");
    disp->add_option("--kmax", disp_args.k_max, "upper end of the k range");
    disp->add_option("--n", disp_args.n, "number of samples")->check(CLI::PositiveNumber);
    disp->add_option("--kind", disp_args.kind, "rel or abs");
    disp->add_option("--out", disp_args.out, "CSV file (default: stdout)");

    FitArgs fit_args;
    auto* fit = app.add_subcommand("fit", "minimax fit of the dispersive parameters");
    fit->add_option("--kmin", fit_args.k_min);
    fit->add_option("--kmax", fit_args.k_max)->required();
    fit->add_option("--kind", fit_args.kind, "rel or abs");
    fit->add_flag("--alpha-free", fit_args.alpha_free, "also fit alpha (otherwise alpha = 0)");
    fit->add_option("--resolution", fit_args.resolution, "sweep points per axis and level");
    fit->add_option("--levels", fit_args.levels, "refinement levels");

    Common check_args;
    auto* check = app.add_subcommand("check", "well-balance and entropy sanity checks");
    add_common(check, check_args, true, false);

    Common conv_args;
    std::optional<std::size_t> gauge;
    auto* conv = app.add_subcommand("converge", "gauge-series differences between grid spacings");
    add_common(conv, conv_args, true, true);
    conv->add_option("--gauge", gauge, "compare a single gauge (0-based index)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_config;
    }

    try {
        if (*run) return do_run(run_args);
        if (*disp) return do_dispersion(disp_args);
        if (*fit) return do_fit(fit_args);
        if (*check) return do_check(check_args);
        if (*conv) return do_converge(conv_args, gauge);
    } catch (const bq::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return exit_config;
    } catch (const bq::BlowUp& e) {
        std::cerr << "run aborted: " << e.what() << '\n';
        return exit_blowup;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return exit_ok;
}
