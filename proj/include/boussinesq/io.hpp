#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "boussinesq/dispersion.hpp"
#include "boussinesq/integrator.hpp"
#include "boussinesq/scenarios.hpp"

namespace boussinesq {

std::string_view version();

/// A fully resolved run: the scenario with every override applied, plus the
/// grid spacing and output selection.
struct RunConfig {
    Scenario scenario;
    double h = 0.1;
    std::vector<double> snapshot_times;
    std::string output_dir;
    /// The semi-implicit step is the production scheme; rk4 is the verification stepper.
    Stepper stepper = Stepper::imex;

    bool operator==(const RunConfig&) const = default;
};

/// Checks the document against schema/run_config.schema.json (unknown keys, types, ranges)
/// and resolves named scenarios and parameter sets. Throws ConfigError; nothing is
/// computed before validation succeeds.
RunConfig parse_run_config(const nlohmann::json& doc);
RunConfig load_run_config(const std::filesystem::path& path);
nlohmann::json to_json(const RunConfig& cfg);

/// Parameter set given by name ("set3") or as an explicit triple. Throws ConfigError.
ParamSet resolve_params(const nlohmann::json& spec);
nlohmann::json to_json(const ParamSet& p);

/// Shortest representation that round-trips exactly, so CSV values read back bit-identical.
std::string format_double(double x);

void write_gauges_csv(std::ostream& out, const GaugeSeries& series);
void write_snapshot_csv(std::ostream& out, const Grid& grid, const Bathymetry& bathy, const Snapshot& snap);
void write_steps_csv(std::ostream& out, const std::vector<StepReport>& reports);
void write_error_curve_csv(std::ostream& out, const ErrorCurve& curve, const ParamSet& p);

/// File name used for the snapshot requested at time t, e.g. "snapshot_t20.csv".
std::string snapshot_file_name(double requested_t);

struct RunOutcome {
    RunResult result;
    std::filesystem::path bundle;  ///< empty if nothing was written
};

/// Builds the model, integrates, and (if output_dir is set) writes gauges.csv,
/// steps.csv, one snapshot CSV per requested time and manifest.json.
/// Throws ConfigError before any output exists, BlowUp during the run.
RunOutcome cmd_run(const RunConfig& cfg);

struct CheckLine {
    std::string name;
    double value;
    double tolerance;
    bool pass;
};

/// Shuffle identity on random states over the scenario's bottom, 1000 IMEX steps of
/// lake at rest, and the sign of the diffusion entropy production.
std::vector<CheckLine> cmd_check(const Scenario& s, double h, unsigned seed = 12345);

struct ConvergenceRow {
    double h_coarse;
    double h_fine;
    double l2_difference;
};

struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;
    std::vector<std::string> warnings;

    /// True when every difference is smaller than the one before it.
    bool monotone() const;
};

struct ConvergeOptions {
    std::vector<double> hs;
    double t_end = 20.0;
    std::optional<std::size_t> gauge;  ///< all gauges when empty
    std::string output_dir;            ///< one subdirectory per h when set
    unsigned threads = 0;
    Stepper stepper = Stepper::imex;
};

/// Runs the scenario once per spacing (concurrently), resamples the gauge series to
/// a common time axis and reports the discrete L2-in-time difference between
/// consecutive entries of hs.
ConvergenceTable cmd_converge(const Scenario& s, const ConvergeOptions& options);

/// L2-in-time difference of two series, resampled to the coarser of the two time
/// steps over their common interval.
double gauge_l2_difference(const GaugeSeries& a, const GaugeSeries& b, std::optional<std::size_t> gauge);

}  // namespace boussinesq
