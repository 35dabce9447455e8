#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace boussinesq {

enum class ErrorKind { relative, absolute };

std::string_view to_string(ErrorKind kind);
std::optional<ErrorKind> parse_error_kind(std::string_view text);

/// Nondimensional dispersive coefficients (g = d0 = 1) and the range they were tuned for.
struct ParamSet {
    std::string name;
    double alpha_t = 0.0;
    double beta_t = 0.0;
    double gamma_t = 0.0;
    double k_min = 0.0;
    double k_max = 0.0;
    ErrorKind error_kind = ErrorKind::relative;

    bool operator==(const ParamSet&) const = default;
};

/// The four tabulated sets: "set1" .. "set4".
const std::vector<ParamSet>& builtin_param_sets();
std::optional<ParamSet> find_param_set(std::string_view name);

/// sqrt(k tanh k): linear water-wave dispersion in nondimensional units.
double omega_euler(double k);

/// Three-term long-wave expansion k(1 - k^2/6 + k^4/15).
double omega_series3(double k);

/// Coefficients (a, b, c) of the characteristic quadratic a w^2 + b w + c = 0.
struct CharQuadratic {
    double a, b, c;
};
CharQuadratic characteristic(double k, const ParamSet& p);

/// Right-going root of the model's characteristic equation (the branch that tends
/// to +k as k -> 0). Throws ComplexRoots when the discriminant is negative.
double omega_model(double k, const ParamSet& p);

struct ErrorSample {
    double k;
    double omega_euler;
    double omega_model;
    double rel_err;
    double abs_err;
};

struct ErrorCurve {
    double max_error = 0.0;
    double argmax_k = 0.0;
    std::vector<ErrorSample> samples;
};

/// Samples k_j = k_min + j (k_max - k_min)/n for j = 1..n (open at k_min).
/// Throws std::invalid_argument for a bad range or n < 100; propagates ComplexRoots.
ErrorCurve error_curve(const ParamSet& p, double k_min, double k_max, int n_samples, ErrorKind kind);

inline constexpr int default_error_samples = 1000;

struct FitOptions {
    double k_min = 0.0;
    double k_max = 0.0;
    ErrorKind kind = ErrorKind::relative;
    bool alpha_free = false;
    /// Grid points per free axis at every refinement level.
    int sweep_resolution = 41;
    int levels = 5;
    int n_samples = default_error_samples;
    /// Initial search box.
    double alpha_max = 0.1;
    double beta_max = 1.0;
    double gamma_max = 0.5;
    /// Worker threads; 0 reads BOUSSINESQ_THREADS (default: hardware concurrency).
    unsigned threads = 0;
};

struct FitResult {
    ParamSet params;
    double max_error = 0.0;      ///< objective value (of the requested kind)
    double max_rel_error = 0.0;  ///< relative error on the same samples
    long evaluations = 0;
};

/// Minimax fit of (alpha, beta, gamma) by nested coarse-to-fine grid sweeps.
FitResult fit_params(const FitOptions& options);

struct DimensionalParams {
    double alpha, beta, gamma;
};

/// alpha = a sqrt(g d0) d0^2, beta = b d0^3, gamma = c sqrt(g d0) d0^3.
DimensionalParams dimensionalize(const ParamSet& p, double d0, double g);

/// Thread count honouring BOUSSINESQ_THREADS.
unsigned worker_threads(unsigned requested = 0);

}  // namespace boussinesq
