#include "boussinesq/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "boussinesq/errors.hpp"

namespace boussinesq {

std::string_view to_string(ErrorKind kind) { return kind == ErrorKind::relative ? "rel" : "abs"; }

std::optional<ErrorKind> parse_error_kind(std::string_view text) {
    if (text == "rel" || text == "relative") return ErrorKind::relative;
    if (text == "abs" || text == "absolute") return ErrorKind::absolute;
    return std::nullopt;
}

const std::vector<ParamSet>& builtin_param_sets() {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    static const std::vector<ParamSet> sets = {
        {"set1", -1.0 / 3.0, 0.0, 0.0, 0.0, 1.0, ErrorKind::relative},
        {"set2", 0.0004040404040404049, 0.49292929292929294, 0.15707070707070708, 0.0, two_pi,
         ErrorKind::relative},
        {"set3", 0.0, 0.27946992481203003, 0.0521077694235589, 0.0, 4.0 * two_pi, ErrorKind::relative},
        {"set4", 0.0, 0.2308939393939394, 0.04034343434343434, 0.0, two_pi, ErrorKind::absolute},
    };
    return sets;
}

std::optional<ParamSet> find_param_set(std::string_view name) {
    for (const auto& p : builtin_param_sets())
        if (p.name == name) return p;
    return std::nullopt;
}

double omega_euler(double k) { return std::sqrt(k * std::tanh(k)); }

double omega_series3(double k) {
    const double k2 = k * k;
    return k * (1.0 - k2 / 6.0 + k2 * k2 / 15.0);
}

CharQuadratic characteristic(double k, const ParamSet& p) {
    const double k2 = k * k;
    const double k3 = k2 * k;
    return {1.0 + p.beta_t * k2, -(p.alpha_t + p.beta_t * p.alpha_t * k2 + p.gamma_t) * k3,
            -k2 + p.gamma_t * p.alpha_t * k3 * k3};
}

double omega_model(double k, const ParamSet& p) {
    const auto [a, b, c] = characteristic(k, p);
    const double disc = b * b - 4.0 * a * c;
    if (!(disc >= 0.0)) throw ComplexRoots(k);
    const double s = std::sqrt(disc);
    // larger root, computed without cancellation
    if (-b >= 0.0) return (-b + s) / (2.0 * a);
    return 2.0 * c / (-b - s);
}

namespace {

void check_range(double k_min, double k_max, int n) {
    if (!(k_min >= 0.0) || !(k_max > k_min)) throw std::invalid_argument("error curve needs 0 <= k_min < k_max");
    if (n < 100) throw std::invalid_argument("error curve needs at least 100 samples");
}

double sample_k(double k_min, double k_max, int n, int j) {
    return k_min + (k_max - k_min) * static_cast<double>(j) / static_cast<double>(n);
}

}  // namespace

ErrorCurve error_curve(const ParamSet& p, double k_min, double k_max, int n_samples, ErrorKind kind) {
    check_range(k_min, k_max, n_samples);
    ErrorCurve curve;
    curve.samples.reserve(static_cast<std::size_t>(n_samples));
    for (int j = 1; j <= n_samples; ++j) {
        const double k = sample_k(k_min, k_max, n_samples, j);
        const double we = omega_euler(k);
        const double wm = omega_model(k, p);
        const double abs_err = std::abs(wm - we);
        const ErrorSample s{k, we, wm, abs_err / we, abs_err};
        const double e = kind == ErrorKind::relative ? s.rel_err : s.abs_err;
        if (e > curve.max_error) {
            curve.max_error = e;
            curve.argmax_k = k;
        }
        curve.samples.push_back(s);
    }
    return curve;
}

DimensionalParams dimensionalize(const ParamSet& p, double d0, double g) {
    const double c0 = std::sqrt(g * d0);
    return {p.alpha_t * c0 * d0 * d0, p.beta_t * d0 * d0 * d0, p.gamma_t * c0 * d0 * d0 * d0};
}

unsigned worker_threads(unsigned requested) {
    unsigned n = requested;
    if (n == 0) {
        n = std::max(1u, std::thread::hardware_concurrency());
        if (const char* env = std::getenv("BOUSSINESQ_THREADS")) {
            const long cap = std::strtol(env, nullptr, 10);
            if (cap > 0) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
        }
    }
    return std::max(1u, n);
}

namespace {

struct Candidate {
    double value = std::numeric_limits<double>::infinity();
    long index = -1;
};

/// Max error of one parameter triple over precomputed samples. Stops early once the
/// running maximum exceeds `cutoff`; the returned value is then only a lower bound.
double objective(const ParamSet& p, const std::vector<double>& ks, const std::vector<double>& euler,
                 ErrorKind kind, double cutoff) {
    double worst = 0.0;
    // largest errors sit at the high-k end for every admissible set
    for (std::size_t j = ks.size(); j-- > 0;) {
        const auto [a, b, c] = characteristic(ks[j], p);
        const double disc = b * b - 4.0 * a * c;
        if (!(disc >= 0.0)) return std::numeric_limits<double>::infinity();
        const double s = std::sqrt(disc);
        const double w = -b >= 0.0 ? (-b + s) / (2.0 * a) : 2.0 * c / (-b - s);
        double e = std::abs(w - euler[j]);
        if (kind == ErrorKind::relative) e /= euler[j];
        if (e > worst) {
            worst = e;
            if (worst > cutoff) return worst;
        }
    }
    return worst;
}

struct Axis {
    double lo, hi;
    int points;  // 1 for a pinned axis

    double at(int i) const { return points == 1 ? lo : lo + (hi - lo) * i / (points - 1); }
    double step() const { return points == 1 ? 0.0 : (hi - lo) / (points - 1); }
};

}  // namespace

FitResult fit_params(const FitOptions& o) {
    check_range(o.k_min, o.k_max, o.n_samples);
    if (o.sweep_resolution < 3 || o.levels < 1) throw std::invalid_argument("fit needs resolution >= 3, levels >= 1");

    std::vector<double> ks(static_cast<std::size_t>(o.n_samples)), euler(ks.size());
    for (int j = 1; j <= o.n_samples; ++j) {
        ks[j - 1] = sample_k(o.k_min, o.k_max, o.n_samples, j);
        euler[j - 1] = omega_euler(ks[j - 1]);
    }

    const int r = o.sweep_resolution;
    Axis alpha{0.0, o.alpha_max, o.alpha_free ? r : 1};
    Axis beta{0.0, o.beta_max, r};
    Axis gamma{0.0, o.gamma_max, r};
    const unsigned nthreads = worker_threads(o.threads);

    FitResult result;
    ParamSet best{"fit", 0.0, 0.0, 0.0, o.k_min, o.k_max, o.kind};
    double best_value = std::numeric_limits<double>::infinity();

    for (int level = 0; level < o.levels; ++level) {
        const long total = static_cast<long>(alpha.points) * beta.points * gamma.points;
        auto decode = [&](long idx) {
            ParamSet p = best;
            p.gamma_t = gamma.at(static_cast<int>(idx % gamma.points));
            idx /= gamma.points;
            p.beta_t = beta.at(static_cast<int>(idx % beta.points));
            idx /= beta.points;
            p.alpha_t = alpha.at(static_cast<int>(idx));
            return p;
        };

        std::vector<Candidate> per_thread(nthreads);
        auto worker = [&](unsigned t) {
            Candidate local;
            local.value = best_value;  // carry the previous level's best as the pruning bound
            for (long idx = t; idx < total; idx += nthreads) {
                const double v = objective(decode(idx), ks, euler, o.kind, local.value);
                if (v < local.value) local = {v, idx};
            }
            per_thread[t] = local;
        };
        if (nthreads == 1) {
            worker(0);
        } else {
            std::vector<std::jthread> pool;
            for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker, t);
        }
        result.evaluations += total;

        Candidate winner;
        for (const auto& c : per_thread)
            if (c.index >= 0 && (c.value < winner.value || (c.value == winner.value && c.index < winner.index)))
                winner = c;
        if (winner.index >= 0) {
            best = decode(winner.index);
            best_value = winner.value;
        }

        // shrink each free axis to two cells around the winner
        auto refine = [](Axis& ax, double centre) {
            if (ax.points == 1) return;
            const double half = 2.0 * ax.step();
            ax.lo = std::max(0.0, centre - half);
            ax.hi = centre + half;
        };
        refine(alpha, best.alpha_t);
        refine(beta, best.beta_t);
        refine(gamma, best.gamma_t);
    }

    result.params = best;
    result.max_error = best_value;
    result.max_rel_error = error_curve(best, o.k_min, o.k_max, o.n_samples, ErrorKind::relative).max_error;
    return result;
}

}  // namespace boussinesq
