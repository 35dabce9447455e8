#pragma once

#include <cmath>
#include <limits>
#include <random>

#include "boussinesq/grid.hpp"

namespace testing_support {

using boussinesq::Field;

inline Field uniform(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    Field f(n);
    for (double& x : f) x = dist(rng);
    return f;
}

/// Periodic field made of a few low Fourier modes, for "smooth random" data.
inline Field smooth(std::mt19937_64& rng, const boussinesq::Grid& grid, double mean, double amplitude,
                    int modes = 3) {
    std::uniform_real_distribution<double> coef(-1.0, 1.0), phase(0.0, 2.0 * M_PI);
    Field f(grid.size(), mean);
    for (int m = 1; m <= modes; ++m) {
        const double a = amplitude * coef(rng) / m;
        const double p = phase(rng);
        for (std::size_t i = 0; i < f.size(); ++i)
            f[i] += a * std::sin(2.0 * M_PI * m * (grid.x(i) - grid.x_left()) / grid.length() + p);
    }
    return f;
}

constexpr double eps = std::numeric_limits<double>::epsilon();

}  // namespace testing_support
