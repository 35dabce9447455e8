#include <gtest/gtest.h>

#include <cmath>

#include "boussinesq/errors.hpp"
#include "boussinesq/grid.hpp"
#include "helpers.hpp"

using namespace boussinesq;
using testing_support::eps;

TEST(Grid, RejectsTooFewCells) {
    EXPECT_THROW(Grid(0.0, 1.0, 7), std::invalid_argument);
    EXPECT_THROW(Grid(1.0, 1.0, 16), std::invalid_argument);
    EXPECT_NO_THROW(Grid(0.0, 1.0, 8));
}

TEST(Grid, NodesAndSpacing) {
    const Grid g(-138.0, 46.0, 1840);
    EXPECT_NEAR(g.h(), 0.1, 1e-15);
    EXPECT_DOUBLE_EQ(g.x(0), -138.0);
    EXPECT_NEAR(g.x(1839), 45.9, 1e-12);
    EXPECT_EQ(g.next(1839), 0u);
    EXPECT_EQ(g.prev(0), 1839u);
}

TEST(Grid, WithSpacingRoundsCellCount) {
    const Grid g = Grid::with_spacing(-138.0, 46.0, 0.02);
    EXPECT_EQ(g.size(), 9200u);
    EXPECT_THROW(Grid::with_spacing(0.0, 1.0, 0.5), std::invalid_argument);
    EXPECT_THROW(Grid::with_spacing(0.0, 1.0, -0.1), std::invalid_argument);
}

TEST(Operators, DifferencesWrapPeriodically) {
    const Field a{1, 2, 4, 8, 16, 32, 64, 128};
    const Field dp = delta_plus(a), dm = delta_minus(a);
    EXPECT_EQ(dp[0], 1.0);
    EXPECT_EQ(dp[7], 1.0 - 128.0);
    EXPECT_EQ(dm[0], 1.0 - 128.0);
    EXPECT_EQ(dm[3], 4.0);
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(dm[(i + 1) % 8], dp[i]);
}

TEST(Operators, SecondDifferenceOfQuadraticIsExact) {
    const Grid g(0.0, 1.0, 20);
    Field q(g.size());
    for (std::size_t i = 0; i < q.size(); ++i) q[i] = g.x(i) * g.x(i);
    const Field d2q = d2(q, g.h());
    for (std::size_t i = 1; i + 1 < q.size(); ++i) EXPECT_NEAR(d2q[i], 2.0, 1e-10);
}

TEST(Operators, CentralDifferenceIsAverageOfOneSided) {
    std::mt19937_64 rng(1);
    const Grid g(0.0, 2.0, 32);
    const Field a = testing_support::uniform(rng, g.size(), -1, 1);
    const Field c = d_zero(a, g.h()), p = d_plus(a, g.h()), m = d_minus(a, g.h());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(c[i], 0.5 * (p[i] + m[i]), 1e-13);
}

TEST(Operators, MeansAtInterfaces) {
    const Field a{1, 3, 5, 7, 9, 11, 13, 15};
    const Field m = mean(a), ms = mean_sq(a);
    EXPECT_EQ(m[0], 2.0);
    EXPECT_EQ(m[7], 8.0);
    EXPECT_EQ(ms[0], 5.0);
    EXPECT_EQ(ms[7], 0.5 * (225.0 + 1.0));
}

TEST(Operators, SummationByParts) {
    std::mt19937_64 rng(2);
    const Grid g(0.0, 3.0, 64);
    for (int trial = 0; trial < 20; ++trial) {
        const Field a = testing_support::uniform(rng, g.size(), -1, 1);
        const Field b = testing_support::uniform(rng, g.size(), -1, 1);
        const Field dpb = d_plus(b, g.h()), dma = d_minus(a, g.h());
        double lhs = 0.0, rhs = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            lhs += a[i] * dpb[i];
            rhs -= dma[i] * b[i];
            scale += std::abs(a[i] * dpb[i]) + std::abs(dma[i] * b[i]);
        }
        EXPECT_LE(std::abs(lhs - rhs), 8 * eps * scale);
    }
}

TEST(Operators, DiscreteProductRule) {
    // Delta+(a b) = mean(a) Delta+ b + mean(b) Delta+ a holds exactly in exact arithmetic
    std::mt19937_64 rng(3);
    const Field a = testing_support::uniform(rng, 50, -2, 2);
    const Field b = testing_support::uniform(rng, 50, -2, 2);
    const Field ab = hadamard(a, b);
    const Field lhs = delta_plus(ab);
    const Field ma = mean(a), mb = mean(b), da = delta_plus(a), db = delta_plus(b);
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double rhs = ma[i] * db[i] + mb[i] * da[i];
        const double scale = std::abs(ab[i]) + std::abs(ab[(i + 1) % 50]) + std::abs(ma[i] * db[i]) +
                             std::abs(mb[i] * da[i]);
        EXPECT_LE(std::abs(lhs[i] - rhs), 4 * eps * scale);
    }
}

TEST(Operators, DifferenceOfConstantVanishes) {
    const Field c(16, 0.37);
    EXPECT_EQ(max_abs(d_plus(c, 0.1)), 0.0);
    EXPECT_EQ(max_abs(d2(c, 0.1)), 0.0);
}

TEST(State, PositivityIsEnforced) {
    try {
        require_positive_depth(Field{1.0, 0.5, 0.0, 2.0});
        FAIL() << "expected NonpositiveDepth";
    } catch (const NonpositiveDepth& e) {
        EXPECT_EQ(e.index(), 2u);
        EXPECT_EQ(e.depth(), 0.0);
    }
    EXPECT_THROW(require_positive_depth(Field{1.0, std::nan("")}), NonpositiveDepth);
    EXPECT_THROW((State{Field{1.0, -1.0}, Field{0.0, 0.0}}.velocity()), NonpositiveDepth);
}

TEST(State, VelocityRoundTrip) {
    const Field d{0.5, 1.0, 2.0}, v{0.25, -1.0, 0.0};
    const State s = State::from_velocity(d, v);
    EXPECT_EQ(s.P[0], 0.125);
    const Field back = s.velocity();
    for (std::size_t i = 0; i < 3; ++i) EXPECT_DOUBLE_EQ(back[i], v[i]);
    EXPECT_EQ(s.min_depth(), 0.5);
}

TEST(Bathymetry, StillDepth) {
    const Bathymetry b{Field{0.0, 0.6, 0.2}, 0.8};
    const Field hs = b.still_depth();
    EXPECT_DOUBLE_EQ(hs[0], 0.8);
    EXPECT_DOUBLE_EQ(hs[1], 0.2);
    EXPECT_DOUBLE_EQ(hs[2], 0.6);
}
