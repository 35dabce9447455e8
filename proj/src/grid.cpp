#include "boussinesq/grid.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

#include "boussinesq/errors.hpp"

namespace boussinesq {

Grid::Grid(double x_left, double x_right, std::size_t n_cells)
    : x_left_(x_left), x_right_(x_right), n_(n_cells), h_(0.0) {
    if (!(x_right > x_left)) throw std::invalid_argument("grid requires x_right > x_left");
    if (n_cells < min_cells)
        throw std::invalid_argument("grid requires at least " + std::to_string(min_cells) + " cells");
    h_ = (x_right - x_left) / static_cast<double>(n_cells);
}

Grid Grid::with_spacing(double x_left, double x_right, double h) {
    if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("grid spacing must be positive");
    const double cells = std::round((x_right - x_left) / h);
    if (cells < static_cast<double>(min_cells))
        throw std::invalid_argument("grid spacing too coarse for the domain");
    return Grid(x_left, x_right, static_cast<std::size_t>(cells));
}

std::vector<double> Grid::nodes() const {
    std::vector<double> xs(n_);
    for (std::size_t i = 0; i < n_; ++i) xs[i] = x(i);
    return xs;
}

void require_positive_depth(FieldView d) {
    for (std::size_t i = 0; i < d.size(); ++i)
        if (!(d[i] > 0.0)) throw NonpositiveDepth(i, d[i]);
}

Field State::velocity() const {
    require_positive_depth(d);
    Field v(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) v[i] = P[i] / d[i];
    return v;
}

double State::min_depth() const { return d.empty() ? 0.0 : *std::min_element(d.begin(), d.end()); }

State State::from_velocity(Field d, const Field& v) {
    Field P(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) P[i] = d[i] * v[i];
    return State{std::move(d), std::move(P)};
}

Field Bathymetry::still_depth() const {
    Field hs(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) hs[i] = H - b[i];
    return hs;
}

Field delta_plus(FieldView a) {
    const std::size_t n = a.size();
    Field out(n);
    for (std::size_t i = 0; i + 1 < n; ++i) out[i] = a[i + 1] - a[i];
    if (n > 0) out[n - 1] = a[0] - a[n - 1];
    return out;
}

Field delta_minus(FieldView a) {
    const std::size_t n = a.size();
    Field out(n);
    if (n > 0) out[0] = a[0] - a[n - 1];
    for (std::size_t i = 1; i < n; ++i) out[i] = a[i] - a[i - 1];
    return out;
}

Field d_plus(FieldView a, double h) {
    Field out = delta_plus(a);
    for (double& x : out) x /= h;
    return out;
}

Field d_minus(FieldView a, double h) {
    Field out = delta_minus(a);
    for (double& x : out) x /= h;
    return out;
}

Field d_zero(FieldView a, double h) {
    const Field p = d_plus(a, h);
    const Field m = d_minus(a, h);
    Field out(a.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (p[i] + m[i]) / 2.0;
    return out;
}

Field d2(FieldView a, double h) { return d_plus(d_minus(a, h), h); }

Field mean(FieldView a) {
    const std::size_t n = a.size();
    Field out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = (a[(i + 1) % n] + a[i]) / 2.0;
    return out;
}

Field mean_sq(FieldView a) {
    const std::size_t n = a.size();
    Field out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = a[(i + 1) % n];
        out[i] = (r * r + a[i] * a[i]) / 2.0;
    }
    return out;
}

Field operator+(const Field& a, const Field& b) {
    assert(a.size() == b.size());
    Field out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

Field operator-(const Field& a, const Field& b) {
    assert(a.size() == b.size());
    Field out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

Field operator*(double s, const Field& a) {
    Field out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = s * a[i];
    return out;
}

Field hadamard(FieldView a, FieldView b) {
    assert(a.size() == b.size());
    Field out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
    return out;
}

double max_abs(FieldView a) {
    double m = 0.0;
    for (double x : a) m = std::max(m, std::abs(x));
    return m;
}

double sum(FieldView a) {
    double s = 0.0;
    for (double x : a) s += x;
    return s;
}

}  // namespace boussinesq
