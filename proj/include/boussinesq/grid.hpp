#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace boussinesq {

/// One value per grid node. Interface quantities a_{i+1/2} are stored at index i.
using Field = std::vector<double>;
using FieldView = std::span<const double>;

/// Periodic uniform 1-D grid with nodes x_i = x_left + i*h, i = 0..n-1.
class Grid {
public:
    static constexpr std::size_t min_cells = 8;

    /// Throws std::invalid_argument unless x_right > x_left and n_cells >= min_cells.
    Grid(double x_left, double x_right, std::size_t n_cells);

    /// Grid whose spacing is as close as possible to `h` while covering [x_left, x_right).
    static Grid with_spacing(double x_left, double x_right, double h);

    double x_left() const noexcept { return x_left_; }
    double x_right() const noexcept { return x_right_; }
    double length() const noexcept { return x_right_ - x_left_; }
    std::size_t size() const noexcept { return n_; }
    double h() const noexcept { return h_; }
    double x(std::size_t i) const noexcept { return x_left_ + static_cast<double>(i) * h_; }
    std::vector<double> nodes() const;

    std::size_t next(std::size_t i) const noexcept { return i + 1 == n_ ? 0 : i + 1; }
    std::size_t prev(std::size_t i) const noexcept { return i == 0 ? n_ - 1 : i - 1; }

    bool operator==(const Grid&) const = default;

private:
    double x_left_;
    double x_right_;
    std::size_t n_;
    double h_;
};

/// Conserved variables: depth d and depth-integrated momentum P.
struct State {
    Field d;
    Field P;

    std::size_t size() const noexcept { return d.size(); }
    /// v = P/d. Throws NonpositiveDepth if any d_i <= 0.
    Field velocity() const;
    double min_depth() const;
    /// Builds P = d*v.
    static State from_velocity(Field d, const Field& v);
};

struct Bathymetry {
    Field b;
    double H = 0.0;

    /// h_s = H - b.
    Field still_depth() const;
};

/// Throws NonpositiveDepth at the first node with d <= 0 (or NaN).
void require_positive_depth(FieldView d);

// Difference and averaging operators, all periodic.

Field delta_plus(FieldView a);
Field delta_minus(FieldView a);
Field d_plus(FieldView a, double h);
Field d_minus(FieldView a, double h);
Field d_zero(FieldView a, double h);
/// D2 = D+ D-.
Field d2(FieldView a, double h);
/// (a_i + a_{i+1})/2 stored at index i.
Field mean(FieldView a);
/// (a_i^2 + a_{i+1}^2)/2 stored at index i.
Field mean_sq(FieldView a);

// Elementwise helpers used throughout the scheme.

Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(double s, const Field& a);
Field hadamard(FieldView a, FieldView b);
double max_abs(FieldView a);
double sum(FieldView a);

}  // namespace boussinesq
