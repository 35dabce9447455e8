#pragma once

#include <cstddef>
#include <vector>

#include "boussinesq/grid.hpp"

namespace boussinesq {

/// Square matrix whose nonzeros lie on the diagonals -bw..+bw with periodic wrap,
/// i.e. A(i, (i+o) mod n) for |o| <= bw. Entry (i, o) is the coefficient that row i
/// applies to node i+o.
class CyclicBandedMatrix {
public:
    CyclicBandedMatrix(std::size_t n, int bandwidth);

    static CyclicBandedMatrix identity(std::size_t n, int bandwidth = 0);
    static CyclicBandedMatrix diagonal(FieldView diag, int bandwidth = 0);

    std::size_t size() const noexcept { return n_; }
    int bandwidth() const noexcept { return bw_; }

    double& at(std::size_t row, int offset) { return data_[index(row, offset)]; }
    double at(std::size_t row, int offset) const { return data_[index(row, offset)]; }

    /// Dense lookup A(row, col); zero outside the band.
    double operator()(std::size_t row, std::size_t col) const;

    Field multiply(FieldView x) const;

    /// this + scale * other, widening the band if needed.
    CyclicBandedMatrix plus(const CyclicBandedMatrix& other, double scale = 1.0) const;

    bool is_symmetric() const;
    double max_abs_entry() const;

    bool operator==(const CyclicBandedMatrix&) const = default;

private:
    std::size_t index(std::size_t row, int offset) const {
        return row * static_cast<std::size_t>(2 * bw_ + 1) + static_cast<std::size_t>(offset + bw_);
    }

    std::size_t n_;
    int bw_;
    std::vector<double> data_;
};

/// LU factorisation of a cyclic banded matrix.
///
/// The trailing bw rows/columns that carry the periodic wrap are split off: the
/// leading (n-bw)x(n-bw) block is a plain band matrix factored without pivoting and
/// the wrap is folded into a bw x bw Schur complement. Cost O(n bw^2). The leading
/// block must be nonsingular without pivoting, which holds for the diagonally
/// dominant and positive-real matrices the time stepper produces.
class CyclicBandedLU {
public:
    /// Throws SingularMatrix on a vanishing pivot.
    explicit CyclicBandedLU(const CyclicBandedMatrix& A);

    Field solve(FieldView rhs) const;

private:
    void band_solve(std::vector<double>& x) const;

    std::size_t n_;
    std::size_t m_;  // size of the band block
    int p_;
    std::vector<double> band_;   // m_ x (2p+1), LU of the band block
    std::vector<double> z_;      // p columns of length m: A11^{-1} A12
    std::vector<double> a21_;    // p rows of length m
    std::vector<double> schur_;  // p x p, LU with partial pivoting
    std::vector<int> schur_piv_;
};

/// Solves A x = rhs. In builds without NDEBUG the per-row residual bound
/// |A x - rhs| <= 1e-10 (|A||x| + |rhs|) is verified.
Field cyclic_banded_solve(const CyclicBandedMatrix& A, FieldView rhs);

}  // namespace boussinesq
