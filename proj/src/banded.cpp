#include "boussinesq/banded.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "boussinesq/errors.hpp"

namespace boussinesq {

CyclicBandedMatrix::CyclicBandedMatrix(std::size_t n, int bandwidth)
    : n_(n), bw_(bandwidth), data_(n * static_cast<std::size_t>(2 * bandwidth + 1), 0.0) {
    if (bandwidth < 0) throw std::invalid_argument("bandwidth must be nonnegative");
    if (n < static_cast<std::size_t>(2 * bandwidth + 2))
        throw std::invalid_argument("cyclic banded matrix too small for its bandwidth");
}

CyclicBandedMatrix CyclicBandedMatrix::identity(std::size_t n, int bandwidth) {
    CyclicBandedMatrix A(n, bandwidth);
    for (std::size_t i = 0; i < n; ++i) A.at(i, 0) = 1.0;
    return A;
}

CyclicBandedMatrix CyclicBandedMatrix::diagonal(FieldView diag, int bandwidth) {
    CyclicBandedMatrix A(diag.size(), bandwidth);
    for (std::size_t i = 0; i < diag.size(); ++i) A.at(i, 0) = diag[i];
    return A;
}

double CyclicBandedMatrix::operator()(std::size_t row, std::size_t col) const {
    const auto n = static_cast<long>(n_);
    long o = static_cast<long>(col) - static_cast<long>(row);
    if (o > n / 2) o -= n;
    if (o < -n / 2) o += n;
    if (std::abs(o) > bw_) return 0.0;
    return at(row, static_cast<int>(o));
}

Field CyclicBandedMatrix::multiply(FieldView x) const {
    Field y(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
        double s = 0.0;
        for (int o = -bw_; o <= bw_; ++o) {
            const std::size_t j = (i + n_ + static_cast<std::size_t>(o + static_cast<int>(n_))) % n_;
            s += at(i, o) * x[j];
        }
        y[i] = s;
    }
    return y;
}

CyclicBandedMatrix CyclicBandedMatrix::plus(const CyclicBandedMatrix& other, double scale) const {
    if (other.n_ != n_) throw std::invalid_argument("matrix size mismatch");
    CyclicBandedMatrix out(n_, std::max(bw_, other.bw_));
    for (std::size_t i = 0; i < n_; ++i) {
        for (int o = -bw_; o <= bw_; ++o) out.at(i, o) += at(i, o);
        for (int o = -other.bw_; o <= other.bw_; ++o) out.at(i, o) += scale * other.at(i, o);
    }
    return out;
}

bool CyclicBandedMatrix::is_symmetric() const {
    for (std::size_t i = 0; i < n_; ++i)
        for (int o = 1; o <= bw_; ++o) {
            const std::size_t j = (i + static_cast<std::size_t>(o)) % n_;
            if (at(i, o) != at(j, -o)) return false;
        }
    return true;
}

double CyclicBandedMatrix::max_abs_entry() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
}

CyclicBandedLU::CyclicBandedLU(const CyclicBandedMatrix& A)
    : n_(A.size()), m_(A.size() - static_cast<std::size_t>(A.bandwidth())), p_(A.bandwidth()) {
    const std::size_t p = static_cast<std::size_t>(p_);
    const std::size_t w = 2 * p + 1;
    band_.assign(m_ * w, 0.0);
    z_.assign(p * m_, 0.0);
    a21_.assign(p * m_, 0.0);
    schur_.assign(p * p, 0.0);
    schur_piv_.assign(p, 0);

    auto band = [&](std::size_t i, std::size_t j) -> double& { return band_[i * w + (j + p - i)]; };

    for (std::size_t i = 0; i < n_; ++i) {
        for (int o = -p_; o <= p_; ++o) {
            const std::size_t j = (i + n_ + static_cast<std::size_t>(o + static_cast<int>(n_))) % n_;
            const double v = A.at(i, o);
            if (i < m_ && j < m_) band(i, j) += v;
            else if (i < m_) z_[(j - m_) * m_ + i] += v;  // A12, overwritten by A11^{-1} A12 below
            else if (j < m_) a21_[(i - m_) * m_ + j] += v;
            else schur_[(i - m_) * p + (j - m_)] += v;
        }
    }

    const double tiny = 1e-14 * std::max(A.max_abs_entry(), std::numeric_limits<double>::min());
    for (std::size_t k = 0; k < m_; ++k) {
        const double piv = band(k, k);
        if (!(std::abs(piv) > tiny)) throw SingularMatrix("zero pivot in band block at row " + std::to_string(k));
        const std::size_t last = std::min(k + p, m_ - 1);
        for (std::size_t r = k + 1; r <= last; ++r) {
            const double l = band(r, k) / piv;
            band(r, k) = l;
            for (std::size_t c = k + 1; c <= last; ++c) band(r, c) -= l * band(k, c);
        }
    }

    for (std::size_t c = 0; c < p; ++c) {
        std::vector<double> col(z_.begin() + static_cast<long>(c * m_), z_.begin() + static_cast<long>((c + 1) * m_));
        band_solve(col);
        std::copy(col.begin(), col.end(), z_.begin() + static_cast<long>(c * m_));
    }
    for (std::size_t r = 0; r < p; ++r)
        for (std::size_t c = 0; c < p; ++c) {
            double s = 0.0;
            for (std::size_t j = 0; j < m_; ++j) s += a21_[r * m_ + j] * z_[c * m_ + j];
            schur_[r * p + c] -= s;
        }

    // dense LU with partial pivoting on the (at most 2x2) Schur complement
    for (std::size_t k = 0; k < p; ++k) {
        std::size_t piv = k;
        for (std::size_t r = k + 1; r < p; ++r)
            if (std::abs(schur_[r * p + k]) > std::abs(schur_[piv * p + k])) piv = r;
        schur_piv_[k] = static_cast<int>(piv);
        if (piv != k)
            for (std::size_t c = 0; c < p; ++c) std::swap(schur_[k * p + c], schur_[piv * p + c]);
        const double d = schur_[k * p + k];
        if (!(std::abs(d) > tiny)) throw SingularMatrix("singular periodic coupling block");
        for (std::size_t r = k + 1; r < p; ++r) {
            const double l = schur_[r * p + k] / d;
            schur_[r * p + k] = l;
            for (std::size_t c = k + 1; c < p; ++c) schur_[r * p + c] -= l * schur_[k * p + c];
        }
    }
}

void CyclicBandedLU::band_solve(std::vector<double>& x) const {
    const std::size_t p = static_cast<std::size_t>(p_);
    const std::size_t w = 2 * p + 1;
    auto band = [&](std::size_t i, std::size_t j) { return band_[i * w + (j + p - i)]; };
    for (std::size_t k = 0; k < m_; ++k) {
        const std::size_t last = std::min(k + p, m_ - 1);
        for (std::size_t r = k + 1; r <= last; ++r) x[r] -= band(r, k) * x[k];
    }
    for (std::size_t k = m_; k-- > 0;) {
        const std::size_t last = std::min(k + p, m_ - 1);
        double s = x[k];
        for (std::size_t c = k + 1; c <= last; ++c) s -= band(k, c) * x[c];
        x[k] = s / band(k, k);
    }
}

Field CyclicBandedLU::solve(FieldView rhs) const {
    if (rhs.size() != n_) throw std::invalid_argument("right-hand side size mismatch");
    const std::size_t p = static_cast<std::size_t>(p_);
    std::vector<double> y(rhs.begin(), rhs.begin() + static_cast<long>(m_));
    band_solve(y);

    std::vector<double> x2(p);
    for (std::size_t r = 0; r < p; ++r) {
        double s = rhs[m_ + r];
        for (std::size_t j = 0; j < m_; ++j) s -= a21_[r * m_ + j] * y[j];
        x2[r] = s;
    }
    for (std::size_t k = 0; k < p; ++k) {
        const auto piv = static_cast<std::size_t>(schur_piv_[k]);
        if (piv != k) std::swap(x2[k], x2[piv]);
        for (std::size_t r = k + 1; r < p; ++r) x2[r] -= schur_[r * p + k] * x2[k];
    }
    for (std::size_t k = p; k-- > 0;) {
        double s = x2[k];
        for (std::size_t c = k + 1; c < p; ++c) s -= schur_[k * p + c] * x2[c];
        x2[k] = s / schur_[k * p + k];
    }

    Field x(n_);
    for (std::size_t i = 0; i < m_; ++i) {
        double s = y[i];
        for (std::size_t c = 0; c < p; ++c) s -= z_[c * m_ + i] * x2[c];
        x[i] = s;
    }
    for (std::size_t r = 0; r < p; ++r) x[m_ + r] = x2[r];
    return x;
}

Field cyclic_banded_solve(const CyclicBandedMatrix& A, FieldView rhs) {
    Field x = CyclicBandedLU(A).solve(rhs);
#ifndef NDEBUG
    const std::size_t n = A.size();
    const Field Ax = A.multiply(x);
    for (std::size_t i = 0; i < n; ++i) {
        double scale = std::abs(rhs[i]);
        for (int o = -A.bandwidth(); o <= A.bandwidth(); ++o)
            scale += std::abs(A.at(i, o)) * std::abs(x[(i + n + static_cast<std::size_t>(o + static_cast<int>(n))) % n]);
        if (!(std::abs(Ax[i] - rhs[i]) <= 1e-10 * scale))
            throw SingularMatrix("implicit solve residual bound violated at row " + std::to_string(i));
    }
#endif
    return x;
}

}  // namespace boussinesq
