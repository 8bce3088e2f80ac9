// cmatrix.cpp: elementwise and product kernels for CMatrix / CVector

#include "pfdamp/cmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pfdamp/errors.hpp"

namespace pfdamp {

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* op) {
    if (a != b) {
        throw DimensionError(std::string(op) + ": dimension mismatch (" + std::to_string(a) +
                             " vs " + std::to_string(b) + ")");
    }
}

} // namespace

// ---------------------------------------------------------------- CVector

double CVector::norm() const {
    double s = 0.0;
    for (const auto& z : v_) s += std::norm(z);
    return std::sqrt(s);
}

CVector& CVector::operator+=(const CVector& other) {
    require_same_dim(dim(), other.dim(), "CVector +=");
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += other.v_[i];
    return *this;
}

CVector& CVector::operator-=(const CVector& other) {
    require_same_dim(dim(), other.dim(), "CVector -=");
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= other.v_[i];
    return *this;
}

CVector& CVector::operator*=(Complex s) {
    for (auto& z : v_) z *= s;
    return *this;
}

CVector operator+(CVector a, const CVector& b) { return a += b; }
CVector operator-(CVector a, const CVector& b) { return a -= b; }
CVector operator*(Complex s, CVector a) { return a *= s; }
CVector operator*(CVector a, Complex s) { return a *= s; }

Complex inner(const CVector& x, const CVector& y) {
    require_same_dim(x.dim(), y.dim(), "inner");
    Complex s{};
    for (std::size_t i = 0; i < x.dim(); ++i) s += std::conj(x[i]) * y[i];
    return s;
}

CVector basis_vector(std::size_t dim, std::size_t index) {
    if (index >= dim) throw DimensionError("basis_vector: index out of range");
    CVector e(dim);
    e[index] = 1.0;
    return e;
}

// ---------------------------------------------------------------- CMatrix

CMatrix::CMatrix(std::size_t dim) : dim_(dim), a_(dim * dim) {
    if (dim == 0) throw DimensionError("CMatrix: dimension must be >= 1");
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : CMatrix(rows.size()) {
    std::size_t r = 0;
    for (const auto& row : rows) {
        if (row.size() != dim_) throw DimensionError("CMatrix: rows must form a square matrix");
        std::copy(row.begin(), row.end(), a_.begin() + static_cast<std::ptrdiff_t>(r * dim_));
        ++r;
    }
}

CMatrix CMatrix::identity(std::size_t dim) {
    CMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::diagonal(std::span<const Complex> diag) {
    CMatrix m(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
}

CMatrix CMatrix::diagonal(std::initializer_list<Complex> diag) {
    return diagonal(std::span<const Complex>(diag.begin(), diag.size()));
}

CMatrix CMatrix::from_columns(std::span<const CVector> columns) {
    CMatrix m(columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        require_same_dim(columns[c].dim(), columns.size(), "from_columns");
        for (std::size_t r = 0; r < columns.size(); ++r) m(r, c) = columns[c][r];
    }
    return m;
}

CVector CMatrix::column(std::size_t c) const {
    CVector v(dim_);
    for (std::size_t r = 0; r < dim_; ++r) v[r] = (*this)(r, c);
    return v;
}

CVector CMatrix::row(std::size_t r) const {
    CVector v(dim_);
    for (std::size_t c = 0; c < dim_; ++c) v[c] = (*this)(r, c);
    return v;
}

CMatrix& CMatrix::operator+=(const CMatrix& other) {
    require_same_dim(dim_, other.dim_, "CMatrix +=");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += other.a_[i];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& other) {
    require_same_dim(dim_, other.dim_, "CMatrix -=");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= other.a_[i];
    return *this;
}

CMatrix& CMatrix::operator*=(Complex s) {
    for (auto& z : a_) z *= s;
    return *this;
}

Complex CMatrix::trace() const {
    Complex t{};
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double CMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& z : a_) s += std::norm(z);
    return std::sqrt(s);
}

double CMatrix::norm_1() const {
    double best = 0.0;
    for (std::size_t c = 0; c < dim_; ++c) {
        double s = 0.0;
        for (std::size_t r = 0; r < dim_; ++r) s += std::abs((*this)(r, c));
        best = std::max(best, s);
    }
    return best;
}

double CMatrix::max_abs() const {
    double best = 0.0;
    for (const auto& z : a_) best = std::max(best, std::abs(z));
    return best;
}

bool CMatrix::is_finite() const {
    return std::all_of(a_.begin(), a_.end(), [](const Complex& z) {
        return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
CMatrix operator-(CMatrix a) { return a *= -1.0; }
CMatrix operator*(Complex s, CMatrix a) { return a *= s; }
CMatrix operator*(CMatrix a, Complex s) { return a *= s; }

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
    require_same_dim(a.dim(), b.dim(), "matmul");
    const std::size_t n = a.dim();
    CMatrix c(n);
    // i-k-j order keeps the inner loop contiguous in both b and c.
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) { return matmul(a, b); }

CVector operator*(const CMatrix& a, const CVector& x) {
    require_same_dim(a.dim(), x.dim(), "matrix-vector product");
    CVector y(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        Complex s{};
        for (std::size_t j = 0; j < a.dim(); ++j) s += a(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

CMatrix adjoint(const CMatrix& a) {
    CMatrix t(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) t(j, i) = std::conj(a(i, j));
    return t;
}

CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

CMatrix anticommutator(const CMatrix& a, const CMatrix& b) { return a * b + b * a; }

CMatrix effective_commutator(const CMatrix& a, const CMatrix& b) {
    return a * b - adjoint(b) * a;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    const std::size_t n = a.dim(), m = b.dim();
    CMatrix k(n * m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t p = 0; p < m; ++p)
                for (std::size_t q = 0; q < m; ++q) k(i * m + p, j * m + q) = a(i, j) * b(p, q);
    return k;
}

CMatrix outer(const CVector& x, const CVector& y) {
    require_same_dim(x.dim(), y.dim(), "outer");
    CMatrix m(x.dim());
    for (std::size_t i = 0; i < x.dim(); ++i)
        for (std::size_t j = 0; j < y.dim(); ++j) m(i, j) = x[i] * std::conj(y[j]);
    return m;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    require_same_dim(a.dim(), b.dim(), "max_abs_diff");
    double best = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i)
        best = std::max(best, std::abs(a.entries()[i] - b.entries()[i]));
    return best;
}

double max_abs_diff(const CVector& a, const CVector& b) {
    require_same_dim(a.dim(), b.dim(), "max_abs_diff");
    double best = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) best = std::max(best, std::abs(a[i] - b[i]));
    return best;
}

} // namespace pfdamp
