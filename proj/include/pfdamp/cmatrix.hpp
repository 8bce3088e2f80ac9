// cmatrix.hpp: dense square complex matrices and vectors for small operator spaces
//
// Storage is row-major. All operators of the library (Hamiltonians, ladder
// operators, metrics, observables) are CMatrix values; states are CVector.

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace pfdamp {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

class CVector {
public:
    CVector() = default;
    explicit CVector(std::size_t dim) : v_(dim) {}
    CVector(std::initializer_list<Complex> values) : v_(values) {}
    explicit CVector(std::vector<Complex> values) : v_(std::move(values)) {}

    std::size_t dim() const noexcept { return v_.size(); }
    bool empty() const noexcept { return v_.empty(); }

    Complex& operator[](std::size_t i) { return v_[i]; }
    const Complex& operator[](std::size_t i) const { return v_[i]; }

    std::span<Complex> values() noexcept { return v_; }
    std::span<const Complex> values() const noexcept { return v_; }

    auto begin() noexcept { return v_.begin(); }
    auto end() noexcept { return v_.end(); }
    auto begin() const noexcept { return v_.begin(); }
    auto end() const noexcept { return v_.end(); }

    // Euclidean norm.
    double norm() const;

    CVector& operator+=(const CVector& other);
    CVector& operator-=(const CVector& other);
    CVector& operator*=(Complex s);

    friend bool operator==(const CVector&, const CVector&) = default;

private:
    std::vector<Complex> v_;
};

CVector operator+(CVector a, const CVector& b);
CVector operator-(CVector a, const CVector& b);
CVector operator*(Complex s, CVector a);
CVector operator*(CVector a, Complex s);

// <x, y> = sum conj(x_i) y_i (antilinear in the first slot).
Complex inner(const CVector& x, const CVector& y);

CVector basis_vector(std::size_t dim, std::size_t index);

class CMatrix {
public:
    // dim x dim zero matrix; dim must be >= 1.
    explicit CMatrix(std::size_t dim);
    CMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static CMatrix identity(std::size_t dim);
    static CMatrix zeros(std::size_t dim) { return CMatrix(dim); }
    static CMatrix diagonal(std::span<const Complex> diag);
    static CMatrix diagonal(std::initializer_list<Complex> diag);
    // Columns of the result are the given vectors.
    static CMatrix from_columns(std::span<const CVector> columns);

    std::size_t dim() const noexcept { return dim_; }

    Complex& operator()(std::size_t r, std::size_t c) { return a_[r * dim_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return a_[r * dim_ + c]; }

    std::span<Complex> entries() noexcept { return a_; }
    std::span<const Complex> entries() const noexcept { return a_; }

    CVector column(std::size_t c) const;
    CVector row(std::size_t r) const;

    CMatrix& operator+=(const CMatrix& other);
    CMatrix& operator-=(const CMatrix& other);
    CMatrix& operator*=(Complex s);

    Complex trace() const;
    double frobenius_norm() const;
    // Maximum absolute column sum.
    double norm_1() const;
    double max_abs() const;
    bool is_finite() const;

    friend bool operator==(const CMatrix&, const CMatrix&) = default;

private:
    std::size_t dim_;
    std::vector<Complex> a_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a);
CMatrix operator*(Complex s, CMatrix a);
CMatrix operator*(CMatrix a, Complex s);
CMatrix operator*(const CMatrix& a, const CMatrix& b);
CVector operator*(const CMatrix& a, const CVector& x);

CMatrix matmul(const CMatrix& a, const CMatrix& b);
CMatrix adjoint(const CMatrix& a);
CMatrix commutator(const CMatrix& a, const CMatrix& b);
CMatrix anticommutator(const CMatrix& a, const CMatrix& b);
// [A, B]_eff = A B - B^dagger A. Reduces to the commutator for Hermitian B.
CMatrix effective_commutator(const CMatrix& a, const CMatrix& b);

CMatrix kron(const CMatrix& a, const CMatrix& b);
// |x><y|
CMatrix outer(const CVector& x, const CVector& y);

// Largest |a_ij - b_ij|.
double max_abs_diff(const CMatrix& a, const CMatrix& b);
double max_abs_diff(const CVector& a, const CVector& b);

} // namespace pfdamp
