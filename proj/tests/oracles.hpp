// oracles.hpp: independent reference computations and random inputs for the tests
//
// Nothing here calls into linalg.cpp: products are triple loops, exponentials are
// raw power series, and eigen-free checks are preferred wherever possible.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "pfdamp/cmatrix.hpp"

namespace oracle {

using pfdamp::CMatrix;
using pfdamp::Complex;
using pfdamp::CVector;

inline CMatrix matmul(const CMatrix& a, const CMatrix& b) {
    const std::size_t n = a.dim();
    CMatrix c(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Complex s{};
            for (std::size_t k = 0; k < n; ++k) s += a(i, k) * b(k, j);
            c(i, j) = s;
        }
    return c;
}

inline CVector apply(const CMatrix& a, const CVector& x) {
    CVector y(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t k = 0; k < a.dim(); ++k) y[i] += a(i, k) * x[k];
    return y;
}

inline CMatrix dagger(const CMatrix& a) {
    CMatrix d(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) d(i, j) = std::conj(a(j, i));
    return d;
}

// sum_{k < terms} A^k / k!, no scaling
inline CMatrix taylor_exp(const CMatrix& a, int terms = 200) {
    const std::size_t n = a.dim();
    CMatrix sum = CMatrix::identity(n);
    CMatrix term = CMatrix::identity(n);
    for (int k = 1; k < terms; ++k) {
        term = oracle::matmul(term, a);
        for (auto& z : term.entries()) z /= static_cast<double>(k);
        for (std::size_t i = 0; i < n * n; ++i) sum.entries()[i] += term.entries()[i];
    }
    return sum;
}

// raw series on A / 2^s with |A / 2^s|_F < 1/4, then s squarings
inline CMatrix scaled_exp(const CMatrix& a) {
    double f = 0.0;
    for (auto z : a.entries()) f += std::norm(z);
    f = std::sqrt(f);
    int s = 0;
    while (f / std::ldexp(1.0, s) >= 0.25) ++s;
    CMatrix b = a;
    for (auto& z : b.entries()) z = std::ldexp(z.real(), -s) + Complex{0.0, std::ldexp(z.imag(), -s)};
    CMatrix e = taylor_exp(b, 40);
    for (int i = 0; i < s; ++i) e = oracle::matmul(e, e);
    return e;
}

inline double max_diff(const CMatrix& a, const CMatrix& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i) m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
    return m;
}

inline double max_diff(const CVector& a, const CVector& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double frob(const CMatrix& a) {
    double s = 0.0;
    for (auto z : a.entries()) s += std::norm(z);
    return std::sqrt(s);
}

class Random {
public:
    explicit Random(std::uint64_t seed) : gen_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
    Complex complex(double r = 1.0) { return {uniform(-r, r), uniform(-r, r)}; }

    CMatrix matrix(std::size_t n, double r = 1.0) {
        CMatrix m(n);
        for (auto& z : m.entries()) z = complex(r);
        return m;
    }

    // scaled so the Frobenius norm is exactly `norm`
    CMatrix matrix_with_norm(std::size_t n, double norm) {
        CMatrix m = matrix(n);
        const double f = norm / frob(m);
        for (auto& z : m.entries()) z *= f;
        return m;
    }

    CMatrix hermitian(std::size_t n) {
        CMatrix m = matrix(n);
        CMatrix h(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) h(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
        return h;
    }

    CVector vector(std::size_t n) {
        CVector v(n);
        for (auto& z : v) z = complex();
        return v;
    }

    std::mt19937_64& engine() { return gen_; }

private:
    std::mt19937_64 gen_;
};

} // namespace oracle
