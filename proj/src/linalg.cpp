// linalg.cpp: expm, power-iteration norm, LU, Jacobi SVD / eigensolvers

#include "pfdamp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

#include "pfdamp/errors.hpp"

namespace pfdamp {

// ---------------------------------------------------------------- expm

CMatrix expm(const CMatrix& a) {
    if (!a.is_finite()) throw DomainError("expm: non-finite input");
    const std::size_t n = a.dim();

    const double norm1 = a.norm_1();
    int squarings = 0;
    if (norm1 > 0.0) squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm1))) + 1);

    const CMatrix b = a * Complex{std::ldexp(1.0, -squarings)};
    const double b_norm = b.norm_1();

    CMatrix result = CMatrix::identity(n);
    CMatrix term = CMatrix::identity(n);
    constexpr int kMaxTerms = 60;
    for (int k = 1; k <= kMaxTerms; ++k) {
        term = term * b;
        term *= Complex{1.0 / k};
        result += term;
        if (term.norm_1() * b_norm / (k + 1) < 1e-17) break;
    }

    for (int i = 0; i < squarings; ++i) {
        result = result * result;
        if (!result.is_finite()) throw OverflowError("expm: result overflows double range");
    }
    if (!result.is_finite()) throw OverflowError("expm: result overflows double range");
    return result;
}

// ---------------------------------------------------------------- operator norm

namespace {

constexpr int kPowerIterationCap = 10000;

// Returns sigma_max^2 estimate from one power-iteration run.
double power_iteration(const CMatrix& gram, CVector v) {
    const double scale = gram.max_abs();
    double previous = -1.0;
    for (int it = 0; it < kPowerIterationCap; ++it) {
        CVector w = gram * v;
        const double rq = inner(v, w).real();
        const double wn = w.norm();
        if (wn <= 1e-300 || wn <= 1e-15 * scale) return std::max(rq, 0.0);  // start in the null space
        if (previous >= 0.0 && std::abs(rq - previous) <= 1e-14 * std::abs(rq)) return rq;
        previous = rq;
        v = w * Complex{1.0 / wn};
    }
    throw ConvergenceError("operator_norm: power iteration did not converge in " +
                           std::to_string(kPowerIterationCap) + " iterations");
}

} // namespace

double operator_norm(const CMatrix& a) {
    const std::size_t n = a.dim();
    if (a.max_abs() == 0.0) return 0.0;
    const CMatrix gram = adjoint(a) * a;

    CVector uniform(n);
    for (auto& z : uniform) z = 1.0 / std::sqrt(static_cast<double>(n));

    CVector ramp(n);
    double rn = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double phase = 2.0 * std::numbers::pi * 0.6180339887498949 * static_cast<double>(k);
        ramp[k] = std::polar(1.0 + static_cast<double>(k) / static_cast<double>(n), phase);
        rn += std::norm(ramp[k]);
    }
    ramp *= Complex{1.0 / std::sqrt(rn)};

    const double s1 = power_iteration(gram, uniform);
    const double s2 = n > 1 ? power_iteration(gram, ramp) : s1;
    return std::sqrt(std::max(s1, s2));
}

// ---------------------------------------------------------------- LU

LuFactors lu_factor(const CMatrix& a) {
    const std::size_t n = a.dim();
    LuFactors f{a, std::vector<std::size_t>(n)};
    std::iota(f.perm.begin(), f.perm.end(), std::size_t{0});
    const double threshold = 1e-13 * a.norm_1();
    CMatrix& m = f.lu;

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(m(k, k));
        for (std::size_t r = k + 1; r < n; ++r) {
            if (std::abs(m(r, k)) > best) {
                best = std::abs(m(r, k));
                piv = r;
            }
        }
        if (best <= threshold) {
            throw SingularMatrixError("matrix is singular to working precision (pivot " +
                                      std::to_string(best) + " at column " + std::to_string(k) + ")");
        }
        if (piv != k) {
            for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(piv, c));
            std::swap(f.perm[k], f.perm[piv]);
        }
        for (std::size_t r = k + 1; r < n; ++r) {
            const Complex l = m(r, k) / m(k, k);
            m(r, k) = l;
            for (std::size_t c = k + 1; c < n; ++c) m(r, c) -= l * m(k, c);
        }
    }
    return f;
}

CVector lu_solve(const LuFactors& f, const CVector& y) {
    const std::size_t n = f.lu.dim();
    if (y.dim() != n) throw DimensionError("solve: dimension mismatch");
    CVector x(n);
    for (std::size_t i = 0; i < n; ++i) {
        Complex s = y[f.perm[i]];
        for (std::size_t j = 0; j < i; ++j) s -= f.lu(i, j) * x[j];
        x[i] = s;
    }
    for (std::size_t i = n; i-- > 0;) {
        Complex s = x[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= f.lu(i, j) * x[j];
        x[i] = s / f.lu(i, i);
    }
    return x;
}

CMatrix inverse(const CMatrix& a) {
    const LuFactors f = lu_factor(a);
    const std::size_t n = a.dim();
    CMatrix inv(n);
    for (std::size_t c = 0; c < n; ++c) {
        const CVector col = lu_solve(f, basis_vector(n, c));
        for (std::size_t r = 0; r < n; ++r) inv(r, c) = col[r];
    }
    return inv;
}

CVector solve(const CMatrix& a, const CVector& y) { return lu_solve(lu_factor(a), y); }

// ---------------------------------------------------------------- one-sided Jacobi SVD

namespace {

// Orthogonalizes the columns of the m x n column-major block `w` by plane
// rotations accumulated into `v` (n x n). On return the column norms of `w`
// are the singular values and `v` holds the right singular vectors.
void jacobi_orthogonalize(std::vector<Complex>& w, std::size_t m, std::size_t n, CMatrix& v) {
    auto col = [&](std::size_t j) { return w.data() + j * m; };
    auto col_dot = [&](std::size_t i, std::size_t j) {
        Complex s{};
        const Complex* x = col(i);
        const Complex* y = col(j);
        for (std::size_t r = 0; r < m; ++r) s += std::conj(x[r]) * y[r];
        return s;
    };

    constexpr int kMaxSweeps = 80;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const double alpha = col_dot(i, i).real();
                const double beta = col_dot(j, j).real();
                const Complex gamma = col_dot(i, j);
                const double g = std::abs(gamma);
                if (g == 0.0 || g <= 1e-15 * std::sqrt(alpha * beta)) continue;
                rotated = true;

                // Phase-align column j so that <w_i, w_j> becomes real, then rotate.
                const Complex phase = std::conj(gamma) / g;
                const double zeta = (beta - alpha) / (2.0 * g);
                const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                Complex* wi = col(i);
                Complex* wj = col(j);
                for (std::size_t r = 0; r < m; ++r) {
                    const Complex x = wi[r], y = wj[r] * phase;
                    wi[r] = c * x - s * y;
                    wj[r] = s * x + c * y;
                }
                for (std::size_t r = 0; r < n; ++r) {
                    const Complex x = v(r, i), y = v(r, j) * phase;
                    v(r, i) = c * x - s * y;
                    v(r, j) = s * x + c * y;
                }
            }
        }
        if (!rotated) break;
    }
}

SingularSystem singular_system_of_block(std::vector<Complex> w, std::size_t m, std::size_t n) {
    CMatrix v = CMatrix::identity(n);
    jacobi_orthogonalize(w, m, n, v);

    std::vector<double> norms(n);
    for (std::size_t k = 0; k < n; ++k) {
        double s = 0.0;
        for (std::size_t r = 0; r < m; ++r) s += std::norm(w[k * m + r]);
        norms[k] = std::sqrt(s);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return norms[x] > norms[y]; });

    SingularSystem out{std::vector<double>(n), CMatrix(n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = norms[order[k]];
        for (std::size_t r = 0; r < n; ++r) out.right_vectors(r, k) = v(r, order[k]);
    }
    return out;
}

std::vector<CVector> small_singular_vectors(const SingularSystem& svd) {
    const double threshold = 1e-11 * svd.values.front();
    std::vector<CVector> basis;
    for (std::size_t k = 0; k < svd.values.size(); ++k)
        if (svd.values[k] <= threshold) basis.push_back(svd.right_vectors.column(k));
    return basis;
}

} // namespace

SingularSystem singular_system(const CMatrix& a) {
    const std::size_t n = a.dim();
    std::vector<Complex> w(n * n);
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < n; ++r) w[c * n + r] = a(r, c);
    return singular_system_of_block(std::move(w), n, n);
}

std::vector<double> singular_values(const CMatrix& a) { return singular_system(a).values; }

double condition_number(const CMatrix& a) {
    const auto s = singular_values(a);
    if (s.back() == 0.0) return std::numeric_limits<double>::infinity();
    return s.front() / s.back();
}

std::vector<CVector> kernel_basis(const CMatrix& a) { return small_singular_vectors(singular_system(a)); }

std::vector<CVector> joint_kernel_basis(std::span<const CMatrix> ops) {
    if (ops.empty()) throw DimensionError("joint_kernel_basis: no operators");
    const std::size_t n = ops.front().dim();
    const std::size_t m = n * ops.size();
    std::vector<Complex> w(m * n);
    for (std::size_t k = 0; k < ops.size(); ++k) {
        if (ops[k].dim() != n) throw DimensionError("joint_kernel_basis: dimension mismatch");
        for (std::size_t c = 0; c < n; ++c)
            for (std::size_t r = 0; r < n; ++r) w[c * m + k * n + r] = ops[k](r, c);
    }
    return small_singular_vectors(singular_system_of_block(std::move(w), m, n));
}

// ---------------------------------------------------------------- Hermitian Jacobi

HermitianEig hermitian_eig(const CMatrix& input) {
    const std::size_t n = input.dim();
    const double scale = input.frobenius_norm();
    const double asym = (input - adjoint(input)).frobenius_norm();
    if (asym > 1e-10 * scale) {
        throw DomainError("hermitian_eig: input is not Hermitian (|A - A^dagger| = " +
                          std::to_string(asym) + ")");
    }
    CMatrix a = Complex{0.5} * (input + adjoint(input));
    CMatrix v = CMatrix::identity(n);

    auto off_mass = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) s += std::norm(a(i, j));
        return std::sqrt(s);
    };

    constexpr int kMaxSweeps = 100;
    int sweep = 0;
    for (; sweep < kMaxSweeps && off_mass() >= 1e-13 * scale; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double mag = std::abs(a(p, q));
                if (mag == 0.0) continue;
                const Complex e = a(p, q) / mag;  // e^{i phi}
                const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                // J = [[c, s e], [-s conj(e), c]] on (p, q); A <- J^dagger A J, V <- V J.
                for (std::size_t r = 0; r < n; ++r) {
                    const Complex ap = a(r, p), aq = a(r, q);
                    a(r, p) = c * ap - s * std::conj(e) * aq;
                    a(r, q) = s * e * ap + c * aq;
                    const Complex vp = v(r, p), vq = v(r, q);
                    v(r, p) = c * vp - s * std::conj(e) * vq;
                    v(r, q) = s * e * vp + c * vq;
                }
                for (std::size_t col = 0; col < n; ++col) {
                    const Complex ap = a(p, col), aq = a(q, col);
                    a(p, col) = c * ap - s * e * aq;
                    a(q, col) = s * std::conj(e) * ap + c * aq;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }
    if (off_mass() >= 1e-13 * scale) throw ConvergenceError("hermitian_eig: Jacobi sweeps did not converge");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });

    HermitianEig out;
    for (std::size_t k : order) {
        out.values.push_back(a(k, k).real());
        out.vectors.push_back(v.column(k));
    }
    return out;
}

CMatrix spectral_apply(const HermitianEig& eig, const std::function<double(double)>& f) {
    const std::size_t n = eig.values.size();
    CMatrix m(n);
    for (std::size_t k = 0; k < n; ++k) m += Complex{f(eig.values[k])} * outer(eig.vectors[k], eig.vectors[k]);
    return m;
}

CMatrix sqrtm_psd(const CMatrix& a) {
    const HermitianEig eig = hermitian_eig(a);
    double scale = 0.0;
    for (double l : eig.values) scale = std::max(scale, std::abs(l));
    if (eig.values.front() < -1e-12 * scale) {
        throw DomainError("sqrtm_psd: matrix is indefinite (smallest eigenvalue " +
                          std::to_string(eig.values.front()) + ")");
    }
    return spectral_apply(eig, [](double l) { return std::sqrt(std::max(l, 0.0)); });
}

// ---------------------------------------------------------------- general eigenproblem

GeneralEig general_eig(const CMatrix& a) {
    const std::size_t n = a.dim();
    if (n > 64) throw DimensionError("general_eig: dimension exceeds 64");

    Eigen::MatrixXcd m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = a(i, j);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, true);
    if (solver.info() != Eigen::Success) throw ConvergenceError("general_eig: QR iteration failed");

    const double scale = a.frobenius_norm();
    const double grid = std::max(1e-9 * scale, std::numeric_limits<double>::min());
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto key_re = [&](std::size_t k) { return std::round(solver.eigenvalues()(k).real() / grid); };
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        if (key_re(x) != key_re(y)) return key_re(x) < key_re(y);
        return solver.eigenvalues()(x).imag() < solver.eigenvalues()(y).imag();
    });

    GeneralEig out;
    std::vector<CVector> vecs;
    for (std::size_t k : order) {
        out.values.push_back(solver.eigenvalues()(k));
        CVector v(n);
        for (std::size_t r = 0; r < n; ++r) v[r] = solver.eigenvectors()(r, k);
        v *= Complex{1.0 / v.norm()};
        const CVector res = a * v - out.values.back() * v;
        out.max_residual = std::max(out.max_residual, res.norm());
        vecs.push_back(std::move(v));
    }
    if (out.max_residual > 1e-9 * scale) {
        throw ConvergenceError("general_eig: eigenpair residual " + std::to_string(out.max_residual) +
                               " exceeds tolerance");
    }

    const auto sv = singular_values(CMatrix::from_columns(vecs));
    if (sv.back() < 1e-6 * sv.front()) {
        out.diagonalizable = false;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (std::abs(inner(vecs[i], vecs[j])) > 1.0 - 1e-6) out.defective_pairs.emplace_back(i, j);
        return out;
    }
    out.vectors = std::move(vecs);
    return out;
}

} // namespace pfdamp
