// linalg.hpp: exponentials, norms, factorizations and spectra of small complex matrices

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "pfdamp/cmatrix.hpp"

namespace pfdamp {

// Matrix exponential by scaling and squaring with a Taylor kernel.
// The squaring count is s = max(0, ceil(log2 |A|_1) + 1), so the kernel sees
// |A / 2^s|_1 <= 1/2; the series stops once the next-term bound drops below 1e-17.
// Throws DomainError on non-finite input and OverflowError if the result overflows.
CMatrix expm(const CMatrix& a);

// Largest singular value by power iteration on A^dagger A.
//
// The iteration starts from (1,...,1)/sqrt(d) and stops when successive Rayleigh
// quotients agree to 1e-14 (relative), capped at 10000 iterations. A second run
// from a fixed non-uniform start vector guards against a start that is exactly
// orthogonal to the dominant singular subspace; the larger estimate wins.
// Throws ConvergenceError when the cap is hit.
double operator_norm(const CMatrix& a);

struct LuFactors {
    CMatrix lu;                     // unit-lower L below the diagonal, U on and above
    std::vector<std::size_t> perm;  // row i of LU is row perm[i] of A
};

// LU with partial pivoting. A pivot with |p| <= 1e-13 |A|_1 raises SingularMatrixError.
LuFactors lu_factor(const CMatrix& a);
CVector lu_solve(const LuFactors& f, const CVector& y);

CMatrix inverse(const CMatrix& a);
CVector solve(const CMatrix& a, const CVector& y);

// Singular values (descending) together with the right singular vectors,
// computed by one-sided Jacobi rotations. Small singular values come out with
// absolute accuracy ~ eps |A|, which is what the rank decisions below rely on.
struct SingularSystem {
    std::vector<double> values;
    CMatrix right_vectors;  // column k pairs with values[k]
};
SingularSystem singular_system(const CMatrix& a);
std::vector<double> singular_values(const CMatrix& a);
// sigma_max / sigma_min; +inf for singular input.
double condition_number(const CMatrix& a);

// Orthonormal basis of the numerical null space: right singular vectors whose
// singular value is <= 1e-11 |A|. Empty when the kernel is trivial.
std::vector<CVector> kernel_basis(const CMatrix& a);

// Common null space of several operators, computed from the stacked matrix
// [A_1; A_2; ...] with the same 1e-11 relative threshold.
std::vector<CVector> joint_kernel_basis(std::span<const CMatrix> ops);

struct HermitianEig {
    std::vector<double> values;    // ascending
    std::vector<CVector> vectors;  // orthonormal, vectors[k] pairs with values[k]
};

// Cyclic Jacobi. Requires |A - A^dagger|_F <= 1e-10 |A|_F (DomainError otherwise);
// sweeps until the off-diagonal Frobenius mass is below 1e-13 |A|_F.
// Equal eigenvalues keep the order of their diagonal slot.
HermitianEig hermitian_eig(const CMatrix& a);

// sum_k f(lambda_k) |v_k><v_k|
CMatrix spectral_apply(const HermitianEig& eig, const std::function<double(double)>& f);

// Hermitian square root of a positive semidefinite matrix. Eigenvalues down to
// -1e-12 |A| are clamped to zero; anything more negative is a DomainError.
CMatrix sqrtm_psd(const CMatrix& a);

struct GeneralEig {
    std::vector<Complex> values;
    // Unit-norm right eigenvectors, empty when the matrix is numerically defective.
    std::vector<CVector> vectors;
    bool diagonalizable = true;
    // Index pairs whose eigenvectors collapsed onto each other (Jordan structure).
    std::vector<std::pair<std::size_t, std::size_t>> defective_pairs;
    double max_residual = 0.0;  // max_k |A v_k - lambda_k v_k|
};

// Complex spectrum with right eigenvectors, sorted by real part then imaginary part.
// Every returned pair satisfies |A v - lambda v| <= 1e-9 |A|_F; a larger residual
// raises ConvergenceError. Limited to dim <= 64.
GeneralEig general_eig(const CMatrix& a);

} // namespace pfdamp
