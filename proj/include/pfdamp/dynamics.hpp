// dynamics.hpp: evolution under non-self-adjoint Hamiltonians and damping diagnostics
//
// Schrodinger picture:   Psi(t)   = exp(-i H_eff t) Psi(0)
// Heisenberg picture:    X_eff(t) = exp(i H_eff^dagger t) X exp(-i H_eff t)
//
// The two agree on expectation values, <Psi(t), X Psi(t)> = <Psi(0), X_eff(t) Psi(0)>,
// but X -> X_eff(t) is not multiplicative unless H_eff is Hermitian.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pfdamp/cmatrix.hpp"
#include "pfdamp/pseudofermion.hpp"

namespace pfdamp {

// H_eff = H - i Gamma 1 with H traceless and Gamma real.
struct EffectiveHamiltonian {
    CMatrix h_eff;
    double gamma = 0.0;
    CMatrix h_traceless;
};

// Requires a purely imaginary trace (|Re tr| <= 1e-10 |H_eff|_F), otherwise DomainError.
EffectiveHamiltonian gamma_shift(const CMatrix& h_eff);

template <class Sample>
struct Trajectory {
    std::vector<double> times;
    std::vector<Sample> samples;
    std::vector<double> norms;
    // Sample indices whose exponential overflowed; their sample is left empty/zero and norm is +inf.
    std::vector<std::size_t> overflowed;
};

using StateTrajectory = Trajectory<CVector>;
using OperatorTrajectory = Trajectory<CMatrix>;

// n >= 2 uniform points on [t0, t1] (n == 1 gives {t0}).
std::vector<double> uniform_grid(double t0, double t1, std::size_t n);
inline std::vector<double> default_grid() { return uniform_grid(0.0, 20.0, 201); }

// Each sample is exp(-i t_k H_eff) Psi(0), evaluated independently of its neighbours.
StateTrajectory schrodinger_evolve(const EffectiveHamiltonian& ham, const CVector& psi0, std::span<const double> times);

CMatrix heisenberg_at(const CMatrix& h_eff, const CMatrix& x, double t);
// Norms are operator norms.
OperatorTrajectory heisenberg_evolve(const EffectiveHamiltonian& ham, const CMatrix& x, std::span<const double> times);

// Max-entry difference between the central difference of X_eff at t and
// -i exp(i H^dagger t) [X, H_eff]_eff exp(-i H t).
double effective_derivative_check(const EffectiveHamiltonian& ham, const CMatrix& x, double t, double dt = 1e-5);

struct HermitianSplit {
    CMatrix h_r;  // (H + H^dagger) / 2
    CMatrix h_i;  // i (H - H^dagger) / 2, so H = h_r - i h_i
};

HermitianSplit hermitian_split(const CMatrix& h_eff);

// Crypto-Hermitian structure H = Theta^{-1} H^dagger Theta for a positive metric Theta.
struct CryptoContext {
    CMatrix h;  // the generator the context was built for
    CMatrix theta;
    CMatrix theta_sqrt;
    CMatrix theta_inv_sqrt;
    CMatrix h_hermitized;  // Theta^{1/2} H Theta^{-1/2}
    double crypto_residual = 0.0;  // |H - Theta^{-1} H^dagger Theta|_F
    bool is_crypto = false;        // crypto_residual <= 1e-8 |H|_F
    double hermiticity_residual = 0.0;
};

// Throws DomainError when theta is not Hermitian positive definite.
CryptoContext crypto_context(const CMatrix& h, const CMatrix& theta);

// The three maps of the factorized evolution. For crypto-Hermitian H,
//   X_eff(t) = j^{-1}( alpha^t( j(X) ) )
// with j(X) = Theta^{-1/2} X Theta^{-1/2}, j^{-1}(Y) = Theta^{1/2} Y Theta^{1/2}
// and the unitary alpha^t(Y) = exp(i h t) Y exp(-i h t) generated by the hermitized h.
CMatrix crypto_map(const CryptoContext& ctx, const CMatrix& x);
CMatrix crypto_map_inverse(const CryptoContext& ctx, const CMatrix& y);
CMatrix standard_evolution(const CryptoContext& ctx, const CMatrix& y, double t);
CMatrix crypto_factorized_evolution(const CryptoContext& ctx, const CMatrix& x, double t);

// H_N = sum_j Omega_j N_j - (1/2) sum_j Omega_j 1
CMatrix pf_hamiltonian(const NumberOps& numbers, std::span<const Complex> omegas);

// (N_k)_eff(t) for H_eff = H_N - i Gamma 1, using exp(z N) = 1 + N (e^z - 1):
//   e^{-t(2 Gamma + sum Im Omega_j)} prod_j (1 + Ndag_j (e^{i t conj Omega_j} - 1)) N_k
//                                    prod_l (1 + N_l (e^{-i t Omega_l} - 1))
// `k` is 0-based.
CMatrix number_evolution_closed_form(const NumberOps& numbers, std::span<const Complex> omegas, double gamma,
                                     std::size_t k, double t);

struct DampingReport {
    double gamma = 0.0;
    std::vector<Complex> omegas;
    double threshold = 0.0;  // (1/2) sum_j |Im Omega_j|
    bool damped = false;     // gamma > threshold
    double bound_constant = 0.0;  // 3^{2N}
    // All Omega_j purely imaginary, Omega_j = i w_j: damping reads 2 Gamma > sum_j w_j.
    bool imaginary_frequencies = false;
    double frequency_sum = 0.0;  // sum_j Im Omega_j when imaginary_frequencies
};

DampingReport damping_report(double gamma, std::span<const Complex> omegas);

// sum_k <Psi_k, Op phi_k>
Complex generalized_trace(const BiorthogonalSystem& system, const CMatrix& op);

// Constant C in |N_eff(t)| <= C e^{-2 Gamma t}: 3 for a single mode, 3^{2N} otherwise.
double decay_bound_constant(std::size_t n_modes);

// Norm bound with the actual number-operator norms in place of |N_j| <= 1:
// |N_k| prod_j (1 + 2 |N_j|)^2. Reduces to 3^{2N} for canonical fermions.
double decay_bound_constant(const NumberOps& numbers, std::size_t k);

// True iff norms[k] <= C e^{-2 Gamma t_k} (1 + 1e-8) at every sample.
bool norm_decay_bound_check(const OperatorTrajectory& trajectory, double gamma, std::size_t n_modes);
bool norm_decay_bound_check(const OperatorTrajectory& trajectory, double gamma, double constant);

} // namespace pfdamp
