// dynamics.cpp: Schrodinger / Heisenberg evolution, crypto-Hermitian maps, damping

#include "pfdamp/dynamics.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "pfdamp/errors.hpp"
#include "pfdamp/linalg.hpp"

namespace pfdamp {

EffectiveHamiltonian gamma_shift(const CMatrix& h_eff) {
    const Complex tr = h_eff.trace();
    if (std::abs(tr.real()) > 1e-10 * h_eff.frobenius_norm()) {
        throw DomainError("gamma_shift: trace has a real part (" + std::to_string(tr.real()) +
                          "); H_eff = H - i Gamma 1 with real Gamma does not exist");
    }
    const double gamma = -tr.imag() / static_cast<double>(h_eff.dim());
    CMatrix traceless = h_eff + Complex{0.0, gamma} * CMatrix::identity(h_eff.dim());
    return {h_eff, gamma, std::move(traceless)};
}

std::vector<double> uniform_grid(double t0, double t1, std::size_t n) {
    if (n == 0) throw std::invalid_argument("time grid needs at least one sample");
    std::vector<double> t(n);
    for (std::size_t k = 0; k < n; ++k)
        t[k] = n == 1 ? t0 : t0 + (t1 - t0) * static_cast<double>(k) / static_cast<double>(n - 1);
    return t;
}

StateTrajectory schrodinger_evolve(const EffectiveHamiltonian& ham, const CVector& psi0, std::span<const double> times) {
    if (psi0.dim() != ham.h_eff.dim()) throw DimensionError("schrodinger_evolve: state dimension mismatch");
    StateTrajectory traj;
    for (std::size_t k = 0; k < times.size(); ++k) {
        const double t = times[k];
        if (!std::isfinite(t)) throw std::invalid_argument("schrodinger_evolve: non-finite time");
        traj.times.push_back(t);
        try {
            CVector psi = expm(Complex{0.0, -t} * ham.h_eff) * psi0;
            traj.norms.push_back(psi.norm());
            traj.samples.push_back(std::move(psi));
        } catch (const OverflowError&) {
            traj.overflowed.push_back(k);
            traj.norms.push_back(std::numeric_limits<double>::infinity());
            traj.samples.emplace_back(psi0.dim());
        }
    }
    return traj;
}

CMatrix heisenberg_at(const CMatrix& h_eff, const CMatrix& x, double t) {
    return expm(Complex{0.0, t} * adjoint(h_eff)) * x * expm(Complex{0.0, -t} * h_eff);
}

OperatorTrajectory heisenberg_evolve(const EffectiveHamiltonian& ham, const CMatrix& x, std::span<const double> times) {
    if (x.dim() != ham.h_eff.dim()) throw DimensionError("heisenberg_evolve: observable dimension mismatch");
    OperatorTrajectory traj;
    for (std::size_t k = 0; k < times.size(); ++k) {
        const double t = times[k];
        if (!std::isfinite(t)) throw std::invalid_argument("heisenberg_evolve: non-finite time");
        traj.times.push_back(t);
        try {
            CMatrix xt = heisenberg_at(ham.h_eff, x, t);
            if (!xt.is_finite()) throw OverflowError("heisenberg_evolve: overflow");
            traj.norms.push_back(operator_norm(xt));
            traj.samples.push_back(std::move(xt));
        } catch (const OverflowError&) {
            traj.overflowed.push_back(k);
            traj.norms.push_back(std::numeric_limits<double>::infinity());
            traj.samples.emplace_back(x.dim());
        }
    }
    return traj;
}

double effective_derivative_check(const EffectiveHamiltonian& ham, const CMatrix& x, double t, double dt) {
    const CMatrix& h = ham.h_eff;
    const CMatrix forward = heisenberg_at(h, x, t + dt);
    const CMatrix backward = heisenberg_at(h, x, t - dt);
    const CMatrix finite_diff = Complex{1.0 / (2.0 * dt)} * (forward - backward);
    const CMatrix analytic = Complex{0.0, -1.0} * heisenberg_at(h, effective_commutator(x, h), t);
    return max_abs_diff(finite_diff, analytic);
}

HermitianSplit hermitian_split(const CMatrix& h_eff) {
    const CMatrix hd = adjoint(h_eff);
    return {Complex{0.5} * (h_eff + hd), Complex{0.0, 0.5} * (h_eff - hd)};
}

CryptoContext crypto_context(const CMatrix& h, const CMatrix& theta) {
    if (h.dim() != theta.dim()) throw DimensionError("crypto_context: dimension mismatch");
    const HermitianEig eig = hermitian_eig(theta);
    if (eig.values.front() <= 0.0) {
        throw DomainError("crypto_context: metric is not positive definite (smallest eigenvalue " +
                          std::to_string(eig.values.front()) + ")");
    }
    CMatrix root = spectral_apply(eig, [](double l) { return std::sqrt(l); });
    CMatrix inv_root = spectral_apply(eig, [](double l) { return 1.0 / std::sqrt(l); });
    const CMatrix theta_inv = spectral_apply(eig, [](double l) { return 1.0 / l; });
    const double residual = (h - theta_inv * adjoint(h) * theta).frobenius_norm();
    CMatrix herm = root * h * inv_root;
    const double herm_residual = (herm - adjoint(herm)).frobenius_norm();
    return {h,         theta,    std::move(root),
            std::move(inv_root), std::move(herm),
            residual,  residual <= 1e-8 * h.frobenius_norm(),
            herm_residual};
}

CMatrix crypto_map(const CryptoContext& ctx, const CMatrix& x) { return ctx.theta_inv_sqrt * x * ctx.theta_inv_sqrt; }

CMatrix crypto_map_inverse(const CryptoContext& ctx, const CMatrix& y) { return ctx.theta_sqrt * y * ctx.theta_sqrt; }

CMatrix standard_evolution(const CryptoContext& ctx, const CMatrix& y, double t) {
    return expm(Complex{0.0, t} * ctx.h_hermitized) * y * expm(Complex{0.0, -t} * ctx.h_hermitized);
}

CMatrix crypto_factorized_evolution(const CryptoContext& ctx, const CMatrix& x, double t) {
    return crypto_map_inverse(ctx, standard_evolution(ctx, crypto_map(ctx, x), t));
}

CMatrix pf_hamiltonian(const NumberOps& numbers, std::span<const Complex> omegas) {
    if (omegas.size() != numbers.n_ops.size()) {
        throw DimensionError("pf_hamiltonian: " + std::to_string(omegas.size()) + " frequencies for " +
                             std::to_string(numbers.n_ops.size()) + " modes");
    }
    const std::size_t n = numbers.n_ops.front().dim();
    CMatrix h(n);
    Complex total{};
    for (std::size_t j = 0; j < omegas.size(); ++j) {
        h += omegas[j] * numbers.n_ops[j];
        total += omegas[j];
    }
    h -= (0.5 * total) * CMatrix::identity(n);
    return h;
}

CMatrix number_evolution_closed_form(const NumberOps& numbers, std::span<const Complex> omegas, double gamma,
                                     std::size_t k, double t) {
    if (omegas.size() != numbers.n_ops.size()) throw DimensionError("number_evolution_closed_form: frequency count");
    if (k >= numbers.n_ops.size()) throw DimensionError("number_evolution_closed_form: mode index out of range");
    const std::size_t n = numbers.n_ops.front().dim();
    const CMatrix id = CMatrix::identity(n);

    double im_sum = 0.0;
    CMatrix left = id, right = id;
    for (std::size_t j = 0; j < omegas.size(); ++j) {
        im_sum += omegas[j].imag();
        left = left * (id + (std::exp(Complex{0.0, t} * std::conj(omegas[j])) - 1.0) * numbers.n_dagger_ops[j]);
        right = right * (id + (std::exp(Complex{0.0, -t} * omegas[j]) - 1.0) * numbers.n_ops[j]);
    }
    return Complex{std::exp(-t * (2.0 * gamma + im_sum))} * (left * numbers.n_ops[k] * right);
}

DampingReport damping_report(double gamma, std::span<const Complex> omegas) {
    DampingReport r;
    r.gamma = gamma;
    r.omegas.assign(omegas.begin(), omegas.end());
    r.imaginary_frequencies = !omegas.empty();
    for (const auto& w : omegas) {
        r.threshold += 0.5 * std::abs(w.imag());
        r.frequency_sum += w.imag();
        if (w.real() != 0.0) r.imaginary_frequencies = false;
    }
    if (!r.imaginary_frequencies) r.frequency_sum = 0.0;
    r.damped = gamma > r.threshold;
    r.bound_constant = std::pow(3.0, 2.0 * static_cast<double>(omegas.size()));
    return r;
}

Complex generalized_trace(const BiorthogonalSystem& system, const CMatrix& op) {
    Complex t{};
    for (std::size_t k = 0; k < system.phis.size(); ++k) t += inner(system.psis[k], op * system.phis[k]);
    return t;
}

double decay_bound_constant(std::size_t n_modes) {
    return n_modes == 1 ? 3.0 : std::pow(3.0, 2.0 * static_cast<double>(n_modes));
}

double decay_bound_constant(const NumberOps& numbers, std::size_t k) {
    double c = operator_norm(numbers.n_ops.at(k));
    for (const auto& n : numbers.n_ops) {
        const double f = 1.0 + 2.0 * operator_norm(n);
        c *= f * f;
    }
    return c;
}

bool norm_decay_bound_check(const OperatorTrajectory& trajectory, double gamma, double constant) {
    for (std::size_t k = 0; k < trajectory.times.size(); ++k) {
        const double bound = constant * std::exp(-2.0 * gamma * trajectory.times[k]) * (1.0 + 1e-8);
        if (!(trajectory.norms[k] <= bound)) return false;
    }
    return true;
}

bool norm_decay_bound_check(const OperatorTrajectory& trajectory, double gamma, std::size_t n_modes) {
    return norm_decay_bound_check(trajectory, gamma, decay_bound_constant(n_modes));
}

} // namespace pfdamp
