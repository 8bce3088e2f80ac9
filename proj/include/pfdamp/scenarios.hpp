// scenarios.hpp: built-in damped models, JSON configuration, damping reports
//
// benaryeh2   2x2 two-level model with losses gamma_a, gamma_b and coupling v
// bagarello4  4x4 model built from two pseudo-fermion modes, parameters alpha, beta, omega1, omega2
// abstractN   N modes obtained from canonical fermions by a (random or given) similarity T

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "pfdamp/cmatrix.hpp"
#include "pfdamp/dynamics.hpp"
#include "pfdamp/pseudofermion.hpp"

namespace pfdamp {

// Below this |Omega| the 2x2 model is treated as degenerate (linear-in-t branch, no PF pair).
inline constexpr double kDegenerateOmega = 1e-12;

struct Benaryeh2Config {
    double gamma_a = 1.0;
    double gamma_b = 1.0;
    Complex v{1.0, 0.0};
};

struct Bagarello4Config {
    double alpha = 2.0;
    double beta = 1.0;
    double omega1 = 3.0;
    double omega2 = 1.0;
};

struct AbstractNConfig {
    std::size_t n_modes = 1;
    std::vector<Complex> omegas;
    std::uint64_t seed = 0;
    // Explicit similarity; when absent T is drawn from `seed`.
    std::optional<CMatrix> similarity;
    // Explicit Gamma; when absent Gamma = threshold + gamma_margin.
    std::optional<double> gamma;
    double gamma_margin = 0.5;
};

// Throw DomainError when the invariants of the config do not hold.
void check_config(const Benaryeh2Config& cfg);
void check_config(const Bagarello4Config& cfg);
void check_config(const AbstractNConfig& cfg);

// ---------------------------------------------------------------- benaryeh2

enum class Branch { oscillatory, degenerate, hyperbolic };

const char* branch_name(Branch b);

// Psi(t) = e^{-Gamma t} (A_j f(t) + B_j g(t)) per component, with (f, g) =
// (cos sqrt(W) t, sin sqrt(W) t), (1, t) or (e^{sqrt|W| t}, e^{-sqrt|W| t}).
struct BranchCoefficients {
    Branch branch = Branch::oscillatory;
    Complex a0, a1, b0, b1;
};

struct Benaryeh2 {
    Benaryeh2Config config;
    EffectiveHamiltonian ham;     // H_eff = [[-i gamma_a, v], [conj v, -i gamma_b]]
    double asymmetry = 0.0;       // (gamma_a - gamma_b) / 2
    double omega = 0.0;           // |v|^2 - asymmetry^2
    Branch branch = Branch::oscillatory;
    Complex lambda_plus, lambda_minus;  // eigenvalues of the traceless part, +-sqrt(omega)
    Complex energy_plus, energy_minus;  // eigenvalues of H_eff
    // Eigenvectors of the traceless part (absent in the degenerate branch).
    std::optional<CVector> eta_plus, eta_minus;
    // a = |eta_-><chi_+|, b = |eta_+><chi_-| with chi the dual basis, so b a projects on eta_+.
    std::optional<PFFamily> family;
    Complex pf_frequency;  // 2 sqrt(omega): H = pf_frequency (b a - 1/2)

    BranchCoefficients coefficients(const CVector& psi0) const;
    CVector evaluate(const BranchCoefficients& c, double t) const;
    CVector evaluate(const CVector& psi0, double t) const { return evaluate(coefficients(psi0), t); }
};

Benaryeh2 build_benaryeh2(const Benaryeh2Config& cfg);

// e^{-2 Gamma t} (N e^{-i w t} + Ndag N (1 - e^{-i w t})), the single-mode number
// evolution for H_eff = w (N - 1/2) - i Gamma. Evaluated with w = omega it
// disagrees with the direct exponential; with w = pf_frequency it agrees.
CMatrix single_mode_number_evolution(const CMatrix& n, Complex w, double gamma, double t);

// ---------------------------------------------------------------- bagarello4

// Phi(t) = sum_m c_m e^{r_m t} v_m with r_m = -i mu_m over the eigenpairs (mu_m, v_m) of
// the traceless part H.
struct ModeExpansion {
    std::vector<Complex> rates;
    std::vector<CVector> modes;
};

struct Bagarello4 {
    Bagarello4Config config;
    EffectiveHamiltonian ham;
    double gamma_formula = 0.0;  // (alpha + beta) (omega1 - omega2) / (2 (alpha - beta))
    CMatrix similarity;
    PFFamily family;
    std::vector<Complex> omegas;  // (i omega1, i omega2)
    // |pf_hamiltonian(omegas) - H|_max: the traceless part rebuilt from the family.
    double pf_hamiltonian_deviation = 0.0;
    // max over j of |a_j - a_j^shown|, |b_j - b_j^shown| against the closed-form entries.
    double closed_form_operator_deviation = 0.0;
    ModeExpansion expansion;

    // Amplitudes amp[i][m] = c_m (v_m)_i for a given initial state.
    std::vector<std::vector<Complex>> amplitudes(const CVector& psi0) const;
    CVector evaluate(const CVector& psi0, double t) const;
    // (alpha omega2 - beta omega1) / (alpha - beta) = (omega1 + omega2)/2 - Gamma
    double dominant_rate() const;
};

Bagarello4 build_bagarello4(const Bagarello4Config& cfg);

// T = [[0, a, b, 0], [0, 1, 1, 0], [a, 0, 1, 0], [0, b, 0, a]]
CMatrix bagarello4_similarity(double alpha, double beta);

// Entry-by-entry closed forms of a_1, b_1, a_2, b_2 = T A_j T^{-1}, T A_j^dagger T^{-1}.
std::vector<PFPair> bagarello4_closed_form_operators(double alpha, double beta);

// Two-mode product formula with the (e^{w2 t} - 1) factor appearing once on the
// Ndag_2 N_2 term, for H_eff = i(w1 N1 + w2 N2 - (w1+w2)/2) - i Gamma:
//   e^{-(2 Gamma + w2) t} (N1 + Ndag1 N1 (e^{w1 t} - 1)) (1 + (N2 + Ndag2)(e^{w2 t} - 1) + Ndag2 N2 (e^{w2 t} - 1))
// Kept to quantify its distance from the exact evolution.
CMatrix two_mode_number_evolution_single_factor(const NumberOps& numbers, double w1, double w2, double gamma,
                                                double t);

// ---------------------------------------------------------------- abstractN

struct AbstractN {
    AbstractNConfig config;
    CMatrix similarity;
    std::size_t draws = 0;  // rejection-sampling draws used (0 for an explicit T)
    PFFamily family;
    BiorthogonalSystem system;
    MetricPair metrics;
    NumberOps numbers;
    CMatrix h_pf;  // sum_j Omega_j N_j - (1/2) sum_j Omega_j
    EffectiveHamiltonian ham;
    DampingReport damping;
};

struct SimilarityDraw {
    CMatrix t;
    std::size_t draws;
};

// Entries uniform on [-1,1] + i[-1,1] from mt19937_64(seed), row-major, redrawn until
// cond(T) < max_condition. ConvergenceError after max_draws.
SimilarityDraw random_similarity(std::size_t n_modes, std::uint64_t seed, double max_condition = 100.0,
                                 std::size_t max_draws = 1000);

AbstractN build_abstractN(const AbstractNConfig& cfg);

// ---------------------------------------------------------------- configs and views

using ScenarioConfig = std::variant<Benaryeh2Config, Bagarello4Config, AbstractNConfig>;

struct ScenarioDocument {
    ScenarioConfig config;
    std::optional<CVector> psi0;  // optional top-level "psi0"
};

// {"scenario": "benaryeh2" | "bagarello4" | "abstractN", "parameters": {...}, "psi0": [[re, im], ...]}
// Complex numbers are [re, im] pairs (a bare number is read as real). abstractN accepts
// "similarity": "identity" or a matrix file path (relative to `base_dir`).
// Throws ParseError naming the offending field.
ScenarioDocument parse_scenario(const std::string& text, const std::string& source = "<config>",
                                const std::filesystem::path& base_dir = {});
ScenarioDocument read_scenario_file(const std::filesystem::path& path);

std::vector<std::string> scenario_names();

// Common face of the three models.
struct ScenarioView {
    std::string name;
    EffectiveHamiltonian ham;
    std::optional<PFFamily> family;
    std::vector<Complex> omegas;
    CVector default_psi0;
    std::vector<std::string> notes;  // provenance lines for output headers
    std::vector<std::pair<std::string, std::string>> facts;  // scenario-specific report lines
};

ScenarioView make_view(const ScenarioConfig& cfg);

struct ScenarioReport {
    std::string name;
    DampingReport damping;
    bool has_family = false;
    Complex trace_pf;      // generalized trace of the PF Hamiltonian
    Complex trace_eff;     // generalized trace of H_eff
    Complex trace_eff_expected;  // -i 2^N Gamma
    double family_residual = 0.0;
    std::vector<std::pair<std::string, std::string>> extras;
};

ScenarioReport make_report(const ScenarioView& view, double base_tol = kDefaultTolerance);

} // namespace pfdamp
