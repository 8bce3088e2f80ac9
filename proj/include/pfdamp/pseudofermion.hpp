// pseudofermion.hpp: pseudo-fermion families, biorthogonal bases and metric operators
//
// A pseudo-fermion (PF) pair (a, b) satisfies {a, b} = 1 and a^2 = b^2 = 0 without
// requiring b = a^dagger. N modes live on a 2^N dimensional space.
//
// Multi-index convention: basis slot k carries occupations n_j = bit (j-1) of k,
// so mode 1 is the least significant bit. The basis vectors are
//
//   phi_n = b_1^{n_1} b_2^{n_2} ... b_N^{n_N} phi_0,
//   Psi_n = (a_1^dagger)^{n_1} ... (a_N^dagger)^{n_N} Psi_0,
//
// i.e. the products are written left to right in j and b_N acts on the vacuum first.
// Lowering then reads a_j phi_n = (-1)^{n_1 + ... + n_{j-1}} phi_{n - e_j}.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pfdamp/cmatrix.hpp"

namespace pfdamp {

inline constexpr double kDefaultTolerance = 1e-10;

struct PFPair {
    CMatrix a;
    CMatrix b;
};

// Residuals are Frobenius norms, which bound the operator norm from above.
struct PFResiduals {
    double anticommutator = 0.0;  // |{a,b} - 1|
    double a_square = 0.0;        // |a^2|
    double b_square = 0.0;        // |b^2|
    double tolerance = 0.0;
    bool pass = false;
};

// Tolerance is base_tol * dim.
PFResiduals validate_pf(const CMatrix& a, const CMatrix& b, double base_tol = kDefaultTolerance);

// Maxima over all mode pairs (j, k) of |{a_j,b_k} - delta_jk|, |{a_j,a_k}|, |{b_j,b_k}|.
struct FamilyResiduals {
    double ab = 0.0;
    double aa = 0.0;
    double bb = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

class PFFamily {
public:
    // All pairs must share one dimension; validity is measured, not enforced.
    explicit PFFamily(std::vector<PFPair> pairs, double base_tol = kDefaultTolerance);

    std::size_t n_modes() const noexcept { return pairs_.size(); }
    std::size_t dim() const noexcept { return pairs_.front().a.dim(); }
    const PFPair& pair(std::size_t j) const { return pairs_.at(j); }
    const CMatrix& a(std::size_t j) const { return pairs_.at(j).a; }
    const CMatrix& b(std::size_t j) const { return pairs_.at(j).b; }
    std::span<const PFPair> pairs() const noexcept { return pairs_; }

    const FamilyResiduals& residuals() const noexcept { return residuals_; }
    bool valid() const noexcept { return residuals_.pass; }

private:
    std::vector<PFPair> pairs_;
    FamilyResiduals residuals_;
};

FamilyResiduals validate_family(std::span<const PFPair> pairs, double base_tol = kDefaultTolerance);

// Jordan-Wigner annihilators A_j = 1^{(N-j)} (x) sigma (x) Z^{(j-1)}, sigma = [[0,1],[0,0]],
// Z = diag(1,-1). For N = 2 these are exactly the displayed 4x4 A_1, A_2. 1 <= N <= 6.
std::vector<CMatrix> canonical_annihilators(std::size_t n_modes);
PFFamily canonical_fermions(std::size_t n_modes);

// a_j = T A_j T^{-1}, b_j = T A_j^dagger T^{-1}; T must be invertible with dim 2^N.
PFFamily from_similarity(const CMatrix& t, std::size_t n_modes);

struct Vacua {
    CVector phi;  // joint kernel of the a_j, unit norm, first nonzero entry real positive
    CVector psi;  // joint kernel of the b_j^dagger, scaled so <phi, psi> = 1
};

// Throws DomainError when the family is invalid or a joint kernel is not one-dimensional.
Vacua vacua(const PFFamily& family);

struct BiorthogonalSystem {
    std::size_t n_modes = 0;
    std::vector<CVector> phis;
    std::vector<CVector> psis;
};

inline int occupation(std::size_t index, std::size_t mode) { return static_cast<int>((index >> mode) & 1u); }

BiorthogonalSystem build_bases(const PFFamily& family);
BiorthogonalSystem build_bases(const PFFamily& family, const Vacua& vac);

// max |<phi_k, Psi_n> - delta_kn|
double biorthonormality_deviation(const BiorthogonalSystem& system);

struct MetricPair {
    CMatrix s_phi;
    CMatrix s_psi;
};

// S_phi = sum_n |phi_n><phi_n|, S_Psi = sum_n |Psi_n><Psi_n|.
MetricPair metric_operators(const BiorthogonalSystem& system);
// |S_phi S_Psi - 1|_F
double metric_duality_residual(const MetricPair& metric);

struct NumberOps {
    std::vector<CMatrix> n_ops;         // N_j = b_j a_j
    std::vector<CMatrix> n_dagger_ops;  // N_j^dagger
};

NumberOps number_operators(const PFFamily& family);

// Largest relative residual |N_j phi_n - n_j phi_n| / |phi_n| (and the Psi / N^dagger analogue).
double number_eigen_residual(const NumberOps& numbers, const BiorthogonalSystem& system);

struct IntertwiningReport {
    std::vector<double> psi_side;  // |S_Psi N_j - N_j^dagger S_Psi|_F
    std::vector<double> phi_side;  // |S_phi N_j^dagger - N_j S_phi|_F
    double max() const;
};

IntertwiningReport intertwining_check(const MetricPair& metric, const NumberOps& numbers);

struct Hermitized {
    std::vector<CMatrix> n_ops;  // S_Psi^{1/2} N_j S_phi^{1/2}
    CMatrix h;                   // sum_j Omega_j n_j - (1/2) sum_j Omega_j
    bool real_frequencies = true;
    double hermiticity_residual = 0.0;  // |h - h^dagger|_F
};

Hermitized hermitize(const MetricPair& metric, const NumberOps& numbers, std::span<const Complex> omegas);

// <f, g>_Psi = <S_Psi^{1/2} f, S_Psi^{1/2} g> = <f, S_Psi g>
Complex psi_inner_product(const MetricPair& metric, const CVector& f, const CVector& g);

struct VerifyTolerances {
    double pf = kDefaultTolerance;                 // scaled by dim
    double biorthonormality = kDefaultTolerance;
    double duality = 10 * kDefaultTolerance;
    double intertwining = 10 * kDefaultTolerance;
    double eigen = kDefaultTolerance;

    static VerifyTolerances from_base(double base) {
        return {base, base, 10 * base, 10 * base, base};
    }
};

// Full sweep over one family: PF rules, biorthonormality, metric duality and
// positivity, intertwining, number-operator eigenrelations.
struct FamilyVerification {
    FamilyResiduals pf;
    double biorthonormality = 0.0;
    double duality = 0.0;
    double min_metric_eigenvalue = 0.0;
    double intertwining = 0.0;
    double eigen = 0.0;
    VerifyTolerances tolerances;
    bool structure_built = false;  // false when vacua/bases could not be constructed

    bool pass() const;
};

FamilyVerification verify_family(const PFFamily& family, const VerifyTolerances& tol = {});

} // namespace pfdamp
