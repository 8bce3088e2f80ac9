// pseudofermion.cpp: PF families, vacua, biorthogonal bases, metrics, hermitization

#include "pfdamp/pseudofermion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pfdamp/errors.hpp"
#include "pfdamp/linalg.hpp"

namespace pfdamp {

PFResiduals validate_pf(const CMatrix& a, const CMatrix& b, double base_tol) {
    if (a.dim() != b.dim()) throw DimensionError("validate_pf: a and b differ in dimension");
    const std::size_t n = a.dim();
    PFResiduals r;
    r.anticommutator = (anticommutator(a, b) - CMatrix::identity(n)).frobenius_norm();
    r.a_square = (a * a).frobenius_norm();
    r.b_square = (b * b).frobenius_norm();
    r.tolerance = base_tol * static_cast<double>(n);
    r.pass = r.anticommutator <= r.tolerance && r.a_square <= r.tolerance && r.b_square <= r.tolerance;
    return r;
}

FamilyResiduals validate_family(std::span<const PFPair> pairs, double base_tol) {
    if (pairs.empty()) throw DimensionError("PF family needs at least one mode");
    const std::size_t n = pairs.front().a.dim();
    for (const auto& p : pairs)
        if (p.a.dim() != n || p.b.dim() != n) throw DimensionError("PF family: operators differ in dimension");

    const CMatrix id = CMatrix::identity(n);
    FamilyResiduals r;
    for (std::size_t j = 0; j < pairs.size(); ++j) {
        for (std::size_t k = 0; k < pairs.size(); ++k) {
            CMatrix ab = anticommutator(pairs[j].a, pairs[k].b);
            if (j == k) ab -= id;
            r.ab = std::max(r.ab, ab.frobenius_norm());
            r.aa = std::max(r.aa, anticommutator(pairs[j].a, pairs[k].a).frobenius_norm());
            r.bb = std::max(r.bb, anticommutator(pairs[j].b, pairs[k].b).frobenius_norm());
        }
    }
    r.tolerance = base_tol * static_cast<double>(n);
    r.pass = r.ab <= r.tolerance && r.aa <= r.tolerance && r.bb <= r.tolerance;
    return r;
}

PFFamily::PFFamily(std::vector<PFPair> pairs, double base_tol)
    : pairs_(std::move(pairs)), residuals_(validate_family(pairs_, base_tol)) {}

std::vector<CMatrix> canonical_annihilators(std::size_t n_modes) {
    if (n_modes < 1 || n_modes > 6) throw DimensionError("canonical_fermions: n_modes must be in [1, 6]");
    const CMatrix sigma{{0.0, 1.0}, {0.0, 0.0}};
    const CMatrix z = CMatrix::diagonal({1.0, -1.0});
    const CMatrix id2 = CMatrix::identity(2);

    std::vector<CMatrix> ops;
    for (std::size_t j = 1; j <= n_modes; ++j) {
        CMatrix m = CMatrix::identity(1);
        for (std::size_t i = 0; i < n_modes - j; ++i) m = kron(m, id2);
        m = kron(m, sigma);
        for (std::size_t i = 0; i + 1 < j; ++i) m = kron(m, z);
        ops.push_back(std::move(m));
    }
    return ops;
}

PFFamily canonical_fermions(std::size_t n_modes) {
    std::vector<PFPair> pairs;
    for (auto& a : canonical_annihilators(n_modes)) {
        CMatrix b = adjoint(a);
        pairs.push_back({std::move(a), std::move(b)});
    }
    return PFFamily(std::move(pairs));
}

PFFamily from_similarity(const CMatrix& t, std::size_t n_modes) {
    if (n_modes < 1 || n_modes > 6 || t.dim() != (std::size_t{1} << n_modes))
        throw DimensionError("from_similarity: T must have dimension 2^N with 1 <= N <= 6");
    const CMatrix t_inv = inverse(t);
    std::vector<PFPair> pairs;
    for (const auto& a : canonical_annihilators(n_modes))
        pairs.push_back({t * a * t_inv, t * adjoint(a) * t_inv});
    return PFFamily(std::move(pairs));
}

namespace {

CVector unique_kernel_vector(std::span<const CMatrix> ops, const char* what) {
    auto basis = joint_kernel_basis(ops);
    if (basis.size() != 1) {
        throw DomainError(std::string("vacua: joint kernel of the ") + what + " has dimension " +
                          std::to_string(basis.size()) + ", expected 1");
    }
    return std::move(basis.front());
}

} // namespace

Vacua vacua(const PFFamily& family) {
    if (!family.valid()) throw DomainError("vacua: family violates the pseudo-fermion rules");

    std::vector<CMatrix> lowering, dual_lowering;
    for (const auto& p : family.pairs()) {
        lowering.push_back(p.a);
        dual_lowering.push_back(adjoint(p.b));
    }
    CVector phi = unique_kernel_vector(lowering, "a_j");
    CVector psi = unique_kernel_vector(dual_lowering, "b_j^dagger");

    phi *= Complex{1.0 / phi.norm()};
    for (const auto& z : phi) {
        if (std::abs(z) > 1e-10) {
            phi *= std::conj(z) / std::abs(z);
            break;
        }
    }
    const Complex overlap = inner(phi, psi);
    if (std::abs(overlap) <= 1e-12 * psi.norm()) throw DomainError("vacua: <phi_0, Psi_0> vanishes");
    psi *= 1.0 / overlap;
    return {std::move(phi), std::move(psi)};
}

BiorthogonalSystem build_bases(const PFFamily& family) { return build_bases(family, vacua(family)); }

BiorthogonalSystem build_bases(const PFFamily& family, const Vacua& vac) {
    const std::size_t n_modes = family.n_modes();
    const std::size_t count = std::size_t{1} << n_modes;
    if (family.dim() != count) throw DimensionError("build_bases: family dimension is not 2^N");

    std::vector<CMatrix> a_dagger;
    for (const auto& p : family.pairs()) a_dagger.push_back(adjoint(p.a));

    BiorthogonalSystem sys{n_modes, {}, {}};
    for (std::size_t k = 0; k < count; ++k) {
        CVector phi = vac.phi;
        CVector psi = vac.psi;
        for (std::size_t j = n_modes; j-- > 0;) {
            if (!occupation(k, j)) continue;
            phi = family.b(j) * phi;
            psi = a_dagger[j] * psi;
        }
        sys.phis.push_back(std::move(phi));
        sys.psis.push_back(std::move(psi));
    }
    return sys;
}

double biorthonormality_deviation(const BiorthogonalSystem& system) {
    double worst = 0.0;
    for (std::size_t k = 0; k < system.phis.size(); ++k)
        for (std::size_t n = 0; n < system.psis.size(); ++n)
            worst = std::max(worst, std::abs(inner(system.phis[k], system.psis[n]) - (k == n ? 1.0 : 0.0)));
    return worst;
}

MetricPair metric_operators(const BiorthogonalSystem& system) {
    const std::size_t n = system.phis.front().dim();
    MetricPair m{CMatrix(n), CMatrix(n)};
    for (const auto& phi : system.phis) m.s_phi += outer(phi, phi);
    for (const auto& psi : system.psis) m.s_psi += outer(psi, psi);
    return m;
}

double metric_duality_residual(const MetricPair& metric) {
    return (metric.s_phi * metric.s_psi - CMatrix::identity(metric.s_phi.dim())).frobenius_norm();
}

NumberOps number_operators(const PFFamily& family) {
    NumberOps ops;
    for (const auto& p : family.pairs()) {
        ops.n_ops.push_back(p.b * p.a);
        ops.n_dagger_ops.push_back(adjoint(ops.n_ops.back()));
    }
    return ops;
}

double number_eigen_residual(const NumberOps& numbers, const BiorthogonalSystem& system) {
    double worst = 0.0;
    for (std::size_t j = 0; j < numbers.n_ops.size(); ++j) {
        for (std::size_t k = 0; k < system.phis.size(); ++k) {
            const double nj = occupation(k, j);
            const CVector rphi = numbers.n_ops[j] * system.phis[k] - Complex{nj} * system.phis[k];
            const CVector rpsi = numbers.n_dagger_ops[j] * system.psis[k] - Complex{nj} * system.psis[k];
            worst = std::max({worst, rphi.norm() / system.phis[k].norm(), rpsi.norm() / system.psis[k].norm()});
        }
    }
    return worst;
}

double IntertwiningReport::max() const {
    double worst = 0.0;
    for (double r : psi_side) worst = std::max(worst, r);
    for (double r : phi_side) worst = std::max(worst, r);
    return worst;
}

IntertwiningReport intertwining_check(const MetricPair& metric, const NumberOps& numbers) {
    IntertwiningReport rep;
    for (std::size_t j = 0; j < numbers.n_ops.size(); ++j) {
        const CMatrix& n = numbers.n_ops[j];
        const CMatrix& nd = numbers.n_dagger_ops[j];
        rep.psi_side.push_back((metric.s_psi * n - nd * metric.s_psi).frobenius_norm());
        rep.phi_side.push_back((metric.s_phi * nd - n * metric.s_phi).frobenius_norm());
    }
    return rep;
}

Hermitized hermitize(const MetricPair& metric, const NumberOps& numbers, std::span<const Complex> omegas) {
    if (omegas.size() != numbers.n_ops.size()) throw DimensionError("hermitize: one frequency per mode required");
    const CMatrix root_psi = sqrtm_psd(metric.s_psi);
    const CMatrix root_phi = sqrtm_psd(metric.s_phi);
    const std::size_t n = metric.s_psi.dim();

    Hermitized out{{}, CMatrix(n), true, 0.0};
    Complex total{};
    for (std::size_t j = 0; j < omegas.size(); ++j) {
        out.n_ops.push_back(root_psi * numbers.n_ops[j] * root_phi);
        out.h += omegas[j] * out.n_ops.back();
        total += omegas[j];
        if (omegas[j].imag() != 0.0) out.real_frequencies = false;
    }
    out.h -= (0.5 * total) * CMatrix::identity(n);
    out.hermiticity_residual = (out.h - adjoint(out.h)).frobenius_norm();
    return out;
}

Complex psi_inner_product(const MetricPair& metric, const CVector& f, const CVector& g) {
    return inner(f, metric.s_psi * g);
}

bool FamilyVerification::pass() const {
    return pf.pass && structure_built && biorthonormality <= tolerances.biorthonormality &&
           duality <= tolerances.duality && min_metric_eigenvalue > 0.0 &&
           intertwining <= tolerances.intertwining && eigen <= tolerances.eigen;
}

FamilyVerification verify_family(const PFFamily& family, const VerifyTolerances& tol) {
    FamilyVerification v;
    v.tolerances = tol;
    v.pf = validate_family(family.pairs(), tol.pf);
    if (!v.pf.pass || family.dim() != (std::size_t{1} << family.n_modes())) return v;

    try {
        const BiorthogonalSystem sys = build_bases(family);
        const MetricPair metric = metric_operators(sys);
        const NumberOps numbers = number_operators(family);
        v.biorthonormality = biorthonormality_deviation(sys);
        v.duality = metric_duality_residual(metric);
        v.min_metric_eigenvalue = std::min(hermitian_eig(metric.s_phi).values.front(),
                                           hermitian_eig(metric.s_psi).values.front());
        v.intertwining = intertwining_check(metric, numbers).max();
        v.eigen = number_eigen_residual(numbers, sys);
        v.structure_built = true;
    } catch (const DomainError&) {
        v.structure_built = false;
    }
    return v;
}

} // namespace pfdamp
