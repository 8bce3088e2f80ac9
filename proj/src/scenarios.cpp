// scenarios.cpp: the three built-in models and their configuration

#include "pfdamp/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "pfdamp/errors.hpp"
#include "pfdamp/linalg.hpp"
#include "pfdamp/matrix_io.hpp"
#include "pfdamp/trajectory_io.hpp"

namespace pfdamp {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

} // namespace

void check_config(const Benaryeh2Config& cfg) {
    if (!(std::isfinite(cfg.gamma_a) && cfg.gamma_a > 0.0)) throw DomainError("gamma_a must be finite and > 0");
    if (!(std::isfinite(cfg.gamma_b) && cfg.gamma_b > 0.0)) throw DomainError("gamma_b must be finite and > 0");
    if (!finite(cfg.v)) throw DomainError("v must be finite");
}

void check_config(const Bagarello4Config& cfg) {
    for (double x : {cfg.alpha, cfg.beta, cfg.omega1, cfg.omega2})
        if (!std::isfinite(x)) throw DomainError("bagarello4 parameters must be finite");
    if (cfg.alpha == cfg.beta) throw DomainError("alpha must differ from beta");
    if (cfg.alpha == 0.0) throw DomainError("alpha must be nonzero");
    if (!(cfg.omega1 > cfg.omega2 && cfg.omega2 > 0.0)) throw DomainError("need omega1 > omega2 > 0");
}

void check_config(const AbstractNConfig& cfg) {
    if (cfg.n_modes < 1 || cfg.n_modes > 6) throw DomainError("n_modes must be in [1, 6]");
    if (cfg.omegas.size() != cfg.n_modes)
        throw DomainError("omegas: expected " + std::to_string(cfg.n_modes) + " values, got " +
                          std::to_string(cfg.omegas.size()));
    for (auto w : cfg.omegas)
        if (!finite(w)) throw DomainError("omegas must be finite");
    if (cfg.similarity && cfg.similarity->dim() != (std::size_t{1} << cfg.n_modes))
        throw DomainError("similarity must have dimension 2^n_modes");
    if (cfg.gamma && !std::isfinite(*cfg.gamma)) throw DomainError("gamma must be finite");
    if (!std::isfinite(cfg.gamma_margin)) throw DomainError("gamma_margin must be finite");
}

// ---------------------------------------------------------------- benaryeh2

const char* branch_name(Branch b) {
    switch (b) {
    case Branch::oscillatory: return "oscillatory";
    case Branch::degenerate: return "degenerate";
    case Branch::hyperbolic: return "hyperbolic";
    }
    return "?";
}

Benaryeh2 build_benaryeh2(const Benaryeh2Config& cfg) {
    check_config(cfg);
    const Complex v = cfg.v;
    const CMatrix h_eff{{Complex{0.0, -cfg.gamma_a}, v}, {std::conj(v), Complex{0.0, -cfg.gamma_b}}};

    Benaryeh2 m{cfg, gamma_shift(h_eff), 0.0, 0.0, Branch::oscillatory, {}, {}, {}, {}, {}, {}, {}, {}};
    m.asymmetry = 0.5 * (cfg.gamma_a - cfg.gamma_b);
    m.omega = std::norm(v) - m.asymmetry * m.asymmetry;
    if (std::abs(m.omega) < kDegenerateOmega) m.branch = Branch::degenerate;
    else m.branch = m.omega > 0.0 ? Branch::oscillatory : Branch::hyperbolic;

    const Complex root = m.branch == Branch::degenerate ? Complex{} : std::sqrt(Complex{m.omega});
    const double gamma = m.ham.gamma;
    m.lambda_plus = root;
    m.lambda_minus = -root;
    m.energy_plus = Complex{0.0, -gamma} + root;
    m.energy_minus = Complex{0.0, -gamma} - root;
    m.pf_frequency = 2.0 * root;

    if (m.branch == Branch::degenerate) return m;

    if (v != Complex{}) {
        const Complex vb = std::conj(v);
        m.eta_plus = CVector{(Complex{0.0, -m.asymmetry} + root) / vb, 1.0};
        m.eta_minus = CVector{-(Complex{0.0, m.asymmetry} + root) / vb, 1.0};
    } else {
        // diag(-i g, i g): root = i|g| sits on e_1 for g > 0 and on e_0 for g < 0
        const bool upper = m.asymmetry > 0.0;
        m.eta_plus = basis_vector(2, upper ? 1 : 0);
        m.eta_minus = basis_vector(2, upper ? 0 : 1);
    }

    const std::vector<CVector> cols{*m.eta_plus, *m.eta_minus};
    const CMatrix e = CMatrix::from_columns(cols);
    const CMatrix e_inv = inverse(e);
    const CMatrix lower{{0.0, 0.0}, {1.0, 0.0}};
    const CMatrix raise{{0.0, 1.0}, {0.0, 0.0}};
    m.family = PFFamily({PFPair{e * lower * e_inv, e * raise * e_inv}});
    return m;
}

BranchCoefficients Benaryeh2::coefficients(const CVector& psi0) const {
    if (psi0.dim() != 2) throw DimensionError("benaryeh2: initial state must have dimension 2");
    const Complex p0 = psi0[0], p1 = psi0[1];
    const Complex v = config.v, vb = std::conj(v);
    const double g = asymmetry;
    // derivatives of the traceless-part solution at t = 0
    const Complex d0 = -g * p0 - kI * v * p1;
    const Complex d1 = g * p1 - kI * vb * p0;

    BranchCoefficients c{branch, p0, p1, d0, d1};
    switch (branch) {
    case Branch::degenerate: break;
    case Branch::oscillatory: {
        const double s = std::sqrt(omega);
        c.b0 = d0 / s;
        c.b1 = d1 / s;
        break;
    }
    case Branch::hyperbolic: {
        const double k = std::sqrt(-omega);
        c.a0 = 0.5 * (p0 + d0 / k);
        c.b0 = 0.5 * (p0 - d0 / k);
        c.a1 = 0.5 * (p1 + d1 / k);
        c.b1 = 0.5 * (p1 - d1 / k);
        break;
    }
    }
    return c;
}

CVector Benaryeh2::evaluate(const BranchCoefficients& c, double t) const {
    double f = 1.0, g = t;
    if (c.branch == Branch::oscillatory) {
        const double s = std::sqrt(omega);
        f = std::cos(s * t);
        g = std::sin(s * t);
    } else if (c.branch == Branch::hyperbolic) {
        const double k = std::sqrt(-omega);
        f = std::exp(k * t);
        g = std::exp(-k * t);
    }
    const double decay = std::exp(-ham.gamma * t);
    return CVector{decay * (c.a0 * f + c.b0 * g), decay * (c.a1 * f + c.b1 * g)};
}

CMatrix single_mode_number_evolution(const CMatrix& n, Complex w, double gamma, double t) {
    const Complex phase = std::exp(Complex{0.0, -t} * w);
    const CMatrix mixed = adjoint(n) * n;
    return Complex{std::exp(-2.0 * gamma * t)} * (phase * n + (1.0 - phase) * mixed);
}

// ---------------------------------------------------------------- bagarello4

CMatrix bagarello4_similarity(double a, double b) {
    return CMatrix{{0.0, a, b, 0.0}, {0.0, 1.0, 1.0, 0.0}, {a, 0.0, 1.0, 0.0}, {0.0, b, 0.0, a}};
}

std::vector<PFPair> bagarello4_closed_form_operators(double a, double b) {
    const double d = a - b;
    const double ad = a * d;
    const CMatrix a1 = Complex{1.0 / a} * CMatrix{{-b * b / d, b * b * b / d, 0.0, b},
                                                  {-b / d, b * b / d, 0.0, 1.0},
                                                  {(a * a - b) / d, b * (b - a * a) / d, 0.0, 1.0},
                                                  {0.0, 0.0, 0.0, 0.0}};
    const CMatrix b1{{1.0 / d, -a / d, 1.0, 0.0},
                     {1.0 / ad, -1.0 / d, 1.0 / a, 0.0},
                     {0.0, 0.0, 0.0, 0.0},
                     {(b - a * a) / ad, (a * a - b) / d, b / a, 0.0}};
    const CMatrix a2{{b / d, -b * b / d, 0.0, -1.0},
                     {b / ad, -b * b / ad, 0.0, -1.0 / a},
                     {-a / d, a * a / d, 0.0, 0.0},
                     {b * b / ad, -b * b * b / ad, 0.0, -b / a}};
    const CMatrix b2{{b / ad, -b / d, b / a, 0.0},
                     {1.0 / ad, -1.0 / d, 1.0 / a, 0.0},
                     {1.0 / ad, -1.0 / d, 1.0 / a, 0.0},
                     {-a / d, a * b / d, 0.0, 0.0}};
    return {{a1, b1}, {a2, b2}};
}

Bagarello4 build_bagarello4(const Bagarello4Config& cfg) {
    check_config(cfg);
    const double a = cfg.alpha, b = cfg.beta, w1 = cfg.omega1, w2 = cfg.omega2;
    const double d = w1 - w2;
    const CMatrix raw{{0.0, -a * b * d, 0.0, 0.0},
                      {d, -(a + b) * d, 0.0, 0.0},
                      {-w2, a * w2, b * w2 - a * w1, 0.0},
                      {-b * w2, b * b * w2, 0.0, a * w2 - b * w1}};
    const CMatrix h_eff = Complex{0.0, 1.0 / (a - b)} * raw;
    EffectiveHamiltonian ham = gamma_shift(h_eff);

    CMatrix t = bagarello4_similarity(a, b);
    PFFamily family = from_similarity(t, 2);
    std::vector<Complex> omegas{Complex{0.0, w1}, Complex{0.0, w2}};

    const CMatrix h_pf = pf_hamiltonian(number_operators(family), omegas);
    const double pf_dev = max_abs_diff(h_pf, ham.h_traceless);

    double op_dev = 0.0;
    const auto shown = bagarello4_closed_form_operators(a, b);
    for (std::size_t j = 0; j < 2; ++j) {
        op_dev = std::max(op_dev, max_abs_diff(shown[j].a, family.a(j)));
        op_dev = std::max(op_dev, max_abs_diff(shown[j].b, family.b(j)));
    }

    const GeneralEig eig = general_eig(ham.h_traceless);
    if (!eig.diagonalizable) throw DomainError("bagarello4: traceless Hamiltonian is not diagonalizable");
    ModeExpansion expansion;
    for (std::size_t m = 0; m < eig.values.size(); ++m) {
        expansion.rates.push_back(Complex{0.0, -1.0} * eig.values[m]);
        expansion.modes.push_back(eig.vectors[m]);
    }

    const double gamma_formula = (a + b) * d / (2.0 * (a - b));
    return Bagarello4{cfg,     std::move(ham), gamma_formula, std::move(t),       std::move(family),
                      omegas, pf_dev,         op_dev,        std::move(expansion)};
}

std::vector<std::vector<Complex>> Bagarello4::amplitudes(const CVector& psi0) const {
    if (psi0.dim() != 4) throw DimensionError("bagarello4: initial state must have dimension 4");
    const CVector c = solve(CMatrix::from_columns(expansion.modes), psi0);
    std::vector<std::vector<Complex>> amp(4, std::vector<Complex>(expansion.modes.size()));
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t m = 0; m < expansion.modes.size(); ++m) amp[i][m] = c[m] * expansion.modes[m][i];
    return amp;
}

CVector Bagarello4::evaluate(const CVector& psi0, double t) const {
    const auto amp = amplitudes(psi0);
    CVector out(4);
    const double decay = std::exp(-ham.gamma * t);
    for (std::size_t i = 0; i < 4; ++i) {
        Complex s{};
        for (std::size_t m = 0; m < expansion.rates.size(); ++m) s += amp[i][m] * std::exp(expansion.rates[m] * t);
        out[i] = decay * s;
    }
    return out;
}

double Bagarello4::dominant_rate() const {
    return (config.alpha * config.omega2 - config.beta * config.omega1) / (config.alpha - config.beta);
}

CMatrix two_mode_number_evolution_single_factor(const NumberOps& numbers, double w1, double w2, double gamma,
                                                double t) {
    if (numbers.n_ops.size() != 2) throw DimensionError("two-mode formula needs exactly two modes");
    const CMatrix& n1 = numbers.n_ops[0];
    const CMatrix& n2 = numbers.n_ops[1];
    const CMatrix& m1 = numbers.n_dagger_ops[0];
    const CMatrix& m2 = numbers.n_dagger_ops[1];
    const Complex e1 = std::exp(w1 * t) - 1.0;
    const Complex e2 = std::exp(w2 * t) - 1.0;
    const CMatrix id = CMatrix::identity(n1.dim());
    const CMatrix left = n1 + e1 * (m1 * n1);
    const CMatrix right = id + e2 * (n2 + m2) + e2 * (m2 * n2);
    return Complex{std::exp(-(2.0 * gamma + w2) * t)} * (left * right);
}

// ---------------------------------------------------------------- abstractN

SimilarityDraw random_similarity(std::size_t n_modes, std::uint64_t seed, double max_condition,
                                 std::size_t max_draws) {
    if (n_modes < 1 || n_modes > 6) throw DimensionError("random_similarity: n_modes must be in [1, 6]");
    const std::size_t d = std::size_t{1} << n_modes;
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::size_t draw = 1; draw <= max_draws; ++draw) {
        CMatrix t(d);
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c) {
                const double re = u(gen);
                t(r, c) = Complex{re, u(gen)};
            }
        if (condition_number(t) < max_condition) return {std::move(t), draw};
    }
    throw ConvergenceError("random_similarity: no draw with cond(T) < " + format_shortest(max_condition) +
                           " in " + std::to_string(max_draws) + " attempts (seed " + std::to_string(seed) + ")");
}

AbstractN build_abstractN(const AbstractNConfig& cfg) {
    check_config(cfg);
    SimilarityDraw draw = cfg.similarity ? SimilarityDraw{*cfg.similarity, 0}
                                         : random_similarity(cfg.n_modes, cfg.seed);
    PFFamily family = from_similarity(draw.t, cfg.n_modes);
    BiorthogonalSystem system = build_bases(family);
    MetricPair metrics = metric_operators(system);
    NumberOps numbers = number_operators(family);
    CMatrix h_pf = pf_hamiltonian(numbers, cfg.omegas);

    const double threshold = damping_report(0.0, cfg.omegas).threshold;
    const double gamma = cfg.gamma ? *cfg.gamma : threshold + cfg.gamma_margin;
    CMatrix h_eff = h_pf - Complex{0.0, gamma} * CMatrix::identity(h_pf.dim());
    EffectiveHamiltonian ham{std::move(h_eff), gamma, h_pf};

    return AbstractN{cfg,
                     std::move(draw.t),
                     draw.draws,
                     std::move(family),
                     std::move(system),
                     std::move(metrics),
                     std::move(numbers),
                     std::move(h_pf),
                     std::move(ham),
                     damping_report(gamma, cfg.omegas)};
}

// ---------------------------------------------------------------- configuration

namespace {

using nlohmann::json;

struct FieldReader {
    const std::string& source;

    [[noreturn]] void fail(const std::string& field, const std::string& what) const {
        throw ParseError(source, 0, "field '" + field + "': " + what);
    }

    double real(const json& obj, const std::string& key, const std::string& path) const {
        const json& x = obj.at(key);
        if (!x.is_number()) fail(path, "expected a number");
        const double v = x.get<double>();
        if (!std::isfinite(v)) fail(path, "not finite");
        return v;
    }

    Complex complex(const json& x, const std::string& path) const {
        if (x.is_number()) return {x.get<double>(), 0.0};
        if (!x.is_array() || x.size() != 2 || !x[0].is_number() || !x[1].is_number())
            fail(path, "expected a number or a [re, im] pair");
        return {x[0].get<double>(), x[1].get<double>()};
    }

    std::vector<Complex> complex_list(const json& x, const std::string& path) const {
        if (!x.is_array()) fail(path, "expected an array");
        std::vector<Complex> out;
        for (std::size_t i = 0; i < x.size(); ++i) out.push_back(complex(x[i], path + "[" + std::to_string(i) + "]"));
        return out;
    }

    void require(const json& obj, std::initializer_list<const char*> required,
                 std::initializer_list<const char*> optional, const std::string& prefix) const {
        for (const char* k : required)
            if (!obj.contains(k)) fail(prefix + k, "missing");
        for (const auto& [k, _] : obj.items()) {
            const bool known = std::any_of(required.begin(), required.end(), [&](const char* r) { return k == r; }) ||
                               std::any_of(optional.begin(), optional.end(), [&](const char* r) { return k == r; });
            if (!known) fail(prefix + k, "unknown field");
        }
    }
};

std::size_t line_of_byte(const std::string& text, std::size_t byte) {
    const std::size_t end = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(end), '\n'));
}

template <class Config>
void checked(const Config& cfg, const std::string& source) {
    try {
        check_config(cfg);
    } catch (const DomainError& e) {
        throw ParseError(source, 0, std::string("parameters: ") + e.what());
    }
}

} // namespace

std::vector<std::string> scenario_names() { return {"benaryeh2", "bagarello4", "abstractN"}; }

ScenarioDocument parse_scenario(const std::string& text, const std::string& source,
                                const std::filesystem::path& base_dir) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(source, line_of_byte(text, e.byte == 0 ? 0 : e.byte - 1), "malformed JSON");
    }
    const FieldReader rd{source};
    if (!doc.is_object()) rd.fail("<root>", "expected an object");
    rd.require(doc, {"scenario", "parameters"}, {"psi0"}, "");
    if (!doc["scenario"].is_string()) rd.fail("scenario", "expected a string");
    const std::string name = doc["scenario"].get<std::string>();
    const json& p = doc["parameters"];
    if (!p.is_object()) rd.fail("parameters", "expected an object");

    ScenarioDocument out{Benaryeh2Config{}, std::nullopt};
    if (name == "benaryeh2") {
        rd.require(p, {"gamma_a", "gamma_b", "v"}, {}, "parameters.");
        Benaryeh2Config c{rd.real(p, "gamma_a", "parameters.gamma_a"), rd.real(p, "gamma_b", "parameters.gamma_b"),
                          rd.complex(p["v"], "parameters.v")};
        checked(c, source);
        out.config = c;
    } else if (name == "bagarello4") {
        rd.require(p, {"alpha", "beta", "omega1", "omega2"}, {}, "parameters.");
        Bagarello4Config c{rd.real(p, "alpha", "parameters.alpha"), rd.real(p, "beta", "parameters.beta"),
                           rd.real(p, "omega1", "parameters.omega1"), rd.real(p, "omega2", "parameters.omega2")};
        checked(c, source);
        out.config = c;
    } else if (name == "abstractN") {
        rd.require(p, {"n_modes", "omegas"}, {"seed", "similarity", "gamma", "gamma_margin"}, "parameters.");
        AbstractNConfig c;
        if (!p["n_modes"].is_number_integer() || p["n_modes"].get<long long>() < 1)
            rd.fail("parameters.n_modes", "expected a positive integer");
        c.n_modes = p["n_modes"].get<std::size_t>();
        c.omegas = rd.complex_list(p["omegas"], "parameters.omegas");
        if (p.contains("seed")) {
            if (!p["seed"].is_number_unsigned()) rd.fail("parameters.seed", "expected a non-negative integer");
            c.seed = p["seed"].get<std::uint64_t>();
        }
        if (p.contains("similarity")) {
            if (!p["similarity"].is_string()) rd.fail("parameters.similarity", "expected \"identity\" or a file path");
            const std::string s = p["similarity"].get<std::string>();
            if (s == "identity") {
                if (c.n_modes <= 6) c.similarity = CMatrix::identity(std::size_t{1} << c.n_modes);
            } else {
                c.similarity = read_matrix_file(base_dir / s);
            }
        }
        if (p.contains("gamma")) c.gamma = rd.real(p, "gamma", "parameters.gamma");
        if (p.contains("gamma_margin")) c.gamma_margin = rd.real(p, "gamma_margin", "parameters.gamma_margin");
        checked(c, source);
        out.config = c;
    } else {
        rd.fail("scenario", "unknown scenario '" + name + "' (expected benaryeh2, bagarello4 or abstractN)");
    }

    if (doc.contains("psi0")) out.psi0 = CVector(rd.complex_list(doc["psi0"], "psi0"));
    return out;
}

ScenarioDocument read_scenario_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path.string(), 0, "cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str(), path.string(), path.parent_path());
}

// ---------------------------------------------------------------- views and reports

namespace {

ScenarioView view_of(const Benaryeh2Config& cfg) {
    Benaryeh2 m = build_benaryeh2(cfg);
    ScenarioView v{"benaryeh2", m.ham, m.family, {}, CVector{1.0, 0.0}, {}, {}};
    if (m.family) v.omegas = {m.pf_frequency};
    v.notes.push_back("scenario benaryeh2 gamma_a=" + format_shortest(cfg.gamma_a) +
                      " gamma_b=" + format_shortest(cfg.gamma_b) + " v=" + format_shortest(cfg.v));
    v.notes.push_back(std::string("branch ") + branch_name(m.branch) + ", Omega=" + format_shortest(m.omega));
    if (m.branch == Branch::degenerate)
        v.notes.push_back("|Omega| < 1e-12: degenerate branch, no pseudo-fermion pair");
    v.notes.push_back("default initial state (1, 0)");
    v.facts = {{"branch", branch_name(m.branch)},
               {"omega", format_shortest(m.omega)},
               {"energy_plus", format_shortest(m.energy_plus)},
               {"energy_minus", format_shortest(m.energy_minus)}};
    if (m.family) v.facts.emplace_back("pf_frequency", format_shortest(m.pf_frequency));
    return v;
}

ScenarioView view_of(const Bagarello4Config& cfg) {
    Bagarello4 m = build_bagarello4(cfg);
    const CVector psi0{0.5, 0.5, 0.5, 0.5};
    ScenarioView v{"bagarello4", m.ham, m.family, m.omegas, psi0, {}, {}};
    v.notes.push_back("scenario bagarello4 alpha=" + format_shortest(cfg.alpha) + " beta=" + format_shortest(cfg.beta) +
                      " omega1=" + format_shortest(cfg.omega1) + " omega2=" + format_shortest(cfg.omega2));
    v.notes.push_back("default initial state (1, 1, 1, 1)/2, exciting every mode");
    v.facts = {{"gamma_formula", format_shortest(m.gamma_formula)},
               {"dominant_rate", format_shortest(m.dominant_rate())},
               {"fidelity", format_shortest(m.closed_form_operator_deviation)},
               {"pf_hamiltonian_deviation", format_shortest(m.pf_hamiltonian_deviation)}};
    return v;
}

ScenarioView view_of(const AbstractNConfig& cfg) {
    AbstractN m = build_abstractN(cfg);
    const std::size_t d = m.family.dim();
    CVector psi0(d);
    for (auto& z : psi0) z = 1.0 / std::sqrt(static_cast<double>(d));
    ScenarioView v{"abstractN", m.ham, m.family, cfg.omegas, psi0, {}, {}};
    std::string head = "scenario abstractN n_modes=" + std::to_string(cfg.n_modes);
    head += cfg.similarity ? " similarity=explicit" : " seed=" + std::to_string(cfg.seed);
    v.notes.push_back(head);
    v.notes.push_back("default initial state (1, ..., 1)/sqrt(d)");
    v.facts = {{"n_modes", std::to_string(cfg.n_modes)},
               {"similarity_condition", format_shortest(condition_number(m.similarity))},
               {"similarity_draws", std::to_string(m.draws)}};
    return v;
}

} // namespace

ScenarioView make_view(const ScenarioConfig& cfg) {
    return std::visit([](const auto& c) { return view_of(c); }, cfg);
}

ScenarioReport make_report(const ScenarioView& view, double base_tol) {
    ScenarioReport r;
    r.name = view.name;
    r.damping = damping_report(view.ham.gamma, view.omegas);
    r.extras = view.facts;
    if (!view.family) return r;

    r.has_family = true;
    const BiorthogonalSystem sys = build_bases(*view.family);
    const NumberOps numbers = number_operators(*view.family);
    r.trace_pf = generalized_trace(sys, pf_hamiltonian(numbers, view.omegas));
    r.trace_eff = generalized_trace(sys, view.ham.h_eff);
    r.trace_eff_expected = Complex{0.0, -static_cast<double>(sys.phis.size()) * view.ham.gamma};
    const FamilyVerification fv = verify_family(*view.family, VerifyTolerances::from_base(base_tol));
    r.family_residual = std::max({fv.pf.ab, fv.pf.aa, fv.pf.bb});
    r.extras.emplace_back("family_verified", fv.pass() ? "true" : "false");
    return r;
}

} // namespace pfdamp
