// test_scenarios.cpp: built-in models, configuration parsing, CLI surface

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "pfdamp/cli.hpp"
#include "pfdamp/errors.hpp"
#include "pfdamp/family_io.hpp"
#include "pfdamp/linalg.hpp"
#include "pfdamp/scenarios.hpp"

using namespace pfdamp;

namespace {

struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const std::string& name) : path(std::filesystem::temp_directory_path() / name) {
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::filesystem::path write(const std::string& file, const std::string& text) const {
        std::ofstream(path / file) << text;
        return path / file;
    }
};

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "pfdamp");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> data_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);)
        if (!l.empty() && l[0] != '#') lines.push_back(l);
    return lines;
}

double log_slope(const std::vector<double>& t, const std::vector<double>& n, double from, double to) {
    // least squares fit of log n against t on [from, to]
    double sx = 0, sy = 0, sxx = 0, sxy = 0, m = 0;
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (t[k] < from || t[k] > to) continue;
        const double y = std::log(n[k]);
        sx += t[k];
        sy += y;
        sxx += t[k] * t[k];
        sxy += t[k] * y;
        m += 1;
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

constexpr const char* kBagarello = R"({"scenario": "bagarello4", "parameters": {"alpha": 2, "beta": 1, "omega1": 3, "omega2": 1}})";

} // namespace

TEST_CASE("benaryeh2: Hermitian limit decays uniformly") {
    const auto m = build_benaryeh2({1.0, 1.0, 1.0});
    CHECK(m.asymmetry == 0.0);
    CHECK(m.omega == 1.0);
    CHECK(oracle::max_diff(m.ham.h_traceless, adjoint(m.ham.h_traceless)) < 1e-15);
    const CVector psi0{Complex{0.6, 0.1}, -0.3};
    const auto traj = schrodinger_evolve(m.ham, psi0, uniform_grid(0, 10, 21));
    for (std::size_t k = 0; k < traj.times.size(); ++k)
        CHECK(std::abs(traj.norms[k] - std::exp(-traj.times[k]) * psi0.norm()) < 1e-10);
}

TEST_CASE("benaryeh2: spectrum and eigenvectors") {
    const auto m = build_benaryeh2({2.0, 1.0, 1.0});
    CHECK(m.branch == Branch::oscillatory);
    CHECK(std::abs(m.energy_plus - Complex{std::sqrt(0.75), -1.5}) < 1e-15);
    CHECK(std::abs(m.energy_minus - Complex{-std::sqrt(0.75), -1.5}) < 1e-15);
    REQUIRE(m.eta_plus);
    const CMatrix& h = m.ham.h_traceless;
    CHECK((oracle::apply(h, *m.eta_plus) - m.lambda_plus * *m.eta_plus).norm() < 1e-10);
    CHECK((oracle::apply(h, *m.eta_minus) - m.lambda_minus * *m.eta_minus).norm() < 1e-10);
    CHECK((oracle::apply(m.ham.h_eff, *m.eta_plus) - m.energy_plus * *m.eta_plus).norm() < 1e-10);
    const double g = m.asymmetry;
    const Complex expected = 2.0 * g * (g - kI * std::sqrt(m.omega)) / std::norm(m.config.v);
    CHECK(std::abs(inner(*m.eta_plus, *m.eta_minus) - expected) < 1e-10);

    // hyperbolic branch, complex coupling
    const auto k = build_benaryeh2({3.0, 0.5, Complex{0.4, -0.3}});
    CHECK(k.branch == Branch::hyperbolic);
    CHECK((oracle::apply(k.ham.h_traceless, *k.eta_plus) - k.lambda_plus * *k.eta_plus).norm() < 1e-10);
    CHECK((oracle::apply(k.ham.h_traceless, *k.eta_minus) - k.lambda_minus * *k.eta_minus).norm() < 1e-10);
}

TEST_CASE("benaryeh2: PF pair") {
    for (const Benaryeh2Config cfg : {Benaryeh2Config{2.0, 1.0, 1.0}, Benaryeh2Config{1.2, 1.0, 0.05},
                                      Benaryeh2Config{1.0, 2.0, Complex{0.3, 0.7}}, Benaryeh2Config{2.0, 1.0, 0.0},
                                      Benaryeh2Config{1.0, 2.0, 0.0}}) {
        const auto m = build_benaryeh2(cfg);
        REQUIRE(m.family);
        CHECK(m.family->valid());
        const NumberOps n = number_operators(*m.family);
        // H = pf_frequency (b a - 1/2)
        CHECK(oracle::max_diff(pf_hamiltonian(n, std::vector<Complex>{m.pf_frequency}), m.ham.h_traceless) < 1e-12);
        CHECK(verify_family(*m.family).pass());
    }
}

TEST_CASE("benaryeh2: degenerate branch") {
    const auto m = build_benaryeh2({3.0, 1.0, 1.0});
    CHECK(m.branch == Branch::degenerate);
    CHECK_FALSE(m.family);
    const auto c = m.coefficients(CVector{1.0, 0.0});
    CHECK(c.a0 == Complex{1.0});
    CHECK(c.b0 == Complex{-1.0});
    CHECK(c.a1 == Complex{0.0});
    CHECK(c.b1 == Complex{0.0, -1.0});
    // |Omega| below the boundary is routed to the degenerate branch as well
    CHECK(build_benaryeh2({3.0, 1.0, std::sqrt(1.0 + 1e-13)}).branch == Branch::degenerate);
    CHECK_THROWS_AS(build_benaryeh2({0.0, 1.0, 1.0}), DomainError);
    CHECK_THROWS_AS(build_benaryeh2({1.0, -1.0, 1.0}), DomainError);
}

TEST_CASE("benaryeh2: closed forms against the exponential in every branch") {
    oracle::Random rng(40);
    for (const Benaryeh2Config cfg : {Benaryeh2Config{2.0, 1.0, 1.0}, Benaryeh2Config{3.0, 1.0, 1.0},
                                      Benaryeh2Config{1.2, 1.0, 0.05}, Benaryeh2Config{0.5, 2.0, Complex{0.2, 0.9}}}) {
        const auto m = build_benaryeh2(cfg);
        for (int i = 0; i < 3; ++i) {
            const CVector psi0 = rng.vector(2);
            const auto c = m.coefficients(psi0);
            const auto traj = schrodinger_evolve(m.ham, psi0, default_grid());
            double worst = 0.0;
            for (std::size_t k = 0; k < traj.times.size(); ++k)
                worst = std::max(worst, oracle::max_diff(m.evaluate(c, traj.times[k]), traj.samples[k]));
            CHECK(worst < 1e-8);
        }
    }
}

TEST_CASE("bagarello4: structure") {
    const auto m = build_bagarello4({2.0, 1.0, 3.0, 1.0});
    CHECK(m.ham.gamma == doctest::Approx(3.0));
    CHECK(m.gamma_formula == doctest::Approx(3.0));
    CHECK(m.family.valid());
    CHECK(std::max({m.family.residuals().ab, m.family.residuals().aa, m.family.residuals().bb}) < 1e-12);
    CHECK(m.closed_form_operator_deviation < 1e-12);
    CHECK(m.pf_hamiltonian_deviation < 1e-12);
    CHECK(damping_report(m.ham.gamma, m.omegas).damped);
    CHECK(m.dominant_rate() == doctest::Approx(-1.0));

    for (auto [a, b, w1, w2] : {std::tuple{3.0, 1.0, 2.0, 1.0}, {2.5, -0.5, 4.0, 1.5}, {-1.0, 2.0, 2.0, 0.5}}) {
        const auto k = build_bagarello4({a, b, w1, w2});
        CHECK(k.ham.gamma == doctest::Approx(k.gamma_formula));
        CHECK(k.pf_hamiltonian_deviation < 1e-10);
        CHECK(k.closed_form_operator_deviation < 1e-10);
    }

    CHECK_THROWS_AS(build_bagarello4({1.0, 1.0, 3.0, 1.0}), DomainError);
    CHECK_THROWS_AS(build_bagarello4({0.0, 1.0, 3.0, 1.0}), DomainError);
    CHECK_THROWS_AS(build_bagarello4({2.0, 1.0, 1.0, 3.0}), DomainError);
    CHECK_THROWS_AS(build_bagarello4({2.0, 1.0, 3.0, 0.0}), DomainError);
}

TEST_CASE("bagarello4: eigen expansion") {
    const auto m = build_bagarello4({2.0, 1.0, 3.0, 1.0});
    const CVector psi0{0.5, 0.5, 0.5, 0.5};
    const auto traj = schrodinger_evolve(m.ham, psi0, default_grid());
    for (std::size_t k = 0; k < traj.times.size(); ++k)
        CHECK(oracle::max_diff(m.evaluate(psi0, traj.times[k]), traj.samples[k]) < 1e-8);

    // rates are +-(omega1 - omega2)/2 and +-(omega1 + omega2)/2
    const double half_diff = 1.0, half_sum = 2.0;
    const auto amp = m.amplitudes(psi0);
    for (std::size_t r = 0; r < 4; ++r) {
        const double rate = m.expansion.rates[r].real();
        CHECK(std::abs(m.expansion.rates[r].imag()) < 1e-12);
        const bool slow = std::abs(std::abs(rate) - half_diff) < 1e-9;
        CHECK((slow || std::abs(std::abs(rate) - half_sum) < 1e-9));
        if (slow) continue;
        // the fast decaying exponential lives only in component 2, the growing one only in 3
        for (std::size_t i = 0; i < 4; ++i) {
            const bool allowed = rate < 0 ? i == 2 : i == 3;
            if (!allowed) CHECK(std::abs(amp[i][r]) < 1e-12);
        }
    }

    // second component follows from the first:
    // Phi_1 = ((alpha+beta)(w1-w2)/2 Phi_0 - (alpha-beta) Phi_0') / (alpha beta (w1-w2))
    for (double t : {0.0, 0.7, 3.0}) {
        const double a = 2.0, b = 1.0, d = 2.0;
        const double e = std::exp(m.ham.gamma * t);
        const double dt = 1e-5;
        const Complex p0 = e * m.evaluate(psi0, t)[0];
        const Complex p0p = (std::exp(m.ham.gamma * (t + dt)) * m.evaluate(psi0, t + dt)[0] -
                             std::exp(m.ham.gamma * (t - dt)) * m.evaluate(psi0, t - dt)[0]) /
                            (2 * dt);
        const Complex p1 = e * m.evaluate(psi0, t)[1];
        CHECK(std::abs(p1 - (0.5 * (a + b) * d * p0 - (a - b) * p0p) / (a * b * d)) < 1e-6 * std::max(1.0, std::abs(p1)));
    }
}

TEST_CASE("bagarello4: asymptotic rates") {
    const CVector psi0{0.5, 0.5, 0.5, 0.5};
    const auto grid = default_grid();
    auto m = build_bagarello4({2.0, 1.0, 3.0, 1.0});
    auto traj = schrodinger_evolve(m.ham, psi0, grid);
    CHECK(std::abs(log_slope(traj.times, traj.norms, 10, 20) - m.dominant_rate()) < 0.02 * std::abs(m.dominant_rate()));

    m = build_bagarello4({3.0, 1.0, 2.0, 1.0});
    traj = schrodinger_evolve(m.ham, psi0, grid);
    CHECK(log_slope(traj.times, traj.norms, 10, 20) > 0.0);
    CHECK(std::abs(log_slope(traj.times, traj.norms, 10, 20) - 0.5) < 0.01);
}

TEST_CASE("bagarello4: single-factor product formula differs from the exact evolution") {
    const auto m = build_bagarello4({2.0, 1.0, 3.0, 1.0});
    const NumberOps n = number_operators(m.family);
    double gap = 0.0, exact = 0.0;
    for (double t : {0.5, 1.0, 2.0}) {
        const CMatrix direct = heisenberg_at(m.ham.h_eff, n.n_ops[0], t);
        exact = std::max(exact, max_abs_diff(number_evolution_closed_form(n, m.omegas, m.ham.gamma, 0, t), direct));
        gap = std::max(gap, max_abs_diff(two_mode_number_evolution_single_factor(n, 3.0, 1.0, m.ham.gamma, t), direct));
    }
    CHECK(exact < 1e-9);
    CHECK(gap > 1e-6);
}

TEST_CASE("abstractN") {
    AbstractNConfig cfg{1, {1.0}, 0, CMatrix::identity(2), std::nullopt, 0.5};
    auto m = build_abstractN(cfg);
    CHECK(oracle::max_diff(m.h_pf, CMatrix::diagonal({-0.5, 0.5})) < 1e-15);
    CHECK(m.ham.gamma == 0.5);
    CHECK(m.draws == 0);

    cfg = {3, {Complex{1.0, 0.4}, 2.0, Complex{0.3, -1.0}}, 11, std::nullopt, std::nullopt, 0.25};
    m = build_abstractN(cfg);
    CHECK(condition_number(m.similarity) < 100.0);
    CHECK(m.draws >= 1);
    CHECK(m.ham.gamma == doctest::Approx(0.7 + 0.25));
    CHECK(m.damping.damped);
    CHECK(std::abs(generalized_trace(m.system, m.h_pf)) < 1e-10);
    CHECK(std::abs(generalized_trace(m.system, m.ham.h_eff) - Complex{0.0, -8.0 * m.ham.gamma}) < 1e-10);
    CHECK(verify_family(m.family).pass());

    cfg.gamma = 0.1;
    CHECK(build_abstractN(cfg).ham.gamma == 0.1);
    CHECK_FALSE(build_abstractN(cfg).damping.damped);

    // same seed, same draw
    CHECK(random_similarity(2, 99).t == random_similarity(2, 99).t);
    CHECK_FALSE(random_similarity(2, 99).t == random_similarity(2, 98).t);
    CHECK_THROWS_AS(random_similarity(2, 1, 1.0, 5), ConvergenceError);

    cfg.omegas.pop_back();
    CHECK_THROWS_AS(build_abstractN(cfg), DomainError);
}

TEST_CASE("scenario configuration parsing") {
    auto doc = parse_scenario(kBagarello);
    REQUIRE(std::holds_alternative<Bagarello4Config>(doc.config));
    CHECK(std::get<Bagarello4Config>(doc.config).omega1 == 3.0);
    CHECK_FALSE(doc.psi0);

    doc = parse_scenario(
        R"({"scenario": "benaryeh2", "parameters": {"gamma_a": 2, "gamma_b": 1, "v": [1, -0.5]}, "psi0": [[0,1], 0]})");
    CHECK(std::get<Benaryeh2Config>(doc.config).v == Complex{1.0, -0.5});
    REQUIRE(doc.psi0);
    CHECK((*doc.psi0)[0] == Complex{0.0, 1.0});

    doc = parse_scenario(R"({"scenario": "abstractN", "parameters": {"n_modes": 2, "omegas": [1, [0, 2]],
                             "similarity": "identity", "gamma": 1.5}})");
    const auto& an = std::get<AbstractNConfig>(doc.config);
    CHECK(an.similarity == CMatrix::identity(4));
    CHECK(an.gamma == 1.5);

    auto field_error = [](const std::string& text) -> std::string {
        try {
            parse_scenario(text, "cfg.json");
        } catch (const ParseError& e) {
            return e.what();
        }
        return "";
    };
    CHECK(field_error(R"({"scenario": "bagarello4", "parameters": {"alpha": 2, "beta": 1, "omega1": 3}})")
              .find("parameters.omega2") != std::string::npos);
    CHECK(field_error(R"({"scenario": "bagarello4", "parameters": {"alpha": "2", "beta": 1, "omega1": 3, "omega2": 1}})")
              .find("parameters.alpha") != std::string::npos);
    CHECK(field_error(R"({"scenario": "bagarello4", "parameters": {"alpha": 2, "beta": 2, "omega1": 3, "omega2": 1}})")
              .find("alpha must differ") != std::string::npos);
    CHECK(field_error(R"({"scenario": "quartic", "parameters": {}})").find("scenario") != std::string::npos);
    CHECK(field_error(R"({"scenario": "benaryeh2", "parameters": {"gamma_a": 2, "gamma_b": 1, "v": [1, 2, 3]}})")
              .find("parameters.v") != std::string::npos);
    CHECK(field_error(R"({"scenario": "benaryeh2", "parameters": {"gamma_a": 2, "gamma_b": 1, "v": 1, "w": 0}})")
              .find("parameters.w") != std::string::npos);

    try {
        parse_scenario("{\n  \"scenario\": \"benaryeh2\",\n  \"parameters\": {,}\n}", "cfg.json");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
}

TEST_CASE("scenario views and reports") {
    const auto view = make_view(parse_scenario(kBagarello).config);
    const auto r = make_report(view);
    CHECK(r.damping.gamma == 3.0);
    CHECK(r.damping.threshold == 2.0);
    CHECK(r.damping.damped);
    CHECK(std::abs(r.trace_pf) < 1e-10);
    CHECK(std::abs(r.trace_eff - r.trace_eff_expected) < 1e-10);

    const auto deg = make_view(Benaryeh2Config{3.0, 1.0, 1.0});
    CHECK_FALSE(deg.family);
    CHECK_FALSE(make_report(deg).has_family);
}

TEST_CASE("cli: report, evolve, observe") {
    TempDir dir("pfdamp_cli_test");
    const auto cfg = dir.write("b4.json", kBagarello);

    Run r = run({"report", cfg.string()});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("damped: true\n") != std::string::npos);
    CHECK(r.out.find("gamma: 3\n") != std::string::npos);
    CHECK(r.out.find("threshold: 2\n") != std::string::npos);

    r = run({"evolve", cfg.string(), "--grid", "0,20,201"});
    REQUIRE(r.code == kExitOk);
    auto lines = data_lines(r.out);
    REQUIRE(lines.size() == 202);
    CHECK(lines[0] == "t,re_0,im_0,re_1,im_1,re_2,im_2,re_3,im_3,norm");
    double prev = -1.0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const double t = std::stod(lines[i].substr(0, lines[i].find(',')));
        CHECK(t > prev);
        prev = t;
    }
    CHECK(prev == 20.0);
    CHECK(r.out.find("# default initial state (1, 1, 1, 1)/2") != std::string::npos);

    // identical input, identical output
    CHECK(run({"evolve", cfg.string()}).out == r.out);

    const auto csv = dir.path / "n1.csv";
    r = run({"observe", cfg.string(), "--observable", "N1", "--grid", "0,5,11", "--out", csv.string()});
    CHECK(r.code == kExitOk);
    std::ifstream in(csv);
    std::stringstream ss;
    ss << in.rdbuf();
    lines = data_lines(ss.str());
    REQUIRE(lines.size() == 12);
    CHECK(lines[0] == "t,norm,bound");

    CHECK(run({"observe", cfg.string(), "--observable", "N3"}).code == kExitInput);
    CHECK(run({"observe", cfg.string(), "--observable", (dir.path / "nope.mat").string()}).code == kExitInput);
    CHECK(run({"evolve", cfg.string(), "--grid", "0,1"}).code == kExitInput);
    CHECK(run({"evolve", (dir.path / "missing.json").string()}).code == kExitInput);
    CHECK(run({"frobnicate"}).code == kExitInput);

    const auto bad = dir.write("bad.json", "{\"scenario\": \"bagarello4\",\n \"parameters\": {\"alpha\": 1}}");
    r = run({"report", bad.string()});
    CHECK(r.code == kExitInput);
    CHECK(r.err.find("parameters.") != std::string::npos);

    r = run({"scenario", "list"});
    CHECK(r.out == "benaryeh2\nbagarello4\nabstractN\n");
}

TEST_CASE("cli: verify and export round trip") {
    TempDir dir("pfdamp_cli_verify");
    const auto manifest = write_family_manifest(dir.path / "canon", canonical_fermions(2));
    Run r = run({"verify", manifest.string()});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("status: pass") != std::string::npos);
    for (const char* key : {"pf_ab: ", "pf_aa: ", "pf_bb: ", "intertwining: "}) {
        const auto pos = r.out.find(key);
        REQUIRE(pos != std::string::npos);
        CHECK(std::stod(r.out.substr(pos + std::strlen(key))) < 1e-14);
    }

    const auto broken = write_family_manifest(dir.path / "broken", PFFamily({PFPair{CMatrix{{0.0, 1.0}, {0.0, 0.0}},
                                                                               CMatrix{{0.0, 1.0}, {0.0, 0.0}}}}));
    CHECK(run({"verify", broken.string()}).code == kExitValidation);

    std::ofstream(dir.path / "garbled.json") << "{\"n_modes\": 1,";
    CHECK(run({"verify", (dir.path / "garbled.json").string()}).code == kExitInput);

    // scenario -> export -> re-import gives identical verification output
    const auto cfg = dir.write("an.json", R"({"scenario": "abstractN", "parameters": {"n_modes": 2, "omegas": [1, [0.5, 0.2]], "seed": 4}})");
    r = run({"export", cfg.string(), "--dir", (dir.path / "exp").string()});
    REQUIRE(r.code == kExitOk);
    const Run first = run({"verify", (dir.path / "exp" / "family.json").string()});
    CHECK(first.code == kExitOk);
    run({"export", cfg.string(), "--dir", (dir.path / "exp2").string()});
    CHECK(run({"verify", (dir.path / "exp2" / "family.json").string()}).out == first.out);

    // --seed overrides the config seed
    const Run s1 = run({"--seed", "4", "report", cfg.string()});
    const Run s2 = run({"--seed", "5", "report", cfg.string()});
    CHECK(s1.out == run({"report", cfg.string()}).out);
    CHECK(s1.out != s2.out);
}
