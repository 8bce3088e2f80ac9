// cli.cpp: subcommands on top of the library

#include "pfdamp/cli.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pfdamp/dynamics.hpp"
#include "pfdamp/errors.hpp"
#include "pfdamp/family_io.hpp"
#include "pfdamp/matrix_io.hpp"
#include "pfdamp/pseudofermion.hpp"
#include "pfdamp/scenarios.hpp"
#include "pfdamp/trajectory_io.hpp"

namespace pfdamp {

namespace {

struct Options {
    double tol = kDefaultTolerance;
    std::optional<std::uint64_t> seed;
    std::string path;
    std::string grid = "0,20,201";
    std::string out_file;
    std::string observable;
    std::string dir;
};

// malformed user input that is not tied to a file line
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

std::vector<double> parse_grid(const std::string& spec) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string p; std::getline(ss, p, ',');) parts.push_back(p);
    if (parts.size() != 3) throw UsageError("--grid: expected t0,t1,n");
    try {
        std::size_t used = 0;
        const double t0 = std::stod(parts[0], &used);
        if (used != parts[0].size()) throw UsageError("");
        const double t1 = std::stod(parts[1], &used);
        if (used != parts[1].size()) throw UsageError("");
        const long long n = std::stoll(parts[2], &used);
        if (used != parts[2].size() || n < 1 || !std::isfinite(t0) || !std::isfinite(t1) || t1 < t0)
            throw UsageError("");
        return uniform_grid(t0, t1, static_cast<std::size_t>(n));
    } catch (const std::exception&) {
        throw UsageError("--grid: expected t0,t1,n with finite t0 <= t1 and n >= 1, got '" + spec + "'");
    }
}

ScenarioDocument load(const Options& o) {
    ScenarioDocument doc = read_scenario_file(o.path);
    if (o.seed) {
        if (auto* c = std::get_if<AbstractNConfig>(&doc.config); c && !c->similarity) c->seed = *o.seed;
    }
    return doc;
}

CVector initial_state(const ScenarioDocument& doc, const ScenarioView& view) {
    if (!doc.psi0) return view.default_psi0;
    if (doc.psi0->dim() != view.ham.h_eff.dim())
        throw UsageError("psi0: expected " + std::to_string(view.ham.h_eff.dim()) + " components, got " +
                         std::to_string(doc.psi0->dim()));
    return *doc.psi0;
}

// Writes to --out when given, otherwise to `out`.
template <class Fn>
void emit(const Options& o, std::ostream& out, Fn&& fn) {
    if (o.out_file.empty()) {
        fn(out);
        return;
    }
    std::ofstream f(o.out_file);
    if (!f) throw UsageError("cannot open output file " + o.out_file);
    fn(f);
}

int run_verify(const Options& o, std::ostream& out) {
    const FamilyBundle bundle = read_family_manifest(o.path, o.tol);
    const FamilyVerification v = verify_family(bundle.family, VerifyTolerances::from_base(o.tol));
    out << "n_modes: " << bundle.family.n_modes() << '\n'
        << "dim: " << bundle.family.dim() << '\n'
        << "pf_ab: " << format_shortest(v.pf.ab) << '\n'
        << "pf_aa: " << format_shortest(v.pf.aa) << '\n'
        << "pf_bb: " << format_shortest(v.pf.bb) << '\n'
        << "pf_tolerance: " << format_shortest(v.pf.tolerance) << '\n'
        << "structure_built: " << (v.structure_built ? "true" : "false") << '\n';
    bool ok = v.pass();
    if (v.structure_built) {
        out << "biorthonormality: " << format_shortest(v.biorthonormality) << '\n'
            << "metric_duality: " << format_shortest(v.duality) << '\n'
            << "min_metric_eigenvalue: " << format_shortest(v.min_metric_eigenvalue) << '\n'
            << "intertwining: " << format_shortest(v.intertwining) << '\n'
            << "number_eigen: " << format_shortest(v.eigen) << '\n';
    }
    if (bundle.metrics) {
        const double dual = metric_duality_residual(*bundle.metrics);
        const IntertwiningReport ir = intertwining_check(*bundle.metrics, number_operators(bundle.family));
        out << "supplied_metric_duality: " << format_shortest(dual) << '\n'
            << "supplied_metric_intertwining: " << format_shortest(ir.max()) << '\n';
        ok = ok && dual <= v.tolerances.duality && ir.max() <= v.tolerances.intertwining;
    }
    out << "status: " << (ok ? "pass" : "fail") << '\n';
    return ok ? kExitOk : kExitValidation;
}

int run_evolve(const Options& o, std::ostream& out) {
    const ScenarioDocument doc = load(o);
    const ScenarioView view = make_view(doc.config);
    const CVector psi0 = initial_state(doc, view);
    const auto times = parse_grid(o.grid);
    const StateTrajectory traj = schrodinger_evolve(view.ham, psi0, times);
    std::vector<std::string> notes = view.notes;
    if (doc.psi0) notes.back() = "initial state from config";
    if (!traj.overflowed.empty()) notes.push_back(std::to_string(traj.overflowed.size()) + " samples overflowed");
    emit(o, out, [&](std::ostream& s) { write_state_csv(s, traj, notes); });
    return kExitOk;
}

int run_observe(const Options& o, std::ostream& out) {
    const ScenarioDocument doc = load(o);
    const ScenarioView view = make_view(doc.config);
    const auto times = parse_grid(o.grid);
    const std::size_t n_modes = view.family ? view.family->n_modes() : 1;

    std::optional<CMatrix> x;
    const std::string& obs = o.observable;
    if (obs.size() >= 2 && obs[0] == 'N' && obs.find_first_not_of("0123456789", 1) == std::string::npos) {
        if (!view.family) throw UsageError("--observable " + obs + ": scenario has no pseudo-fermion family");
        const std::size_t k = std::stoul(obs.substr(1));
        if (k < 1 || k > n_modes)
            throw UsageError("--observable " + obs + ": mode index must be in [1, " + std::to_string(n_modes) + "]");
        x = number_operators(*view.family).n_ops[k - 1];
    } else {
        x = read_matrix_file(obs);
        if (x->dim() != view.ham.h_eff.dim())
            throw UsageError("--observable: matrix dimension " + std::to_string(x->dim()) + " does not match " +
                             std::to_string(view.ham.h_eff.dim()));
    }

    const OperatorTrajectory traj = heisenberg_evolve(view.ham, *x, times);
    const double c = decay_bound_constant(n_modes);
    std::vector<double> bounds;
    for (double t : traj.times) bounds.push_back(c * std::exp(-2.0 * view.ham.gamma * t));
    std::vector<std::string> notes = view.notes;
    notes.push_back("observable " + obs + ", bound = " + format_shortest(c) + " exp(-2 gamma t)");
    emit(o, out, [&](std::ostream& s) { write_norm_csv(s, traj, bounds, notes); });
    return kExitOk;
}

int run_report(const Options& o, std::ostream& out) {
    const ScenarioDocument doc = load(o);
    const ScenarioView view = make_view(doc.config);
    const ScenarioReport r = make_report(view, o.tol);
    const DampingReport& d = r.damping;
    out << "scenario: " << r.name << '\n'
        << "gamma: " << format_shortest(d.gamma) << '\n'
        << "threshold: " << format_shortest(d.threshold) << '\n'
        << "damped: " << (d.damped ? "true" : "false") << '\n'
        << "bound_constant: " << format_shortest(d.bound_constant) << '\n';
    out << "omegas:";
    for (auto w : d.omegas) out << ' ' << format_shortest(w);
    out << '\n';
    if (d.imaginary_frequencies)
        out << "imaginary_frequencies: true\n"
            << "frequency_sum: " << format_shortest(d.frequency_sum) << '\n';
    if (r.has_family) {
        out << "T_N: " << format_shortest(r.trace_pf) << '\n'
            << "T_N_eff: " << format_shortest(r.trace_eff) << '\n'
            << "T_N_eff_expected: " << format_shortest(r.trace_eff_expected) << '\n'
            << "family_residual: " << format_shortest(r.family_residual) << '\n';
    } else {
        out << "T_N: none\nT_N_eff: none\n";
    }
    for (const auto& [k, v] : r.extras) out << k << ": " << v << '\n';
    return kExitOk;
}

int run_export(const Options& o, std::ostream& out) {
    const ScenarioDocument doc = load(o);
    const ScenarioView view = make_view(doc.config);
    const std::filesystem::path dir = o.dir;
    std::filesystem::create_directories(dir);
    write_matrix_file(dir / "h_eff.mat", view.ham.h_eff);
    out << "h_eff: " << (dir / "h_eff.mat").string() << '\n';
    if (view.family) {
        const MetricPair metrics = metric_operators(build_bases(*view.family));
        out << "manifest: " << write_family_manifest(dir, *view.family, metrics).string() << '\n';
    }
    return kExitOk;
}

} // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Pseudo-fermion algebra and damped non-Hermitian dynamics", "pfdamp"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--tol", o.tol, "base residual tolerance")->check(CLI::PositiveNumber);
    app.add_option("--seed", o.seed, "similarity seed for abstractN scenarios");

    auto* verify = app.add_subcommand("verify", "check a pseudo-fermion family manifest");
    verify->add_option("manifest", o.path)->required();

    auto* evolve = app.add_subcommand("evolve", "Schrodinger trajectory as CSV");
    evolve->add_option("config", o.path)->required();
    evolve->add_option("--grid", o.grid, "t0,t1,n");
    evolve->add_option("--out", o.out_file);

    auto* observe = app.add_subcommand("observe", "Heisenberg norm series with decay bound");
    observe->add_option("config", o.path)->required();
    observe->add_option("--observable", o.observable, "matrix file or Nk")->required();
    observe->add_option("--grid", o.grid, "t0,t1,n");
    observe->add_option("--out", o.out_file);

    auto* report = app.add_subcommand("report", "damping report");
    report->add_option("config", o.path)->required();

    auto* exp = app.add_subcommand("export", "write H_eff, family and metrics");
    exp->add_option("config", o.path)->required();
    exp->add_option("--dir", o.dir)->required();

    auto* scenario = app.add_subcommand("scenario", "built-in scenarios");
    scenario->require_subcommand(1);
    auto* list = scenario->add_subcommand("list", "list scenario names");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "pfdamp: " << e.what() << '\n';
        return kExitInput;
    }

    try {
        if (*verify) return run_verify(o, out);
        if (*evolve) return run_evolve(o, out);
        if (*observe) return run_observe(o, out);
        if (*report) return run_report(o, out);
        if (*exp) return run_export(o, out);
        if (*list) {
            for (const auto& n : scenario_names()) out << n << '\n';
            return kExitOk;
        }
    } catch (const ParseError& e) {
        err << "pfdamp: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        err << "pfdamp: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        err << "pfdamp: " << e.what() << '\n';
        return kExitValidation;
    }
    return kExitInput;
}

} // namespace pfdamp
