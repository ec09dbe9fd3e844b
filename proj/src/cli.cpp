#include "qwstar/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <future>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "qwstar/asymptotics.hpp"
#include "qwstar/checks.hpp"
#include "qwstar/collapsed_walk.hpp"
#include "qwstar/full_walk.hpp"
#include "qwstar/graph.hpp"
#include "qwstar/spectral.hpp"
#include "qwstar/trace.hpp"

namespace qwstar::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string_view command_name(Command c) {
    switch (c) {
    case Command::simulate: return "simulate";
    case Command::spectrum: return "spectrum";
    case Command::optimal_time: return "optimal-time";
    case Command::phase_diagram: return "phase-diagram";
    case Command::verify: return "verify";
    }
    return "?";
}

std::string_view mode_name(Mode m) {
    switch (m) {
    case Mode::full: return "full";
    case Mode::collapsed: return "collapsed";
    case Mode::closed: return "closed";
    case Mode::asymptotic: return "asymptotic";
    }
    return "?";
}

std::string_view extension(Format f) { return f == Format::csv ? "csv" : "json"; }

void require_graph_params(const RunConfig& c) {
    if (c.clique_size < 3) throw ConfigError("--n must be at least 3");
    if (c.alpha && c.leaf_count) throw ConfigError("--alpha and --m are mutually exclusive");
    if (!c.alpha && !c.leaf_count) throw ConfigError("one of --alpha or --m is required");
    if (c.leaf_count && *c.leaf_count < 1) throw ConfigError("--m must be at least 1");
    if (c.alpha && !(*c.alpha >= 0.0 && std::isfinite(*c.alpha))) throw ConfigError("--alpha must be finite and >= 0");
}

void require_arc_budget(const RunConfig& c) {
    std::size_t arcs = 0;
    try {
        arcs = arc_count_for(c.clique_size, c.resolved_leaf_count());
    } catch (const std::overflow_error& e) {
        throw BudgetError(e.what());
    }
    if (arcs > c.arc_budget)
        throw BudgetError("full evaluator needs " + std::to_string(arcs) + " arcs, budget is " +
                          std::to_string(c.arc_budget));
}

// alpha for the asymptotic branch formulas: given, or log m / log N.
double effective_alpha(const RunConfig& c) {
    if (c.alpha) return *c.alpha;
    return std::log(static_cast<double>(*c.leaf_count)) / std::log(static_cast<double>(c.clique_size));
}

fs::path default_output(const RunConfig& c, const char* dir) {
    std::ostringstream name;
    name << command_name(c.command);
    if (c.command != Command::phase_diagram) name << "_N" << c.clique_size << "_m" << c.resolved_leaf_count();
    name << '.' << (c.command == Command::spectrum ? "json" : extension(c.format));
    return fs::path(dir) / name.str();
}

// Writes through a temporary sibling and renames it into place, so a failed
// run never leaves a partial file behind.
void emit(const RunConfig& c, std::ostream& out, const std::function<void(std::ostream&)>& writer) {
    std::optional<fs::path> target = c.out;
    if (!target) {
        if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) target = default_output(c, dir);
    }
    if (!target || *target == "-") {
        writer(out);
        return;
    }
    fs::path tmp = *target;
    tmp += ".partial";
    try {
        {
            std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
            if (!file) throw ConfigError("cannot open output file " + tmp.string());
            writer(file);
            file.flush();
            if (!file) throw std::runtime_error("failed writing " + tmp.string());
        }
        fs::rename(tmp, *target);
    } catch (...) {
        std::error_code ec;
        fs::remove(tmp, ec);
        throw;
    }
}

ProbabilityTrace asymptotic_trace(const RunConfig& c) {
    const std::size_t n = c.clique_size;
    const std::size_t m = c.resolved_leaf_count();
    const double alpha = effective_alpha(c);
    if (leaves_from_alpha(n, alpha) != m) throw ConfigError("asymptotic mode needs --alpha with m = floor(N^alpha)");
    ProbabilityTrace trace;
    trace.rows.reserve(c.steps + 1);
    for (std::size_t t = 0; t <= c.steps; ++t) {
        const auto e = coefficient_estimates(n, alpha, t);
        trace.rows.push_back(TraceRow{t, probability_approx(n, alpha, t), e.c1_leading * e.k1_leading,
                                      -e.c1_leading * e.s1_leading});
    }
    return trace;
}

json spectrum_json(const RunConfig& c, const SpectrumReport& r) {
    const auto complex_json = [](Complex z) { return json::array({z.real(), z.imag()}); };
    const auto pairs_json = [&](const std::array<Eigenpair, 5>& pairs) {
        json arr = json::array();
        for (std::size_t k = 0; k < 5; ++k) {
            json vec = json::array();
            for (Eigen::Index i = 0; i < 5; ++i) vec.push_back(complex_json(pairs[k].vector(i)));
            arr.push_back({{"label", to_string(kEigenLabels[k])},
                           {"eigenvalue", complex_json(pairs[k].value)},
                           {"eigenvector", vec},
                           {"residual", pairs[k].residual}});
        }
        return arr;
    };
    json audit = json::array();
    json flagged = json::array();
    for (const auto& a : r.audit) {
        json entry = {{"item", a.item}, {"component", a.component}, {"deviation", a.deviation}, {"flagged", a.flagged}};
        if (a.flagged) flagged.push_back(entry);
        audit.push_back(std::move(entry));
    }
    json doc;
    doc["metadata"] = {{"N", r.clique_size},
                       {"m", r.leaf_count},
                       {"alpha", c.alpha ? json(*c.alpha) : json(nullptr)},
                       {"version", kToolVersion},
                       {"component_order", {"A0", "AK+", "AK-", "AS+", "AS-"}}};
    doc["cos_theta_1"] = r.angles.cos_theta_1;
    doc["cos_theta_2"] = r.angles.cos_theta_2;
    doc["theta_1"] = r.angles.theta_1;
    doc["theta_2"] = r.angles.theta_2;
    doc["alpha_1_sq"] = r.alpha_1_sq;
    doc["alpha_2_sq"] = r.alpha_2_sq;
    doc["beta_sq"] = r.beta_sq;
    doc["beta_sq_expansion"] = r.beta_sq_expansion;
    doc["closed_form_valid"] = r.closed_form_valid;
    doc["max_residual"] = r.max_residual();
    doc["orthonormality_defect"] = r.orthonormality_defect;
    doc["max_eigenvalue_mismatch"] = r.max_eigenvalue_mismatch;
    doc["eigenpairs"] = pairs_json(r.eigenpairs);
    doc["numeric_eigenpairs"] = pairs_json(r.numeric);
    doc["audit"] = std::move(audit);
    doc["flagged"] = std::move(flagged);
    return doc;
}

struct CheckResult {
    std::string name;
    double deviation;
    double tolerance;
    bool passed() const { return deviation < tolerance; }
};

template <class Fn>
int guarded(const RunConfig& config, std::ostream& err, Fn&& body) {
    try {
        validate(config);
        return body();
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const BudgetError& e) {
        err << "resource budget: " << e.what() << '\n';
        return kResourceBudget;
    } catch (const std::invalid_argument& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::overflow_error& e) {
        err << "resource budget: " << e.what() << '\n';
        return kResourceBudget;
    } catch (const std::length_error& e) {
        err << "resource budget: " << e.what() << '\n';
        return kResourceBudget;
    }
}

} // namespace

std::size_t RunConfig::resolved_leaf_count() const {
    if (leaf_count) return *leaf_count;
    return leaves_from_alpha(clique_size, alpha.value_or(0.0));
}

void validate(const RunConfig& c) {
    switch (c.command) {
    case Command::simulate:
        require_graph_params(c);
        if (c.steps < 1) throw ConfigError("--steps must be at least 1");
        if (c.leaf_phase == LeafPhase::plain && (c.mode == Mode::closed || c.mode == Mode::asymptotic))
            throw ConfigError("closed and asymptotic modes describe the leaf-reversal walk only");
        if (c.mode == Mode::full) require_arc_budget(c);
        break;
    case Command::spectrum:
        require_graph_params(c);
        if (c.leaf_phase == LeafPhase::plain) throw ConfigError("spectrum is defined for the leaf-reversal walk");
        if (c.format != Format::json) throw ConfigError("spectrum reports are written as json");
        break;
    case Command::optimal_time: require_graph_params(c); break;
    case Command::phase_diagram:
        if (c.alphas.size() < 2) throw ConfigError("phase-diagram needs at least 2 alpha values");
        if (std::any_of(c.alphas.begin(), c.alphas.end(), [](double a) { return !(a >= 0.0) || !std::isfinite(a); }))
            throw ConfigError("alpha values must be finite and >= 0");
        {
            auto grid = c.clique_grid;
            std::sort(grid.begin(), grid.end());
            grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
            if (grid.size() < 4) throw ConfigError("phase-diagram needs at least 4 distinct N values");
            if (grid.front() < 3) throw ConfigError("N values must be at least 3");
        }
        break;
    case Command::verify:
        require_graph_params(c);
        require_arc_budget(c);
        break;
    }
}

int run_simulate(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(config, err, [&] {
        const std::size_t n = config.clique_size;
        const std::size_t m = config.resolved_leaf_count();
        ProbabilityTrace trace;
        switch (config.mode) {
        case Mode::full: {
            const GluedGraph graph(n, m);
            trace = evolve(graph, initial_state(graph), config.steps, config.leaf_phase);
            break;
        }
        case Mode::collapsed:
            trace = evolve_collapsed(build_reduced_operators(n, m, config.leaf_phase), collapsed_initial_state(n, m),
                                     config.steps);
            break;
        case Mode::closed: trace = evolve_closed(n, m, config.steps); break;
        case Mode::asymptotic: trace = asymptotic_trace(config); break;
        }
        trace.metadata.clique_size = n;
        trace.metadata.leaf_count = m;
        trace.metadata.alpha = config.alpha;
        trace.metadata.mode = mode_name(config.mode);
        trace.metadata.leaf_phase = config.leaf_phase;
        emit(config, out, [&](std::ostream& os) {
            if (config.format == Format::csv) write_csv(os, trace);
            else write_json(os, trace);
        });
        return static_cast<int>(kSuccess);
    });
}

int run_spectrum(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(config, err, [&] {
        const auto report = u_eigensystem(config.clique_size, config.resolved_leaf_count());
        if (!(report.max_residual() < kResidualTolerance)) {
            err << "spectral residual " << report.max_residual() << " exceeds " << kResidualTolerance << '\n';
            return static_cast<int>(kVerificationFailed);
        }
        const json doc = spectrum_json(config, report);
        emit(config, out, [&](std::ostream& os) { os << doc.dump(1) << '\n'; });
        return static_cast<int>(kSuccess);
    });
}

int run_optimal_time(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(config, err, [&] {
        const std::size_t n = config.clique_size;
        const std::size_t m = config.resolved_leaf_count();
        const double alpha = effective_alpha(config);
        const auto angles = discriminant_angles(n, m);
        const std::size_t t_exact = optimal_time_exact(n, m);
        const std::size_t t_branch = optimal_time_branch(n, alpha);
        const auto trace =
            evolve_collapsed(build_reduced_operators(n, m, config.leaf_phase), collapsed_initial_state(n, m), t_exact);
        const double p = trace.rows.back().p_vstar;

        emit(config, out, [&](std::ostream& os) {
            if (config.format == Format::csv) {
                os << "N,m,alpha,leaf_phase,theta_1,t_opt_exact,t_opt_branch,p_at_t_opt\n"
                   << n << ',' << m << ',' << format_real(alpha) << ',' << to_string(config.leaf_phase) << ','
                   << format_real(angles.theta_1) << ',' << t_exact << ',' << t_branch << ',' << format_real(p)
                   << '\n';
            } else {
                const json doc = {{"N", n},
                                  {"m", m},
                                  {"alpha", alpha},
                                  {"alpha_given", config.alpha.has_value()},
                                  {"leaf_phase", to_string(config.leaf_phase)},
                                  {"theta_1", angles.theta_1},
                                  {"t_opt_exact", t_exact},
                                  {"t_opt_branch", t_branch},
                                  {"p_at_t_opt", p},
                                  {"version", kToolVersion}};
                os << doc.dump(1) << '\n';
            }
        });
        return static_cast<int>(kSuccess);
    });
}

int run_phase_diagram(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(config, err, [&] {
        std::vector<std::future<ExponentFit>> jobs;
        jobs.reserve(config.alphas.size());
        for (double alpha : config.alphas)
            jobs.push_back(std::async(std::launch::async, [alpha, &config] {
                return exponent_fit(alpha, config.clique_grid);
            }));
        std::vector<ExponentFit> fits;
        for (auto& j : jobs) fits.push_back(j.get());

        emit(config, out, [&](std::ostream& os) {
            if (config.format == Format::csv) {
                os << "# N_grid=";
                for (std::size_t i = 0; i < fits.front().samples.size(); ++i)
                    os << (i ? ";" : "") << fits.front().samples[i].first;
                os << "\n# version=" << kToolVersion << '\n'
                   << "alpha,fitted_exponent,theory_exponent,deviation,fit_residual\n";
                for (const auto& f : fits)
                    os << format_real(f.alpha) << ',' << format_real(f.fitted_exponent) << ','
                       << format_real(f.theory_exponent) << ',' << format_real(f.deviation()) << ','
                       << format_real(f.fit_residual) << '\n';
            } else {
                json rows = json::array();
                for (const auto& f : fits) {
                    json samples = json::array();
                    for (const auto& [n, t] : f.samples) samples.push_back({n, t});
                    rows.push_back({{"alpha", f.alpha},
                                    {"fitted_exponent", f.fitted_exponent},
                                    {"theory_exponent", f.theory_exponent},
                                    {"deviation", f.deviation()},
                                    {"fit_residual", f.fit_residual},
                                    {"samples", samples}});
                }
                os << json{{"version", kToolVersion}, {"fits", rows}}.dump(1) << '\n';
            }
        });
        return static_cast<int>(kSuccess);
    });
}

int run_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(config, err, [&] {
        const std::size_t n = config.clique_size;
        const std::size_t m = config.resolved_leaf_count();
        const auto& tol = config.tolerances;
        const LeafPhase phase = config.leaf_phase;
        const LeafPhase full_phase =
            config.inject_leaf_sign_flip ? (phase == LeafPhase::reversal ? LeafPhase::plain : LeafPhase::reversal)
                                         : phase;

        const GluedGraph graph(n, m);
        const auto ops = build_reduced_operators(n, m, phase);
        const auto full = evolve(graph, initial_state(graph), config.steps, full_phase);
        const auto reduced = evolve_collapsed(ops, collapsed_initial_state(n, m), config.steps);

        std::vector<CheckResult> checks;
        double dp = 0.0, damp = 0.0;
        for (std::size_t t = 0; t <= config.steps; ++t) {
            dp = std::max(dp, std::abs(full.rows[t].p_vstar - reduced.rows[t].p_vstar));
            damp = std::max({damp, std::abs(full.rows[t].psi_K_plus - reduced.rows[t].psi_K_plus),
                             std::abs(full.rows[t].psi_S_plus - reduced.rows[t].psi_S_plus)});
        }
        checks.push_back({"full_vs_collapsed_probability", dp, tol.equivalence});
        checks.push_back({"full_vs_collapsed_amplitudes", damp, tol.equivalence});

        double drift = 0.0;
        CollapsedState psi = collapsed_initial_state(n, m);
        for (std::size_t t = 0; t <= config.steps; ++t) {
            drift = std::max(drift, std::abs(std::sqrt(psi.norm_squared()) - 1.0));
            psi = step(ops, psi);
        }
        checks.push_back({"collapsed_norm_drift", drift, tol.unitarity * static_cast<double>(config.steps + 1)});
        checks.push_back(
            {"full_unitarity", unitarity_defect(graph, full_phase, config.random_states, config.seed), tol.unitarity});
        checks.push_back({"commutation_with_class_projection",
                          commutation_defect(graph, full_phase, config.random_states, config.seed + 1),
                          tol.commutation});
        checks.push_back({"reduced_operator_conjugation",
                          (conjugated_evolution(graph, full_phase) - ops.evolution).cwiseAbs().maxCoeff(),
                          tol.conjugation});

        if (phase == LeafPhase::reversal) {
            const SpectralPropagator prop(n, m);
            double dref = 0.0;
            for (std::size_t t = 0; t <= config.steps; ++t)
                dref = std::max(dref, std::abs(reduced.rows[t].p_vstar - prop.probability(t)));
            checks.push_back({"collapsed_vs_reference_probability", dref, tol.equivalence});
            const auto report = u_eigensystem(n, m);
            checks.push_back({"spectral_residuals", report.max_residual(), tol.residual});
            checks.push_back({"spectral_eigenvalue_match", report.max_eigenvalue_mismatch, tol.residual});
            checks.push_back({"eigenvector_orthonormality", report.orthonormality_defect, tol.residual});
        }

        const bool all_passed = std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed(); });
        emit(config, out, [&](std::ostream& os) {
            if (config.format == Format::csv) {
                os << "# N=" << n << "\n# m=" << m << "\n# leaf_phase=" << to_string(phase)
                   << "\n# steps=" << config.steps << "\n# seed=" << config.seed << "\n# version=" << kToolVersion
                   << "\ncheck,max_deviation,tolerance,passed\n";
                for (const auto& c : checks)
                    os << c.name << ',' << format_real(c.deviation) << ',' << format_real(c.tolerance) << ','
                       << (c.passed() ? "true" : "false") << '\n';
            } else {
                json arr = json::array();
                for (const auto& c : checks)
                    arr.push_back({{"check", c.name},
                                   {"max_deviation", c.deviation},
                                   {"tolerance", c.tolerance},
                                   {"passed", c.passed()}});
                os << json{{"N", n},           {"m", m},
                           {"leaf_phase", to_string(phase)},
                           {"steps", config.steps},
                           {"seed", config.seed},
                           {"version", kToolVersion},
                           {"checks", arr},    {"passed", all_passed}}
                          .dump(1)
                   << '\n';
            }
        });
        for (const auto& c : checks)
            if (!c.passed()) err << "FAIL " << c.name << ": " << c.deviation << " >= " << c.tolerance << '\n';
        return static_cast<int>(all_passed ? kSuccess : kVerificationFailed);
    });
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    switch (config.command) {
    case Command::simulate: return run_simulate(config, out, err);
    case Command::spectrum: return run_spectrum(config, out, err);
    case Command::optimal_time: return run_optimal_time(config, out, err);
    case Command::phase_diagram: return run_phase_diagram(config, out, err);
    case Command::verify: return run_verify(config, out, err);
    }
    return kConfigError;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quantum-walk search on a complete graph with a glued star"};
    app.require_subcommand(1);

    RunConfig config;
    std::optional<double> alpha;
    std::optional<std::size_t> leaves;
    std::string mode = "collapsed";
    std::string leaf_phase = "reverse";
    std::string format = "csv";
    std::string out_path;

    const std::map<std::string, Mode> modes{
        {"full", Mode::full}, {"collapsed", Mode::collapsed}, {"closed", Mode::closed}, {"asymptotic", Mode::asymptotic}};

    const auto add_common = [&](CLI::App* sub, bool graph) {
        if (graph) {
            sub->add_option("--n", config.clique_size, "clique size N (>= 3)")->required();
            sub->add_option("--alpha", alpha, "leaf exponent, m = floor(N^alpha)");
            sub->add_option("--m", leaves, "explicit leaf count, exclusive with --alpha");
            sub->add_option("--leaf-phase", leaf_phase, "reverse or plain")
                ->check(CLI::IsMember({"reverse", "plain"}));
        }
        sub->add_option("--out", out_path, "output file (default: stdout or $" + std::string(kOutputDirEnv) + ")");
        sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--seed", config.seed, "seed for randomized checks");
        sub->add_option("--arc-budget", config.arc_budget, "largest arc count the full evaluator may allocate");
    };

    auto* simulate = app.add_subcommand("simulate", "write a probability trace");
    add_common(simulate, true);
    simulate->add_option("--steps", config.steps, "number of steps");
    simulate->add_option("--mode", mode, "full, collapsed, closed or asymptotic")
        ->check(CLI::IsMember({"full", "collapsed", "closed", "asymptotic"}));

    auto* spectrum = app.add_subcommand("spectrum", "write the reduced eigensystem as json");
    add_common(spectrum, true);


    auto* optimal = app.add_subcommand("optimal-time", "report optimal running times");
    add_common(optimal, true);

    auto* phase = app.add_subcommand("phase-diagram", "fit t_opt scaling exponents over an N grid");
    add_common(phase, false);
    config.alphas = {0.0, 0.5, 1.0, 1.5, 2.0};
    config.clique_grid = {256, 1024, 4096, 16384, 65536};
    phase->add_option("--alphas", config.alphas, "alpha grid")->delimiter(',');
    phase->add_option("--ns", config.clique_grid, "N grid")->delimiter(',');

    auto* verify = app.add_subcommand("verify", "cross-check the three evaluators");
    add_common(verify, true);
    verify->add_option("--steps", config.steps, "number of steps");
    verify->add_option("--random-states", config.random_states, "random states per check");
    verify->add_option("--tol-equivalence", config.tolerances.equivalence);
    verify->add_option("--tol-commutation", config.tolerances.commutation);
    verify->add_option("--tol-unitarity", config.tolerances.unitarity);
    verify->add_option("--tol-residual", config.tolerances.residual);
    verify->add_option("--tol-conjugation", config.tolerances.conjugation);
    verify->add_flag("--inject-leaf-sign-flip", config.inject_leaf_sign_flip,
                     "test hook: run the full evaluator with the wrong leaf phase");

    try {
        format = "csv";
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? static_cast<int>(kSuccess) : static_cast<int>(kConfigError);
    }

    if (simulate->parsed()) config.command = Command::simulate;
    else if (spectrum->parsed()) {
        config.command = Command::spectrum;
        if (spectrum->count("--format") == 0) format = "json";
    } else if (optimal->parsed()) config.command = Command::optimal_time;
    else if (phase->parsed()) config.command = Command::phase_diagram;
    else config.command = Command::verify;

    config.alpha = alpha;
    config.leaf_count = leaves;
    config.mode = modes.at(mode);
    config.leaf_phase = leaf_phase == "plain" ? LeafPhase::plain : LeafPhase::reversal;
    config.format = format == "json" ? Format::json : Format::csv;
    if (!out_path.empty()) config.out = out_path;
    return run(config, out, err);
}

} // namespace qwstar::cli
