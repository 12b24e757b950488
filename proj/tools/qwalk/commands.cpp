#include "qwalk/commands.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <json.hpp>

#include "qwalk/inference.hpp"
#include "qwalk/metrology.hpp"
#include "qwalk/optimize.hpp"
#include "qwalk/options.hpp"
#include "qwalk/spectral.hpp"
#include "qwalk/sweep.hpp"

namespace qwalk::cli {

using nlohmann::json;

namespace {

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

std::string csv(double v) { return format_double(v); }

void check_format(const std::string& format) {
    if (format != "json" && format != "csv") throw UsageError("--format must be json or csv");
}

json povm_json(const PositionPovm& povm) {
    return {{"monitored", povm.monitored()}, {"elements", povm.element_count()}, {"complete", povm.is_complete()}};
}

json fisher_json(const FisherResult& f) {
    json j{{"value", number_or_null(f.value)}, {"singular", f.singular}};
    if (!f.diagnostic.empty()) j["diagnostic"] = f.diagnostic;
    return j;
}

// ---------------------------------------------------------------------------

void add_spectrum(CLI::App& app, std::function<void()>& action) {
    struct Opts {
        GraphOptions graph;
        double gamma = 1.0;
        std::string source = "closed";
        std::string format = "json";
        bool vectors = false;
        std::string vectors_csv;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand("spectrum", "Eigenvalues, degenerate groups and (optionally) eigenvectors");
    o->graph.add_to(*sub);
    sub->add_option("--gamma", o->gamma, "Tunnelling amplitude")->required();
    sub->add_option("--source", o->source, "closed (closed-form) or numerical")->capture_default_str();
    sub->add_option("--format", o->format, "json or csv")->capture_default_str();
    sub->add_flag("--vectors", o->vectors, "Include eigenvectors in the JSON output");
    sub->add_option("--vectors-csv", o->vectors_csv, "Write eigenvectors as node,column,re,im rows to this file");
    sub->callback([o, &action] {
        action = [o] {
            check_format(o->format);
            if (o->source != "closed" && o->source != "numerical") throw UsageError("--source must be closed or numerical");
            const GraphSpec spec = o->graph.spec();
            const auto h = hamiltonian(spec, o->gamma);
            const Spectrum s = o->source == "closed" ? closed_form_spectrum(h) : numerical_spectrum(h);
            const auto group_of = s.group_of_column();
            if (!o->vectors_csv.empty()) {
                std::ofstream out(o->vectors_csv);
                if (!out) throw std::runtime_error("cannot write " + o->vectors_csv);
                out << "node,column,re,im\n";
                for (Eigen::Index c = 0; c < s.size(); ++c)
                    for (Eigen::Index r = 0; r < s.size(); ++r)
                        out << r + 1 << "," << c << "," << csv(s.eigenvectors(r, c).real()) << ","
                            << csv(s.eigenvectors(r, c).imag()) << "\n";
            }
            if (o->format == "csv") {
                std::cout << "column,label,group,eigenvalue\n";
                for (Eigen::Index c = 0; c < s.size(); ++c) {
                    std::cout << c << "," << s.column_labels[std::size_t(c)] << ","
                              << s.groups[group_of[std::size_t(c)]].label << "," << csv(s.eigenvalues(c)) << "\n";
                }
                return;
            }
            json groups = json::array();
            for (const auto& g : s.groups) {
                groups.push_back({{"label", g.label},
                                  {"eigenvalue", s.eigenvalues(g.columns.front())},
                                  {"multiplicity", g.columns.size()},
                                  {"columns", g.columns}});
            }
            json j{{"command", "spectrum"},
                   {"graph", graph_json(spec)},
                   {"gamma", o->gamma},
                   {"source", std::string(source_name(s.source))},
                   {"eigenvalues", real_json(s.eigenvalues)},
                   {"labels", s.column_labels},
                   {"groups", groups}};
            if (s.has_derivatives()) j["eigenvalue_derivatives"] = real_json(s.eigenvalue_derivatives);
            if (o->vectors) {
                json cols = json::array();
                for (Eigen::Index c = 0; c < s.size(); ++c) cols.push_back(complex_json(s.eigenvectors.col(c)));
                j["eigenvectors"] = cols;
            }
            emit(j);
        };
    });
}

void add_evolve(CLI::App& app, std::function<void()>& action) {
    struct Opts {
        GraphOptions graph;
        PrepOptions prep;
        double gamma = 1.0, t = 0.0;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand("evolve", "Evolved state, its gamma-derivative and position probabilities");
    o->graph.add_to(*sub);
    o->prep.add_to(*sub);
    sub->add_option("--gamma", o->gamma, "Tunnelling amplitude")->required();
    sub->add_option("--t", o->t, "Interrogation time")->required();
    sub->callback([o, &action] {
        action = [o] {
            const GraphSpec spec = o->graph.spec();
            const Preparation prep = o->prep.resolve(spec, o->gamma, o->t);
            const EvolvedState ev = evolve(spec, o->gamma, prep, o->t);
            emit({{"command", "evolve"},
                  {"graph", graph_json(spec)},
                  {"gamma", o->gamma},
                  {"t", o->t},
                  {"preparation", json::parse(prep.to_json())},
                  {"state", complex_json(ev.state)},
                  {"dstate", complex_json(ev.dstate)},
                  {"probabilities", real_json(ev.probabilities())},
                  {"norm", ev.state.norm()}});
        };
    });
}

void add_qfi(CLI::App& app, std::function<void()>& action) {
    struct Opts {
        GraphOptions graph;
        PrepOptions prep;
        double gamma = 1.0, t = 0.0;
        std::size_t shots = 1;
        bool oracle = false;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand("qfi", "Quantum Fisher information of the evolved state");
    o->graph.add_to(*sub);
    o->prep.add_to(*sub);
    sub->add_option("--gamma", o->gamma, "Tunnelling amplitude")->required();
    sub->add_option("--t", o->t, "Interrogation time")->required();
    sub->add_option("--N", o->shots, "Number of repetitions for the quantum Cramer-Rao bound")->capture_default_str();
    sub->add_flag("--oracle", o->oracle, "Also report the fidelity-based numerical QFI");
    sub->callback([o, &action] {
        action = [o] {
            if (o->shots < 1) throw UsageError("--N must be >= 1");
            const GraphSpec spec = o->graph.spec();
            const Preparation prep = o->prep.resolve(spec, o->gamma, o->t);
            const double q = qfi_pure(evolve(spec, o->gamma, prep, o->t));
            const double qmax = max_qfi_value(spec, o->gamma, o->t);
            json j{{"command", "qfi"},
                   {"graph", graph_json(spec)},
                   {"gamma", o->gamma},
                   {"t", o->t},
                   {"prep", o->prep.describe()},
                   {"shots", o->shots},
                   {"qfi", q},
                   {"max_qfi", qmax},
                   {"qcrb", number_or_null(1.0 / (double(o->shots) * q))}};
            if (o->oracle) j["qfi_fidelity_oracle"] = qfi_fidelity_oracle(spec, o->gamma, prep, o->t);
            emit(j);
        };
    });
}

void add_fi(CLI::App& app, std::function<void()>& action) {
    struct Opts {
        GraphOptions graph;
        PrepOptions prep;
        PovmOptions povm;
        double gamma = 1.0, t = 0.0;
        std::size_t shots = 1;
        std::string format = "json";
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand("fi", "Fisher information of a (possibly incomplete) position measurement");
    o->graph.add_to(*sub);
    o->prep.add_to(*sub);
    o->povm.add_to(*sub);
    sub->add_option("--gamma", o->gamma, "Tunnelling amplitude")->required();
    sub->add_option("--t", o->t, "Interrogation time")->required();
    sub->add_option("--N", o->shots, "Number of repetitions for the Cramer-Rao bounds")->capture_default_str();
    sub->add_option("--format", o->format, "json or csv (family,n,gamma,t,m,fi,qfi,eta)")->capture_default_str();
    sub->callback([o, &action] {
        action = [o] {
            check_format(o->format);
            if (o->shots < 1) throw UsageError("--N must be >= 1");
            const GraphSpec spec = o->graph.spec();
            const PositionPovm povm = o->povm.resolve(spec);
            const Preparation prep = o->prep.resolve(spec, o->gamma, o->t);
            const EstimationReport r = estimation_report(spec, o->gamma, prep, o->t, povm, o->shots);
            if (o->format == "csv") {
                std::cout << "family,n,gamma,t,m,fi,qfi,eta\n"
                          << family_name(spec.family()) << "," << spec.node_count() << "," << csv(o->gamma) << ","
                          << csv(o->t) << "," << r.monitored << "," << csv(r.fi.value) << "," << csv(r.qfi) << ","
                          << csv(r.efficiency) << "\n";
                return;
            }
            emit({{"command", "fi"},
                  {"graph", graph_json(spec)},
                  {"gamma", o->gamma},
                  {"t", o->t},
                  {"prep", o->prep.describe()},
                  {"shots", r.shots},
                  {"povm", povm_json(povm)},
                  {"qfi", r.qfi},
                  {"fi", fisher_json(r.fi)},
                  {"efficiency", number_or_null(r.efficiency)},
                  {"crb", number_or_null(r.bounds.crb)},
                  {"qcrb", number_or_null(r.bounds.qcrb)},
                  {"identifiable", r.bounds.identifiable}});
        };
    });
}

void add_efficiency(CLI::App& app, std::function<void()>& action) {
    struct Opts {
        GraphOptions graph;
        double gamma = 1.0, t = 0.0;
        std::size_t m = 0, delta = 0;
        double beta_odd = 0.0, beta_even = 0.0;
        std::string phi = "opt";
        std::size_t points = 10000;
        CLI::Option* m_opt = nullptr;
        CLI::Option* delta_opt = nullptr;
        CLI::Option* bo_opt = nullptr;
        CLI::Option* be_opt = nullptr;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand(
        "efficiency", "Closed-form efficiency of the family's incomplete measurement, with a generic cross-check");
    o->graph.add_to(*sub);
    sub->add_option("--gamma", o->gamma, "Tunnelling amplitude")->required();
    sub->add_option("--t", o->t, "Interrogation time")->required();
    o->m_opt = sub->add_option("--m", o->m, "Complete graph: monitored nodes 1..m");
    o->delta_opt = sub->add_option("--delta", o->delta, "Hypercube: face dimension");
    o->bo_opt = sub->add_option("--beta-O", o->beta_odd, "Even cycle: monitored fraction of odd labels");
    o->be_opt = sub->add_option("--beta-E", o->beta_even, "Even cycle: monitored fraction of even labels");
    sub->add_option("--phi", o->phi, "Star: relative phase of the balanced xi-/xi+ state ('opt' or a number)")
        ->capture_default_str();
    sub->add_option("--points", o->points, "Time-grid size for the maximum over gamma*t in [0, 2 pi]")
        ->capture_default_str();
    sub->callback([o, &action] {
        action = [o] {
            const GraphSpec spec = o->graph.spec();
            const std::size_t n = spec.node_count();
            const auto k = static_cast<Eigen::Index>(n);
            json j{{"command", "efficiency"}, {"graph", graph_json(spec)}, {"gamma", o->gamma}, {"t", o->t}};
            double closed = 0.0;
            Preparation prep = Preparation::ground(k);
            std::optional<PositionPovm> povm;
            switch (spec.family()) {
                case Family::Complete: {
                    if (!o->m_opt->count()) throw UsageError("complete graph efficiency needs --m");
                    const auto f = fi_complete_graph_closed(n, o->m, o->gamma, o->t);
                    closed = f.value / (double(n * n) * o->t * o->t);
                    prep = Preparation::energy_superposition(k, 0, 1);
                    povm = PositionPovm::first_nodes(o->m, n);
                    j["measurement"] = {{"m", o->m}};
                    j["max_over_t"] = complete_max_efficiency(n, o->m);
                    j["max_over_t_grid"] = complete_max_efficiency_grid(n, o->m, o->points);
                    j["bound"] = 2.0 * double(o->m) / double(n);
                    if (f.singular) j["closed_form_singular"] = f.diagnostic;
                    break;
                }
                case Family::Cycle: {
                    if (!o->bo_opt->count() || !o->be_opt->count()) throw UsageError("cycle efficiency needs --beta-O and --beta-E");
                    if (n % 2) throw UsageError("cycle efficiency needs an even --n");
                    const auto f = fi_cycle_closed(n, o->beta_odd, o->beta_even, o->gamma, o->t);
                    closed = f.value / (16.0 * o->t * o->t);
                    prep = max_qfi(spec, o->gamma, o->t).preparation;
                    const double half = double(n) / 2;
                    povm = PositionPovm::cycle_parity(n, std::size_t(std::llround(o->beta_odd * half)),
                                                      std::size_t(std::llround(o->beta_even * half)));
                    j["measurement"] = {{"beta_O", o->beta_odd}, {"beta_E", o->beta_even}};
                    j["max_over_t"] = cycle_max_efficiency(o->beta_odd, o->beta_even);
                    j["max_over_t_grid"] = cycle_max_efficiency_grid(o->beta_odd, o->beta_even, o->points);
                    if (f.singular) j["closed_form_singular"] = f.diagnostic;
                    break;
                }
                case Family::Hypercube: {
                    if (!o->delta_opt->count()) throw UsageError("hypercube efficiency needs --delta");
                    const std::size_t d = spec.dimension();
                    closed = fi_hypercube_face_closed(d, o->delta, o->t) / (4.0 * double(d * d) * o->t * o->t);
                    prep = Preparation::energy_superposition(k, 0, k - 1);
                    povm = PositionPovm::hypercube_face(d, o->delta);
                    j["measurement"] = {{"delta", o->delta}};
                    break;
                }
                case Family::Star: {
                    const double phi = o->phi == "opt" ? bipartite_optimal_phase(1, n - 1, o->gamma, o->t)
                                                       : parse_real_list(o->phi, "--phi").front();
                    closed = efficiency_star(n, phi, o->gamma, o->t);
                    const auto s = closed_form_spectrum(hamiltonian(spec, o->gamma));
                    prep = Preparation::energy_superposition(k, s.find_column("xi-"), s.find_column("xi+"), phi);
                    povm = PositionPovm::central(n);
                    j["measurement"] = {{"phi", phi}, {"central", true}};
                    break;
                }
                default:
                    throw UsageError("efficiency closed forms exist for complete, cycle, hypercube and star graphs");
            }
            const auto f = fi_povm(evolve(spec, o->gamma, prep, o->t), *povm);
            const double qmax = max_qfi_value(spec, o->gamma, o->t);
            j["eta"] = number_or_null(closed);
            j["eta_generic"] = number_or_null(qmax > 0 && !f.singular ? f.value / qmax : std::nan(""));
            j["fi"] = fisher_json(f);
            j["max_qfi"] = qmax;
            emit(j);
        };
    });
}

void add_optimize_prep(CLI::App& app, std::function<void()>& action) {
    struct Opts {
        GraphOptions graph;
        double gamma = 1.0, t = 1.0;
        bool numeric = false;
        PrepSearchOptions search;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand("optimize-prep", "QFI-maximising preparation (closed form, optional numeric search)");
    o->graph.add_to(*sub);
    sub->add_option("--gamma", o->gamma, "Tunnelling amplitude")->required();
    sub->add_option("--t", o->t, "Interrogation time")->required();
    sub->add_flag("--numeric", o->numeric, "Also run projected gradient ascent over preparations (n <= 64)");
    sub->add_option("--restarts", o->search.restarts, "Random restarts")->capture_default_str();
    sub->add_option("--iterations", o->search.max_iterations, "Iterations per restart")->capture_default_str();
    sub->add_option("--seed", o->search.seed, "Seed for the restarts")->capture_default_str();
    sub->add_option("--workers", o->search.workers, "Worker threads (0: hardware concurrency)");
    sub->callback([o, &action] {
        action = [o] {
            const GraphSpec spec = o->graph.spec();
            const auto opt = max_qfi(spec, o->gamma, o->t);
            const double achieved = qfi_pure(evolve(spec, o->gamma, opt.preparation, o->t));
            json j{{"command", "optimize-prep"},
                   {"graph", graph_json(spec)},
                   {"gamma", o->gamma},
                   {"t", o->t},
                   {"recipe", opt.recipe},
                   {"lower", {{"column", opt.lower_column}, {"label", opt.lower_label}}},
                   {"upper", {{"column", opt.upper_column}, {"label", opt.upper_label}}},
                   {"relative_phase", opt.relative_phase},
                   {"max_qfi", opt.max_qfi},
                   {"achieved_qfi", achieved},
                   {"preparation", json::parse(opt.preparation.to_json())}};
            if (o->numeric) {
                const auto r = numeric_prep_search(spec, o->gamma, o->t, o->search);
                j["numeric"] = {{"qfi", r.qfi},
                                {"ratio", opt.max_qfi > 0 ? r.qfi / opt.max_qfi : 1.0},
                                {"restarts", o->search.restarts},
                                {"seed", o->search.seed},
                                {"best_restart", r.best_restart},
                                {"converged", r.converged},
                                {"warning", r.warning},
                                {"preparation", json::parse(r.preparation.to_json())}};
            }
            emit(j);
        };
    });
}

void add_optimize_n(CLI::App& app, std::function<void()>& action) {
    struct Opts {
        std::string family;
        std::size_t n = 0;
        double gamma = 1.0;
        double t = -1.0;
        std::string regime = "small";
        std::size_t n_max = 1000;
        CLI::Option* n_opt = nullptr;
        CLI::Option* t_opt = nullptr;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand("optimize-n", "Optimal bipartition size or optimal star size");
    sub->add_option("--family", o->family, "bipartite or star")->required();
    o->n_opt = sub->add_option("--n", o->n, "Bipartite: total node count");
    sub->add_option("--gamma", o->gamma, "Tunnelling amplitude")->required();
    o->t_opt = sub->add_option("--t", o->t, "Interrogation time (star default: 0.01/gamma small, 100/gamma large)");
    sub->add_option("--regime", o->regime, "Star: small or large gamma*t")->capture_default_str();
    sub->add_option("--n-max", o->n_max, "Star: largest n in the grid search")->capture_default_str();
    sub->callback([o, &action] {
        action = [o] {
            json j{{"command", "optimize-n"}, {"family", o->family}, {"gamma", o->gamma}};
            if (o->family == "bipartite" || o->family == "complete_bipartite") {
                if (!o->n_opt->count() || !o->t_opt->count()) throw UsageError("bipartite optimize-n needs --n and --t");
                if (o->n < 2) throw UsageError("--n must be >= 2");
                json scan = json::array();
                for (std::size_t p = 1; p < o->n; ++p) scan.push_back(bipartite_max_qfi(p, o->n - p, o->gamma, o->t));
                j["family"] = "bipartite";
                j["n"] = o->n;
                j["t"] = o->t;
                j["p_opt"] = optimal_bipartition(o->n);
                j["p_scan"] = bipartition_scan(o->n, o->gamma, o->t);
                j["max_qfi_by_p"] = scan;
            } else if (o->family == "star") {
                if (o->n_opt->count()) throw UsageError("--n does not apply to star optimize-n (use --n-max)");
                if (o->regime != "small" && o->regime != "large") throw UsageError("--regime must be small or large");
                const auto regime = o->regime == "small" ? TimeRegime::SmallTime : TimeRegime::LargeTime;
                const double t = o->t_opt->count() ? o->t : (regime == TimeRegime::SmallTime ? 0.01 : 100.0) / o->gamma;
                const auto opt = star_n_opt(o->gamma, regime);
                const auto grid = star_grid_scan(o->gamma, t, o->n_max);
                j["regime"] = o->regime;
                j["n_opt"] = opt.value ? json(*opt.value) : json(nullptr);
                j["unbounded"] = opt.unbounded;
                j["boundary"] = opt.boundary;
                j["grid"] = {{"t", t},
                             {"n_max", o->n_max},
                             {"argmax", grid.argmax},
                             {"max_qfi", grid.max_value},
                             {"nondecreasing", grid.nondecreasing}};
            } else {
                throw UsageError("optimize-n supports --family bipartite or star");
            }
            emit(j);
        };
    });
}

void add_estimate(CLI::App& app, std::function<void()>& action) {
    struct Opts {
        GraphOptions graph;
        PrepOptions prep;
        PovmOptions povm;
        double gamma_true = 0.0, t = 0.0;
        std::uint64_t shots = 10000;
        std::size_t reps = 200;
        std::uint64_t seed = 1;
        std::string bracket;
        std::string csv_path;
        std::size_t workers = 0;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand("estimate", "Monte-Carlo maximum-likelihood estimation of gamma");
    o->graph.add_to(*sub);
    o->prep.add_to(*sub);
    o->povm.add_to(*sub);
    sub->add_option("--gamma-true", o->gamma_true, "True tunnelling amplitude")->required();
    sub->add_option("--t", o->t, "Interrogation time")->required();
    sub->add_option("--shots", o->shots, "Measurements per repetition")->capture_default_str();
    sub->add_option("--reps", o->reps, "Repetitions")->capture_default_str();
    sub->add_option("--seed", o->seed, "Base seed")->capture_default_str();
    sub->add_option("--bracket", o->bracket, "Search interval lo,hi for the estimator")->required();
    sub->add_option("--csv", o->csv_path, "Write rep,gamma_hat rows to this file");
    sub->add_option("--workers", o->workers, "Worker threads (0: hardware concurrency)");
    sub->callback([o, &action] {
        action = [o] {
            const auto b = parse_real_list(o->bracket, "--bracket");
            if (b.size() != 2 || !(b[0] > 0) || !(b[1] > b[0])) throw UsageError("--bracket needs 0 < lo < hi");
            if (o->shots < 1 || o->reps < 2) throw UsageError("--shots >= 1 and --reps >= 2 required");
            const GraphSpec spec = o->graph.spec();
            // The preparation is fixed at the true value, as an experimenter would tune it.
            const ExperimentModel model{spec, o->prep.resolve(spec, o->gamma_true, o->t), o->povm.resolve(spec), o->t};
            ExperimentConfig cfg;
            cfg.gamma_true = o->gamma_true;
            cfg.shots = o->shots;
            cfg.repetitions = o->reps;
            cfg.seed = o->seed;
            cfg.bracket = {b[0], b[1]};
            cfg.workers = o->workers;
            const auto s = run_experiment(model, cfg);
            if (!o->csv_path.empty()) {
                std::ofstream out(o->csv_path);
                if (!out) throw std::runtime_error("cannot write " + o->csv_path);
                out << "rep,gamma_hat\n";
                for (std::size_t r = 0; r < s.estimates.size(); ++r) out << r << "," << csv(s.estimates[r]) << "\n";
            }
            emit({{"command", "estimate"},
                  {"graph", graph_json(spec)},
                  {"t", o->t},
                  {"prep", o->prep.describe()},
                  {"povm", povm_json(model.povm)},
                  {"gamma_true", o->gamma_true},
                  {"shots", o->shots},
                  {"repetitions", o->reps},
                  {"seed", o->seed},
                  {"bracket", b},
                  {"mean", s.mean},
                  {"variance", s.variance},
                  {"standard_error", s.standard_error},
                  {"fi", s.fi},
                  {"qfi", s.qfi},
                  {"crb", number_or_null(s.crb)},
                  {"qcrb", number_or_null(s.qcrb)},
                  {"efficiency_empirical", number_or_null(s.efficiency_empirical)}});
        };
    });
}

void add_sweep(CLI::App& app, std::function<void()>& action) {
    struct Opts {
        std::string config;
        std::string output;
        std::string format;
        std::size_t workers = 0;
        CLI::Option* workers_opt = nullptr;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand("sweep", "Evaluate a grid of points described by a JSON config");
    sub->add_option("--config", o->config, "Sweep configuration file (schema: docs/schemas/sweep-config.schema.json)")
        ->required();
    sub->add_option("--output", o->output, "Override the configured output path ('-' for stdout)");
    sub->add_option("--format", o->format, "Override the configured format (csv or json)");
    o->workers_opt = sub->add_option("--workers", o->workers, "Worker threads (0: hardware concurrency)");
    sub->callback([o, &action] {
        action = [o] {
            std::ifstream in(o->config);
            if (!in) throw UsageError("cannot read --config " + o->config);
            std::stringstream ss;
            ss << in.rdbuf();
            SweepConfig cfg = parse_sweep_config(ss.str());
            if (!o->format.empty()) {
                check_format(o->format);
                cfg.format = o->format == "csv" ? SweepFormat::Csv : SweepFormat::Json;
            }
            if (!o->output.empty()) cfg.output = o->output == "-" ? "" : o->output;
            if (o->workers_opt->count()) cfg.workers = o->workers;
            const SweepTable table = run_sweep(cfg);
            const auto write = [&](std::ostream& out) {
                if (cfg.format == SweepFormat::Csv) write_csv(table, out);
                else write_json(table, out);
            };
            if (cfg.output.empty()) {
                write(std::cout);
                return;
            }
            std::ofstream out(cfg.output);
            if (!out) throw std::runtime_error("cannot write " + cfg.output);
            write(out);
            std::size_t errors = 0;
            for (const auto& r : table.rows) errors += r.error.empty() ? 0 : 1;
            std::cerr << "wrote " << table.rows.size() << " rows (" << errors << " with errors) to " << cfg.output
                      << "\n";
        };
    });
}

}  // namespace

void register_commands(CLI::App& app, std::function<void()>& action) {
    add_spectrum(app, action);
    add_evolve(app, action);
    add_qfi(app, action);
    add_fi(app, action);
    add_efficiency(app, action);
    add_optimize_prep(app, action);
    add_optimize_n(app, action);
    add_estimate(app, action);
    add_sweep(app, action);
}

}  // namespace qwalk::cli
