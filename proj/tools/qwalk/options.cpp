#include "qwalk/options.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "qwalk/optimize.hpp"
#include "qwalk/spectral.hpp"

namespace qwalk::cli {

using nlohmann::json;

void GraphOptions::add_to(CLI::App& app) {
    app.add_option("--family", family,
                   "Graph family: complete, cycle, circulant, hypercube, bipartite, star")
        ->required();
    n_opt = app.add_option("--n", n, "Node count (complete, cycle, circulant, star)");
    d_opt = app.add_option("--d", d, "Hypercube dimension");
    p_opt = app.add_option("--p", p, "First partition size (bipartite)");
    q_opt = app.add_option("--q", q, "Second partition size (bipartite)");
    couplings_opt = app.add_option("--couplings", couplings,
                                   "Circulant relative couplings c_1..c_{n/2}, comma separated");
}

GraphSpec GraphOptions::spec() const {
    Family f;
    try {
        f = parse_family(family);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    const auto forbid = [&](CLI::Option* o, const char* flag) {
        if (o && o->count()) throw UsageError(std::string(flag) + " does not apply to family '" + family + "'");
    };
    const auto need = [&](CLI::Option* o, const char* flag) {
        if (!o || !o->count()) throw UsageError("family '" + family + "' needs " + flag);
    };
    switch (f) {
        case Family::Complete:
        case Family::Cycle:
        case Family::Star:
            need(n_opt, "--n");
            forbid(d_opt, "--d");
            forbid(p_opt, "--p");
            forbid(q_opt, "--q");
            forbid(couplings_opt, "--couplings");
            if (f == Family::Complete) return GraphSpec::complete(n);
            if (f == Family::Cycle) return GraphSpec::cycle(n);
            return GraphSpec::star(n);
        case Family::Circulant:
            need(n_opt, "--n");
            need(couplings_opt, "--couplings");
            forbid(d_opt, "--d");
            forbid(p_opt, "--p");
            forbid(q_opt, "--q");
            return GraphSpec::circulant(n, parse_real_list(couplings, "--couplings"));
        case Family::Hypercube:
            need(d_opt, "--d");
            forbid(n_opt, "--n");
            forbid(p_opt, "--p");
            forbid(q_opt, "--q");
            forbid(couplings_opt, "--couplings");
            return GraphSpec::hypercube(d);
        case Family::CompleteBipartite:
            need(p_opt, "--p");
            need(q_opt, "--q");
            forbid(n_opt, "--n");
            forbid(d_opt, "--d");
            forbid(couplings_opt, "--couplings");
            return GraphSpec::complete_bipartite(p, q);
    }
    throw UsageError("unknown family");
}

void PrepOptions::add_to(CLI::App& app) {
    app.add_option("--prep", prep,
                   "Initial state: optimal, ground, uniform-position, or a JSON amplitude file")
        ->capture_default_str();
    app.add_option("--phi", phi,
                   "Bipartite graphs: balanced xi-/xi+ state with this relative phase ('opt' for t*sqrt(Delta))");
}

Preparation PrepOptions::resolve(const GraphSpec& spec, double gamma, double t) const {
    const auto n = static_cast<Eigen::Index>(spec.node_count());
    if (!phi.empty()) {
        if (!spec.is_bipartite()) throw UsageError("--phi applies only to bipartite and star graphs");
        if (prep != "optimal") throw UsageError("--phi cannot be combined with --prep " + prep);
        double value = 0.0;
        if (phi == "opt") {
            value = bipartite_optimal_phase(spec.part_p(), spec.part_q(), gamma, t);
        } else {
            try {
                std::size_t used = 0;
                value = std::stod(phi, &used);
                if (used != phi.size()) throw std::invalid_argument(phi);
            } catch (const std::exception&) {
                throw UsageError("--phi must be 'opt' or a number, got '" + phi + "'");
            }
        }
        const auto s = closed_form_spectrum(hamiltonian(spec, gamma));
        return Preparation::energy_superposition(n, s.find_column("xi-"), s.find_column("xi+"), value);
    }
    if (prep == "optimal") return max_qfi(spec, gamma, t).preparation;
    if (prep == "ground") return Preparation::ground(n);
    if (prep == "uniform-position") return Preparation::uniform_position(n);
    std::ifstream in(prep);
    if (!in) throw UsageError("--prep: '" + prep + "' is neither a preset nor a readable file");
    std::stringstream ss;
    ss << in.rdbuf();
    return Preparation::from_json(ss.str());
}

std::string PrepOptions::describe() const {
    if (!phi.empty()) return "balanced-phi(" + phi + ")";
    return prep;
}

void PovmOptions::add_to(CLI::App& app) {
    subset_opt = app.add_option("--subset", subset, "Monitored node labels, comma separated (1-based)");
    face_opt = app.add_option("--face", face, "Hypercube face dimension delta (nodes 1..2^delta)");
    central_opt = app.add_flag("--central", central, "Monitor only node 1 (the star centre)");
    first_m_opt = app.add_option("--first-m", first_m, "Monitor nodes 1..m");
    beta_odd_opt = app.add_option("--beta-O", beta_odd, "Even cycle: monitored fraction of odd labels");
    beta_even_opt = app.add_option("--beta-E", beta_even, "Even cycle: monitored fraction of even labels");
    const std::vector<CLI::Option*> kinds{subset_opt, face_opt, central_opt, first_m_opt};
    for (auto* a : kinds) {
        for (auto* b : kinds) {
            if (a != b) a->excludes(b);
        }
        a->excludes(beta_odd_opt);
        a->excludes(beta_even_opt);
    }
    beta_odd_opt->needs(beta_even_opt);
    beta_even_opt->needs(beta_odd_opt);
}

PositionPovm PovmOptions::resolve(const GraphSpec& spec) const {
    const std::size_t n = spec.node_count();
    if (subset_opt->count()) return PositionPovm(parse_label_list(subset, "--subset"), n);
    if (face_opt->count()) {
        if (spec.family() != Family::Hypercube) throw UsageError("--face needs --family hypercube");
        return PositionPovm::hypercube_face(spec.dimension(), face);
    }
    if (central_opt->count()) return PositionPovm::central(n);
    if (first_m_opt->count()) return PositionPovm::first_nodes(first_m, n);
    if (beta_odd_opt->count()) {
        if (spec.family() != Family::Cycle || n % 2) throw UsageError("--beta-O/--beta-E need an even cycle");
        const double half = double(n) / 2.0;
        const double o = beta_odd * half, e = beta_even * half;
        if (o < 0 || e < 0 || std::abs(o - std::round(o)) > 1e-9 || std::abs(e - std::round(e)) > 1e-9 || o > half ||
            e > half) {
            throw UsageError("beta * n/2 must be an integer in 0..n/2");
        }
        return PositionPovm::cycle_parity(n, std::size_t(std::llround(o)), std::size_t(std::llround(e)));
    }
    return PositionPovm::complete(n);
}

std::vector<double> parse_real_list(const std::string& text, const std::string& flag) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError(flag + ": '" + item + "' is not a number");
        }
    }
    if (out.empty()) throw UsageError(flag + " is empty");
    return out;
}

std::vector<std::size_t> parse_label_list(const std::string& text, const std::string& flag) {
    std::vector<std::size_t> out;
    for (double v : parse_real_list(text, flag)) {
        if (v < 1 || v != std::floor(v)) throw UsageError(flag + ": node labels are positive integers");
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

json graph_json(const GraphSpec& spec) { return json::parse(spec.to_json()); }

json complex_json(const ComplexVector& v) {
    json a = json::array();
    for (Eigen::Index k = 0; k < v.size(); ++k) a.push_back({v(k).real(), v(k).imag()});
    return a;
}

json real_json(const RealVector& v) {
    json a = json::array();
    for (Eigen::Index k = 0; k < v.size(); ++k) a.push_back(v(k));
    return a;
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace qwalk::cli
