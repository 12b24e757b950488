#include "qwalk/graph.hpp"

#include <cmath>
#include <string>

#include <json.hpp>

namespace qwalk {

using nlohmann::json;

namespace {

void check_nodes(std::size_t n) {
    if (n > max_dimension()) {
        throw DomainError("graph has " + std::to_string(n) + " nodes, above the cap of " +
                          std::to_string(max_dimension()) + " (set WALKER_MAX_DIM to raise it)");
    }
}

}  // namespace

std::string_view family_name(Family f) {
    switch (f) {
        case Family::Complete: return "complete";
        case Family::Cycle: return "cycle";
        case Family::Circulant: return "circulant";
        case Family::Hypercube: return "hypercube";
        case Family::CompleteBipartite: return "bipartite";
        case Family::Star: return "star";
    }
    return "unknown";
}

Family parse_family(std::string_view name) {
    if (name == "complete") return Family::Complete;
    if (name == "cycle") return Family::Cycle;
    if (name == "circulant") return Family::Circulant;
    if (name == "hypercube") return Family::Hypercube;
    if (name == "bipartite" || name == "complete_bipartite") return Family::CompleteBipartite;
    if (name == "star") return Family::Star;
    throw DomainError("unknown graph family '" + std::string(name) + "'");
}

GraphSpec GraphSpec::complete(std::size_t n) {
    if (n < 2) throw DomainError("complete graph needs n >= 2");
    check_nodes(n);
    GraphSpec g;
    g.family_ = Family::Complete;
    g.nodes_ = n;
    return g;
}

GraphSpec GraphSpec::cycle(std::size_t n) {
    if (n < 3) throw DomainError("cycle graph needs n >= 3");
    check_nodes(n);
    GraphSpec g;
    g.family_ = Family::Cycle;
    g.nodes_ = n;
    return g;
}

GraphSpec GraphSpec::circulant(std::size_t n, std::vector<double> couplings) {
    if (n < 2) throw DomainError("circulant graph needs n >= 2");
    check_nodes(n);
    if (couplings.size() != n / 2) {
        throw DomainError("circulant graph on " + std::to_string(n) + " nodes takes " +
                          std::to_string(n / 2) + " couplings, got " +
                          std::to_string(couplings.size()));
    }
    bool any = false;
    for (double c : couplings) {
        if (!std::isfinite(c) || c < 0.0) throw DomainError("circulant couplings must be finite and >= 0");
        any = any || c > 0.0;
    }
    if (!any) throw DomainError("circulant graph needs at least one nonzero coupling");
    GraphSpec g;
    g.family_ = Family::Circulant;
    g.nodes_ = n;
    g.couplings_ = std::move(couplings);
    return g;
}

GraphSpec GraphSpec::hypercube(std::size_t d) {
    if (d < 1) throw DomainError("hypercube needs d >= 1");
    if (d >= 8 * sizeof(std::size_t) - 1 || (std::size_t{1} << d) > max_dimension()) {
        throw DomainError("hypercube dimension " + std::to_string(d) + " exceeds the node cap of " +
                          std::to_string(max_dimension()));
    }
    GraphSpec g;
    g.family_ = Family::Hypercube;
    g.dim_ = d;
    g.nodes_ = std::size_t{1} << d;
    return g;
}

GraphSpec GraphSpec::complete_bipartite(std::size_t p, std::size_t q) {
    if (p < 1 || q < 1) throw DomainError("complete bipartite graph needs p >= 1 and q >= 1");
    check_nodes(p + q);
    GraphSpec g;
    g.family_ = Family::CompleteBipartite;
    g.p_ = p;
    g.q_ = q;
    g.nodes_ = p + q;
    return g;
}

GraphSpec GraphSpec::star(std::size_t n) {
    if (n < 2) throw DomainError("star graph needs n >= 2");
    check_nodes(n);
    GraphSpec g;
    g.family_ = Family::Star;
    g.p_ = 1;
    g.q_ = n - 1;
    g.nodes_ = n;
    return g;
}

double GraphSpec::circulant_weight(std::size_t k) const {
    if (family_ != Family::Circulant) throw DomainError("circulant_weight on a non-circulant graph");
    k %= nodes_;
    if (k == 0) return 0.0;
    const std::size_t m = std::min(k, nodes_ - k);
    return couplings_[m - 1];
}

std::string GraphSpec::to_json() const {
    json j;
    j["family"] = std::string(family_name(family_));
    switch (family_) {
        case Family::Complete:
        case Family::Cycle:
        case Family::Star: j["n"] = nodes_; break;
        case Family::Circulant:
            j["n"] = nodes_;
            j["couplings"] = couplings_;
            break;
        case Family::Hypercube: j["d"] = dim_; break;
        case Family::CompleteBipartite:
            j["p"] = p_;
            j["q"] = q_;
            break;
    }
    return j.dump();
}

GraphSpec GraphSpec::from_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw DomainError(std::string("graph JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("family") || !j["family"].is_string()) {
        throw DomainError("graph JSON needs a string 'family' field");
    }
    auto size = [&](const char* key) -> std::size_t {
        if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() < 0) {
            throw DomainError(std::string("graph JSON needs a non-negative integer '") + key + "'");
        }
        return j[key].get<std::size_t>();
    };
    switch (parse_family(j["family"].get<std::string>())) {
        case Family::Complete: return complete(size("n"));
        case Family::Cycle: return cycle(size("n"));
        case Family::Star: return star(size("n"));
        case Family::Hypercube: return hypercube(size("d"));
        case Family::CompleteBipartite: return complete_bipartite(size("p"), size("q"));
        case Family::Circulant: {
            if (!j.contains("couplings") || !j["couplings"].is_array()) {
                throw DomainError("circulant graph JSON needs a 'couplings' array");
            }
            std::vector<double> c;
            for (const auto& v : j["couplings"]) {
                if (!v.is_number()) throw DomainError("circulant couplings must be numbers");
                c.push_back(v.get<double>());
            }
            return circulant(size("n"), std::move(c));
        }
    }
    throw DomainError("unreachable graph family");
}

RealMatrix coupling_weights(const GraphSpec& spec) {
    const auto n = static_cast<Eigen::Index>(spec.node_count());
    RealMatrix w = RealMatrix::Zero(n, n);
    switch (spec.family()) {
        case Family::Complete:
            w.setOnes();
            w.diagonal().setZero();
            break;
        case Family::Cycle:
            for (Eigen::Index j = 0; j < n; ++j) {
                w(j, (j + 1) % n) = 1.0;
                w((j + 1) % n, j) = 1.0;
            }
            break;
        case Family::Circulant:
            for (Eigen::Index j = 0; j < n; ++j) {
                for (Eigen::Index k = 0; k < n; ++k) {
                    if (j != k) w(j, k) = spec.circulant_weight(static_cast<std::size_t>((k - j + n) % n));
                }
            }
            break;
        case Family::Hypercube: {
            // A(1) = [[0,1],[1,0]], A(d) = [[A(d-1), I], [I, A(d-1)]]
            RealMatrix a(2, 2);
            a << 0, 1, 1, 0;
            for (std::size_t level = 2; level <= spec.dimension(); ++level) {
                const Eigen::Index h = a.rows();
                RealMatrix next = RealMatrix::Zero(2 * h, 2 * h);
                next.topLeftCorner(h, h) = a;
                next.bottomRightCorner(h, h) = a;
                next.topRightCorner(h, h).setIdentity();
                next.bottomLeftCorner(h, h).setIdentity();
                a = std::move(next);
            }
            w = std::move(a);
            break;
        }
        case Family::CompleteBipartite:
        case Family::Star: {
            const auto p = static_cast<Eigen::Index>(spec.part_p());
            const auto q = static_cast<Eigen::Index>(spec.part_q());
            w.topRightCorner(p, q).setOnes();
            w.bottomLeftCorner(q, p).setOnes();
            break;
        }
    }
    return w;
}

RealMatrix adjacency(const GraphSpec& spec) {
    RealMatrix w = coupling_weights(spec);
    return (w.array() != 0.0).cast<double>().matrix();
}

RealVector degrees(const GraphSpec& spec) { return adjacency(spec).rowwise().sum(); }

std::size_t edge_count(const GraphSpec& spec) {
    return static_cast<std::size_t>(std::llround(adjacency(spec).sum() / 2.0));
}

void require_positive_gamma(double gamma) {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw DomainError("tunnelling amplitude gamma must be finite and > 0, got " + std::to_string(gamma));
    }
}

WalkHamiltonian hamiltonian(const GraphSpec& spec, double gamma) {
    require_positive_gamma(gamma);
    const RealMatrix w = coupling_weights(spec);
    RealMatrix h = -gamma * w;
    h.diagonal() = (w.array() != 0.0).cast<double>().matrix().rowwise().sum();
    return WalkHamiltonian{spec, gamma, std::move(h)};
}

}  // namespace qwalk
