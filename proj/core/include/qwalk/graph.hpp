#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "qwalk/common.hpp"

namespace qwalk {

enum class Family { Complete, Cycle, Circulant, Hypercube, CompleteBipartite, Star };

std::string_view family_name(Family f);
Family parse_family(std::string_view name);

/// A graph family together with its size parameters.
///
/// Node labels are 1..n in every user-facing interface and 0..n-1 in matrices.
/// Labelling follows the usual conventions: cycle nodes in ring order,
/// hypercube node k has the binary coordinates of k-1, and a bipartite graph
/// puts the p-partition on labels 1..p (the star centre is node 1).
class GraphSpec {
public:
    static GraphSpec complete(std::size_t n);
    static GraphSpec cycle(std::size_t n);
    /// `couplings` holds the floor(n/2) independent relative weights
    /// c_1..c_{n/2}; c_{n-k} = c_k is implied.
    static GraphSpec circulant(std::size_t n, std::vector<double> couplings);
    static GraphSpec hypercube(std::size_t d);
    static GraphSpec complete_bipartite(std::size_t p, std::size_t q);
    static GraphSpec star(std::size_t n);

    Family family() const noexcept { return family_; }
    std::size_t node_count() const noexcept { return nodes_; }
    /// Hypercube dimension (0 for other families).
    std::size_t dimension() const noexcept { return dim_; }
    /// Bipartition sizes; star reports p = 1, q = n - 1.
    std::size_t part_p() const noexcept { return p_; }
    std::size_t part_q() const noexcept { return q_; }
    const std::vector<double>& couplings() const noexcept { return couplings_; }

    bool is_bipartite() const noexcept {
        return family_ == Family::CompleteBipartite || family_ == Family::Star;
    }
    /// True for the families whose eigenvectors do not depend on gamma.
    bool has_gamma_independent_eigenvectors() const noexcept { return !is_bipartite(); }

    /// Relative coupling between nodes at cyclic distance k (circulant only).
    double circulant_weight(std::size_t k) const;

    std::string to_json() const;
    static GraphSpec from_json(std::string_view text);

    friend bool operator==(const GraphSpec&, const GraphSpec&) = default;

private:
    GraphSpec() = default;

    Family family_ = Family::Complete;
    std::size_t nodes_ = 0;
    std::size_t dim_ = 0;
    std::size_t p_ = 0;
    std::size_t q_ = 0;
    std::vector<double> couplings_;
};

/// 0/1 symmetric adjacency matrix with zero diagonal.
RealMatrix adjacency(const GraphSpec& spec);

/// Edge weights multiplying gamma in H; equals adjacency() except for
/// circulant graphs, where entry (j,k) is the relative coupling c_{|j-k|}.
RealMatrix coupling_weights(const GraphSpec& spec);

RealVector degrees(const GraphSpec& spec);
std::size_t edge_count(const GraphSpec& spec);

struct WalkHamiltonian {
    GraphSpec spec;
    double gamma;
    RealMatrix matrix;
};

/// H = D - gamma * W with D the degree matrix (on-site energy fixed to 1).
WalkHamiltonian hamiltonian(const GraphSpec& spec, double gamma);

void require_positive_gamma(double gamma);

}  // namespace qwalk
