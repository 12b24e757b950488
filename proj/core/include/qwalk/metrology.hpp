#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "qwalk/common.hpp"
#include "qwalk/dynamics.hpp"
#include "qwalk/graph.hpp"

namespace qwalk {

/// Position measurement on a subset of nodes plus, when the subset is not the
/// whole graph, the projector on its orthogonal complement.
class PositionPovm {
public:
    /// `monitored` holds distinct 1-based node labels.
    PositionPovm(std::vector<std::size_t> monitored, std::size_t node_count);

    static PositionPovm complete(std::size_t node_count);
    /// Nodes 1..m.
    static PositionPovm first_nodes(std::size_t m, std::size_t node_count);
    /// The 2^delta nodes of the hypercube face with labels 1..2^delta.
    static PositionPovm hypercube_face(std::size_t d, std::size_t delta);
    /// Only the star centre (node 1).
    static PositionPovm central(std::size_t node_count);
    /// The first `odd` odd-labelled and first `even` even-labelled nodes of an even cycle.
    static PositionPovm cycle_parity(std::size_t node_count, std::size_t odd, std::size_t even);

    const std::vector<std::size_t>& monitored() const noexcept { return monitored_; }
    std::size_t node_count() const noexcept { return nodes_; }
    bool is_complete() const noexcept { return monitored_.size() == nodes_; }
    std::size_t element_count() const noexcept { return monitored_.size() + (is_complete() ? 0 : 1); }

    /// Outcome distribution: monitored nodes in order, then the complement.
    RealVector probabilities(const ComplexVector& state) const;

private:
    std::vector<std::size_t> monitored_;
    std::size_t nodes_;
};

/// A Fisher-information value; singular results carry +inf and a reason.
struct FisherResult {
    double value = 0.0;
    bool singular = false;
    std::string diagnostic;
};

/// Below these thresholds an outcome is a removable 0/0 and contributes its
/// limit 4 |P d psi|^2; a larger derivative marks the FI as singular.
inline constexpr double kProbabilityFloor = 1e-14;
inline constexpr double kDerivativeFloor = 1e-10;

/// Q = 4 [<d psi|d psi> + (<d psi|psi>)^2].
double qfi_pure(const EvolvedState& ev);

/// Gauge-free QFI from the fidelity between numerically evolved states at
/// gamma and gamma +- h, Richardson-extrapolated over h and h/2.
double qfi_fidelity_oracle(const GraphSpec& spec, double gamma, const Preparation& prep, double t,
                           double h = 1e-4);

/// Classical FI of a position POVM, sum_x p'(x)^2 / p(x).
FisherResult fi_povm(const EvolvedState& ev, const PositionPovm& povm);

// Closed forms. Each assumes the preparation stated next to it.

/// Complete graph, balanced ground + first Fourier excited state, nodes 1..m monitored.
FisherResult fi_complete_graph_closed(std::size_t n, std::size_t m, double gamma, double t);

/// Even cycle, balanced ground + highest excited state; beta_O, beta_E are the
/// monitored fractions of odd and even labels.
FisherResult fi_cycle_closed(std::size_t n, double beta_odd, double beta_even, double gamma, double t);

/// Star graph S_n with (|xi_-> + e^{i phi}|xi_+>)/sqrt(2), centre-node POVM.
FisherResult fi_star_closed(std::size_t n, double phi, double gamma, double t);
/// Position-measurement efficiency relative to the preparation-optimised QFI.
double efficiency_star(std::size_t n, double phi, double gamma, double t);

/// Hypercube face of dimension delta >= 1, balanced ground + top state. A
/// single node (delta = 0) does not see a gamma-independent face weight.
double fi_hypercube_face_closed(std::size_t d, std::size_t delta, double t);

/// Bipartite K_{p,q} QFI for alpha_- |xi_-> + alpha_+ |xi_+>.
double qfi_bipartite_closed(std::size_t p, std::size_t q, cplx alpha_minus, cplx alpha_plus, double gamma,
                            double t);
double bipartite_delta(std::size_t p, std::size_t q, double gamma);
double bipartite_f(std::size_t p, std::size_t q, double gamma, double t);
double bipartite_optimal_phase(std::size_t p, std::size_t q, double gamma, double t);

/// Q_{K_n} = 4 n^2 t^2 |alpha_0|^2 (1 - |alpha_0|^2).
double qfi_complete_closed(std::size_t n, double ground_weight, double t);
/// Q_{C_n} = 16 t^2 Var[cos(2 pi X / n)], X ~ weights over Fourier index j.
double qfi_cycle_closed(std::size_t n, const RealVector& fourier_weights, double t);
/// Q_{Y_d} = 4 t^2 Var(d - 2X), X ~ level weights j = 0..d.
double qfi_hypercube_closed(std::size_t d, const RealVector& level_weights, double t);

double variance(const RealVector& values, const RealVector& probs);
/// (max - min)^2 / 4 over `values`; an upper bound on the variance under any `probs`.
double popoviciu_bound(const RealVector& values, const RealVector& probs);

struct CramerRaoBounds {
    double crb = std::numeric_limits<double>::infinity();
    double qcrb = std::numeric_limits<double>::infinity();
    bool identifiable = false;
};

/// crb = 1/(N F), qcrb = 1/(N Q). F = 0 leaves crb infinite and unidentifiable.
CramerRaoBounds cramer_rao(double fi, double qfi, std::size_t shots);

struct EstimationReport {
    GraphSpec spec;
    double gamma = 0.0;
    double t = 0.0;
    std::size_t shots = 1;
    std::size_t povm_elements = 0;
    std::size_t monitored = 0;
    double qfi = 0.0;
    FisherResult fi;
    double efficiency = 0.0;
    CramerRaoBounds bounds;
};

EstimationReport estimation_report(const GraphSpec& spec, double gamma, const Preparation& prep, double t,
                                   const PositionPovm& povm, std::size_t shots = 1);

}  // namespace qwalk
