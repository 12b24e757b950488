#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "qwalk/common.hpp"
#include "qwalk/dynamics.hpp"
#include "qwalk/graph.hpp"

namespace qwalk {

/// Family recipe for the QFI-maximising preparation plus its realisation.
struct OptimalPreparation {
    std::string recipe;
    Preparation preparation;
    /// Spectrum columns (ascending order) holding the two balanced components.
    Eigen::Index lower_column = 0;
    Eigen::Index upper_column = 0;
    std::string lower_label;
    std::string upper_label;
    /// Relative phase arg(alpha_upper / alpha_lower); nonzero only for bipartite graphs.
    double relative_phase = 0.0;
    /// Closed-form maximum of the QFI over preparations.
    double max_qfi = 0.0;
};

OptimalPreparation max_qfi(const GraphSpec& spec, double gamma, double t);

/// Closed-form maximum alone.
double max_qfi_value(const GraphSpec& spec, double gamma, double t);

struct PrepSearchOptions {
    std::size_t restarts = 200;
    std::size_t max_iterations = 4000;
    double step = 0.05;
    std::uint64_t seed = 1;
    std::size_t workers = 0;
};

struct PrepSearchResult {
    Preparation preparation;
    double qfi = 0.0;
    std::size_t best_restart = 0;
    bool converged = false;
    std::string warning;
};

/// Projected gradient ascent of the QFI over unit energy-basis amplitude
/// vectors, with random restarts. Deterministic for a given seed.
PrepSearchResult numeric_prep_search(const GraphSpec& spec, double gamma, double t,
                                     const PrepSearchOptions& options = {});

/// max_t eta^(m) for the complete graph: m/n + s_{n,m}/n.
double complete_max_efficiency(std::size_t n, std::size_t m);
/// max_t eta for an even cycle: max(beta_O, beta_E).
double cycle_max_efficiency(double beta_odd, double beta_even);

/// Grid maxima of the closed-form efficiencies over gamma*t in [0, 2 pi].
double complete_max_efficiency_grid(std::size_t n, std::size_t m, std::size_t points = 10000);
double cycle_max_efficiency_grid(double beta_odd, double beta_even, std::size_t points = 10000);

/// floor(n/2).
std::size_t optimal_bipartition(std::size_t n);
/// Smallest p in 1..n-1 maximising max_prep Q_{K_{p,n-p}} at (gamma, t).
std::size_t bipartition_scan(std::size_t n, double gamma, double t);
double bipartite_max_qfi(std::size_t p, std::size_t q, double gamma, double t);

enum class TimeRegime { SmallTime, LargeTime };

struct NodeCountOptimum {
    std::optional<double> value;  // empty when unbounded
    bool unbounded = false;
    bool boundary = false;
};

/// Asymptotic optimal star size in the small- or large-gamma*t regime.
NodeCountOptimum star_n_opt(double gamma, TimeRegime regime);

/// Exact max_prep Q_{S_n}.
double star_max_qfi(std::size_t n, double gamma, double t);

struct StarGridScan {
    std::size_t argmax = 0;
    double max_value = 0.0;
    bool nondecreasing = true;
};
StarGridScan star_grid_scan(double gamma, double t, std::size_t n_max);

}  // namespace qwalk
