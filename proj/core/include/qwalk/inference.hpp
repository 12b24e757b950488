#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qwalk/common.hpp"
#include "qwalk/dynamics.hpp"
#include "qwalk/graph.hpp"
#include "qwalk/metrology.hpp"

namespace qwalk {

using Histogram = std::vector<std::uint64_t>;

/// Statistical model of one measurement: graph, preparation, POVM and time.
struct ExperimentModel {
    GraphSpec spec;
    Preparation prep;
    PositionPovm povm;
    double t = 0.0;

    RealVector probabilities(double gamma) const;
};

/// Multinomial draw of `shots` outcomes, deterministic under `seed`.
Histogram sample_outcomes(const RealVector& probabilities, std::uint64_t shots, std::uint64_t seed);
Histogram sample_outcomes(const ExperimentModel& model, double gamma_true, std::uint64_t shots, std::uint64_t seed);

double log_likelihood(const Histogram& counts, const ExperimentModel& model, double gamma);

struct Bracket {
    double lo = 0.0;
    double hi = 0.0;
};

/// Unidentifiable: the log-likelihood is flat across the bracket.
class UnidentifiableError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

inline constexpr std::size_t kMleGridPoints = 512;

/// Maximum-likelihood gamma: 512-point scan of the bracket, then golden-section
/// refinement inside the best grid cell.
double mle(const Histogram& counts, const ExperimentModel& model, Bracket bracket);

struct ExperimentConfig {
    double gamma_true = 0.0;
    std::uint64_t shots = 0;
    std::size_t repetitions = 0;
    std::uint64_t seed = 0;
    Bracket bracket;
    std::size_t workers = 0;
};

struct ExperimentSummary {
    std::vector<double> estimates;
    double mean = 0.0;
    double variance = 0.0;        // unbiased sample variance over repetitions
    double standard_error = 0.0;  // sqrt(variance / repetitions)
    double fi = 0.0;
    double qfi = 0.0;
    double crb = 0.0;
    double qcrb = 0.0;
    /// crb / variance: 1 for an efficient estimator.
    double efficiency_empirical = 0.0;
};

/// Repeats sample + MLE; repetition r uses a seed derived from (seed, r).
ExperimentSummary run_experiment(const ExperimentModel& model, const ExperimentConfig& config);

}  // namespace qwalk
