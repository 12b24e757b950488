#include "qwalk/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "qwalk/parallel.hpp"

namespace qwalk {
namespace {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 finaliser over (seed, stream)
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

RealVector ExperimentModel::probabilities(double gamma) const {
    return povm.probabilities(evolve(spec, gamma, prep, t).state);
}

Histogram sample_outcomes(const RealVector& probs, std::uint64_t shots, std::uint64_t seed) {
    if (shots < 1) throw DomainError("need at least one shot");
    if (probs.size() == 0 || (probs.array() < -1e-15).any()) throw DomainError("invalid outcome distribution");
    std::mt19937_64 rng(seed);
    Histogram counts(static_cast<std::size_t>(probs.size()), 0);
    // Multinomial as a chain of conditional binomials.
    double remaining_mass = probs.cwiseMax(0.0).sum();
    std::uint64_t remaining = shots;
    for (Eigen::Index k = 0; k < probs.size() && remaining > 0; ++k) {
        const double pk = std::max(0.0, probs(k));
        if (k == probs.size() - 1) {
            counts[static_cast<std::size_t>(k)] = remaining;
            break;
        }
        const double cond = remaining_mass > 0.0 ? std::clamp(pk / remaining_mass, 0.0, 1.0) : 0.0;
        std::binomial_distribution<std::uint64_t> draw(remaining, cond);
        const std::uint64_t c = cond >= 1.0 ? remaining : draw(rng);
        counts[static_cast<std::size_t>(k)] = c;
        remaining -= c;
        remaining_mass -= pk;
    }
    return counts;
}

Histogram sample_outcomes(const ExperimentModel& model, double gamma_true, std::uint64_t shots, std::uint64_t seed) {
    return sample_outcomes(model.probabilities(gamma_true), shots, seed);
}

double log_likelihood(const Histogram& counts, const ExperimentModel& model, double gamma) {
    const RealVector p = model.probabilities(gamma);
    if (static_cast<std::size_t>(p.size()) != counts.size()) throw DomainError("histogram and POVM sizes differ");
    double ll = 0.0;
    for (std::size_t k = 0; k < counts.size(); ++k) {
        if (counts[k] == 0) continue;
        const double pk = p(static_cast<Eigen::Index>(k));
        if (pk <= 0.0) return -std::numeric_limits<double>::infinity();
        ll += double(counts[k]) * std::log(pk);
    }
    return ll;
}

double mle(const Histogram& counts, const ExperimentModel& model, Bracket bracket) {
    if (!(bracket.lo > 0.0) || !(bracket.hi > bracket.lo)) throw DomainError("bracket must satisfy 0 < lo < hi");
    const std::size_t n = kMleGridPoints;
    std::vector<double> grid(n), ll(n);
    for (std::size_t k = 0; k < n; ++k) {
        grid[k] = bracket.lo + (bracket.hi - bracket.lo) * double(k) / double(n - 1);
        ll[k] = log_likelihood(counts, model, grid[k]);
    }
    const auto [lo_it, hi_it] = std::minmax_element(ll.begin(), ll.end());
    if (std::isfinite(*lo_it) && *hi_it - *lo_it < 1e-12) {
        throw UnidentifiableError("likelihood is flat across the bracket");
    }
    if (!std::isfinite(*hi_it)) throw UnidentifiableError("data impossible for every gamma in the bracket");
    const std::size_t best = static_cast<std::size_t>(std::distance(ll.begin(), hi_it));

    double a = grid[best == 0 ? 0 : best - 1];
    double b = grid[best + 1 == n ? n - 1 : best + 1];
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - ratio * (b - a);
    double d = a + ratio * (b - a);
    double fc = log_likelihood(counts, model, c);
    double fd = log_likelihood(counts, model, d);
    for (int it = 0; it < 200 && (b - a) > 1e-13 * std::max(1.0, std::abs(a)); ++it) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = log_likelihood(counts, model, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = log_likelihood(counts, model, d);
        }
    }
    const double refined = 0.5 * (a + b);
    // Keep the grid point if refinement somehow lost ground (e.g. at a bracket edge).
    return log_likelihood(counts, model, refined) >= ll[best] ? refined : grid[best];
}

ExperimentSummary run_experiment(const ExperimentModel& model, const ExperimentConfig& cfg) {
    if (cfg.repetitions < 2) throw DomainError("need at least two repetitions for a sample variance");
    if (!(cfg.gamma_true >= cfg.bracket.lo && cfg.gamma_true <= cfg.bracket.hi)) {
        throw DomainError("bracket must contain gamma_true");
    }
    ExperimentSummary out;
    out.estimates.assign(cfg.repetitions, 0.0);
    const RealVector truth = model.probabilities(cfg.gamma_true);
    parallel_for(
        cfg.repetitions,
        [&](std::size_t r) {
            const Histogram h = sample_outcomes(truth, cfg.shots, derive_seed(cfg.seed, r));
            out.estimates[r] = mle(h, model, cfg.bracket);
        },
        cfg.workers);

    const double reps = double(cfg.repetitions);
    out.mean = std::accumulate(out.estimates.begin(), out.estimates.end(), 0.0) / reps;
    double ss = 0.0;
    for (double g : out.estimates) ss += (g - out.mean) * (g - out.mean);
    out.variance = ss / (reps - 1.0);
    out.standard_error = std::sqrt(out.variance / reps);

    const EstimationReport report = estimation_report(model.spec, cfg.gamma_true, model.prep, model.t, model.povm,
                                                      static_cast<std::size_t>(cfg.shots));
    out.fi = report.fi.value;
    out.qfi = report.qfi;
    out.crb = report.bounds.crb;
    out.qcrb = report.bounds.qcrb;
    out.efficiency_empirical = out.variance > 0.0 ? out.crb / out.variance : 0.0;
    return out;
}

}  // namespace qwalk
