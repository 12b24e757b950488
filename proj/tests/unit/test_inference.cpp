#include <doctest.h>

#include <cmath>
#include <numeric>

#include "qwalk/inference.hpp"
#include "qwalk/optimize.hpp"

using namespace qwalk;

namespace {

ExperimentModel complete8() {
    const auto g = GraphSpec::complete(8);
    return {g, Preparation::energy_superposition(8, 0, 1), PositionPovm::complete(8), kPi / 8};
}

}  // namespace

TEST_CASE("sampling basics") {
    RealVector p(4);
    p << 0.1, 0.2, 0.3, 0.4;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto h = sample_outcomes(p, 1, seed);
        CHECK(std::accumulate(h.begin(), h.end(), std::uint64_t{0}) == 1);
        CHECK(std::count(h.begin(), h.end(), std::uint64_t{1}) == 1);
    }
    RealVector d = RealVector::Zero(3);
    d(2) = 1.0;
    CHECK(sample_outcomes(d, 12345, 9) == Histogram{0, 0, 12345});
    CHECK(sample_outcomes(p, 1000, 5) == sample_outcomes(p, 1000, 5));
    CHECK(sample_outcomes(p, 1000, 5) != sample_outcomes(p, 1000, 6));
}

TEST_CASE("cycle of four frequencies at gamma t = pi/8") {
    const auto g = GraphSpec::cycle(4);
    const ExperimentModel model{g, Preparation::energy_superposition(4, 0, 3), PositionPovm::complete(4), 1.0};
    const double gamma = kPi / 8;
    const std::uint64_t n = 1000000;
    const auto h = sample_outcomes(model, gamma, n, 2024);
    const double sigma = std::sqrt(double(n) * 0.25 * 0.75);
    for (auto c : h) CHECK(std::abs(double(c) - 0.25 * double(n)) < 3 * sigma);
}

TEST_CASE("MLE self-consistency and errors") {
    const auto model = complete8();
    const double gamma = 0.5;
    const RealVector p = model.probabilities(gamma);
    const std::uint64_t scale = 1000000000;
    Histogram h(static_cast<std::size_t>(p.size()));
    for (Eigen::Index k = 0; k < p.size(); ++k) h[static_cast<std::size_t>(k)] = std::llround(p(k) * double(scale));
    const double est = mle(h, model, {0.1, 0.9});
    CHECK(std::abs(est - gamma) < 0.8 / double(kMleGridPoints));

    // a uniform position prep on K_n never moves, so gamma is invisible
    const ExperimentModel flat{GraphSpec::complete(5), Preparation::uniform_position(5), PositionPovm::complete(5), 1.0};
    CHECK_THROWS_AS(mle(Histogram{10, 10, 10, 10, 10}, flat, {0.2, 2.0}), UnidentifiableError);
    CHECK_THROWS_AS(mle(h, model, {0.9, 0.1}), DomainError);
    CHECK_THROWS_AS(mle(Histogram{1, 2}, model, {0.1, 0.9}), DomainError);
}

TEST_CASE("Monte-Carlo estimator is unbiased and reproducible") {
    const auto model = complete8();
    ExperimentConfig cfg;
    cfg.gamma_true = 0.5;
    cfg.shots = 2000;
    cfg.repetitions = 40;
    cfg.seed = 7;
    cfg.bracket = {0.1, 0.9};
    cfg.workers = 1;
    const auto a = run_experiment(model, cfg);
    cfg.workers = 3;
    const auto b = run_experiment(model, cfg);
    CHECK(a.estimates == b.estimates);
    CHECK(a.mean == b.mean);
    CHECK(a.estimates.size() == 40);
    CHECK(std::abs(a.mean - 0.5) < 4 * a.standard_error);
    CHECK(a.fi == doctest::Approx(kPi * kPi).epsilon(1e-10));
    CHECK(a.qfi == doctest::Approx(kPi * kPi).epsilon(1e-10));
    CHECK(a.crb == doctest::Approx(1 / (2000 * kPi * kPi)));
    CHECK(a.efficiency_empirical == doctest::Approx(a.crb / a.variance));
    for (double e : a.estimates) {
        CHECK(e >= 0.1);
        CHECK(e <= 0.9);
    }
    cfg.seed = 8;
    CHECK(run_experiment(model, cfg).estimates != a.estimates);
}
