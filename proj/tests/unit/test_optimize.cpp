#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "qwalk/metrology.hpp"
#include "qwalk/optimize.hpp"
#include "../support/oracles.hpp"

using namespace qwalk;

TEST_CASE("closed-form maxima") {
    CHECK(max_qfi_value(GraphSpec::complete(5), 0.8, 2.0) == doctest::Approx(100.0));
    const double c7 = 4 * std::pow(1 + std::cos(kPi / 7), 2);
    CHECK(c7 == doctest::Approx(14.4547).epsilon(1e-5));
    CHECK(max_qfi_value(GraphSpec::cycle(7), 0.8, 1.0) == doctest::Approx(c7));
    CHECK(max_qfi_value(GraphSpec::hypercube(4), 0.8, 0.5) == doctest::Approx(16.0));
    CHECK(max_qfi_value(GraphSpec::cycle(10), 0.3, 1.5) == doctest::Approx(36.0));
    CHECK(max_qfi_value(GraphSpec::star(4), 1.0, 1.0) == doctest::Approx(9.1875));
}

TEST_CASE("realised optimal preparations reproduce the maximum") {
    std::vector<GraphSpec> graphs;
    for (std::size_t n = 2; n <= 12; ++n) graphs.push_back(GraphSpec::complete(n));
    for (std::size_t n = 3; n <= 14; ++n) graphs.push_back(GraphSpec::cycle(n));
    for (std::size_t d = 1; d <= 6; ++d) graphs.push_back(GraphSpec::hypercube(d));
    for (auto [p, q] : std::vector<std::pair<int, int>>{{1, 1}, {1, 3}, {2, 3}, {3, 3}, {5, 7}})
        graphs.push_back(GraphSpec::complete_bipartite(p, q));
    graphs.push_back(GraphSpec::circulant(9, {1.0, 0.3, 0.0, 0.7}));
    graphs.push_back(GraphSpec::circulant(8, {0.2, 1.0, 0.0, 0.5}));
    for (const auto& g : graphs) {
        for (double gamma : {0.4, 1.3}) {
            for (double t : {0.5, 2.0}) {
                CAPTURE(g.to_json());
                const auto opt = max_qfi(g, gamma, t);
                CHECK(opt.preparation.amplitudes().norm() == doctest::Approx(1.0).epsilon(1e-14));
                CHECK(qfi_pure(evolve(g, gamma, opt.preparation, t)) == doctest::Approx(opt.max_qfi).epsilon(1e-8));
                CHECK(opt.max_qfi == doctest::Approx(max_qfi_value(g, gamma, t)).epsilon(1e-12));
            }
        }
    }
    const auto odd = max_qfi(GraphSpec::cycle(7), 1.0, 1.0);
    CHECK(odd.lower_label == "j=0");
    CHECK((odd.upper_label == "j=3" || odd.upper_label == "j=4"));
}

TEST_CASE("odd-cycle maximum agrees with an exhaustive balanced-pair search") {
    for (std::size_t n : {3u, 5u, 7u, 9u}) {
        const auto g = GraphSpec::cycle(n);
        const auto k = static_cast<Eigen::Index>(n);
        double best = 0.0;
        for (Eigen::Index a = 0; a < k; ++a)
            for (Eigen::Index b = a + 1; b < k; ++b)
                best = std::max(best, qfi_pure(evolve(g, 0.9, Preparation::energy_superposition(k, a, b), 1.0)));
        CHECK(best == doctest::Approx(4 * std::pow(1 + std::cos(kPi / double(n)), 2)).epsilon(1e-10));
    }
}

TEST_CASE("numeric preparation search") {
    PrepSearchOptions opts;
    opts.restarts = 40;
    const auto k4 = numeric_prep_search(GraphSpec::complete(4), 0.5, 1.0, opts);
    CHECK(k4.qfi >= 15.998);
    CHECK(k4.qfi <= 16.0 + 1e-9);
    CHECK(qfi_pure(evolve(GraphSpec::complete(4), 0.5, k4.preparation, 1.0)) == doctest::Approx(k4.qfi));
    const auto y3 = numeric_prep_search(GraphSpec::hypercube(3), 1.0, 1.0, opts);
    CHECK(y3.qfi >= 35.996);
    CHECK(y3.qfi <= 36.0 + 1e-9);
    const auto s4 = numeric_prep_search(GraphSpec::star(4), 1.0, 1.0, opts);
    CHECK(s4.qfi >= 9.1866);
    CHECK(s4.qfi <= 9.1875 + 1e-9);

    // deterministic for a fixed seed, independent of the worker count
    opts.restarts = 8;
    opts.workers = 1;
    const auto a = numeric_prep_search(GraphSpec::cycle(6), 0.7, 1.3, opts);
    opts.workers = 3;
    const auto b = numeric_prep_search(GraphSpec::cycle(6), 0.7, 1.3, opts);
    CHECK(a.qfi == b.qfi);
    CHECK(a.preparation.amplitudes() == b.preparation.amplitudes());
    CHECK(a.qfi <= 16 * 1.3 * 1.3 + 1e-9);

    CHECK_THROWS_AS(numeric_prep_search(GraphSpec::cycle(65), 1.0, 1.0), DomainError);
}

TEST_CASE("maximum efficiency over time") {
    for (std::size_t n : {3u, 4u, 8u, 16u}) {
        CHECK(complete_max_efficiency(n, 1) == doctest::Approx(2.0 / double(n)));
        CHECK(complete_max_efficiency(n, n) == doctest::Approx(1.0));
        CHECK(complete_max_efficiency_grid(n, 1) == doctest::Approx(2.0 / double(n)).epsilon(1e-3));
        for (std::size_t m = 1; m < n; ++m) {
            CHECK(complete_max_efficiency(n, m) <= 2.0 * double(m) / double(n) + 1e-12);
            CHECK(std::abs(complete_max_efficiency_grid(n, m) - complete_max_efficiency(n, m)) < 1e-3);
        }
    }
    CHECK(cycle_max_efficiency(0.6, 0.3) == 0.6);
    CHECK(cycle_max_efficiency_grid(0.6, 0.3) == doctest::Approx(0.6).epsilon(1e-3));
    CHECK(cycle_max_efficiency_grid(0.2, 0.9) == doctest::Approx(0.9).epsilon(1e-3));
}

TEST_CASE("optimal bipartition") {
    CHECK(optimal_bipartition(10) == 5);
    CHECK(optimal_bipartition(7) == 3);
    CHECK(optimal_bipartition(2) == 1);
    for (std::size_t n = 2; n <= 24; ++n) {
        for (double gamma : {0.3, 1.0, 2.5}) {
            for (double gt : {0.5, 1.0, 3.0, 10.0}) {
                CHECK(bipartition_scan(n, gamma, gt / gamma) == optimal_bipartition(n));
            }
        }
    }
    // at very short times the unbalanced split wins
    CHECK(bipartition_scan(10, 1.0, 0.01) < optimal_bipartition(10));
}

TEST_CASE("star node-count optimum") {
    const auto small = star_n_opt(1.0, TimeRegime::SmallTime);
    REQUIRE(small.value);
    CHECK(*small.value == doctest::Approx(2 * (2 + std::sqrt(2.0))));
    CHECK(star_grid_scan(1.0, 0.01, 200).argmax == 7);

    const auto large = star_n_opt(0.5, TimeRegime::LargeTime);
    REQUIRE(large.value);
    CHECK(*large.value == doctest::Approx(3.0));
    CHECK(star_grid_scan(0.5, 200.0, 200).argmax == 3);

    const auto unb = star_n_opt(1.0, TimeRegime::LargeTime);
    CHECK(unb.unbounded);
    CHECK_FALSE(unb.value);
    const auto scan = star_grid_scan(1.0, 100.0, 1000);
    CHECK(scan.nondecreasing);

    const auto edge = star_n_opt(1 / std::sqrt(2.0), TimeRegime::LargeTime);
    CHECK(edge.boundary);

    for (double gamma : {0.4, 0.6, 0.8, 1.0, 1.5}) {
        const auto s = star_n_opt(gamma, TimeRegime::SmallTime);
        REQUIRE(s.value);
        const auto grid = star_grid_scan(gamma, 0.01 / gamma, 400);
        CHECK(std::abs(double(grid.argmax) - std::round(*s.value)) <= 1.0);
    }
    for (double gamma : {0.3, 0.5, 0.6}) {
        const auto l = star_n_opt(gamma, TimeRegime::LargeTime);
        REQUIRE(l.value);
        const auto grid = star_grid_scan(gamma, 100 / gamma, 400);
        CHECK(std::abs(double(grid.argmax) - std::round(*l.value)) <= 1.0);
    }
    CHECK(star_max_qfi(4, 1.0, 1.0) == doctest::Approx(9.1875));
}

TEST_CASE("random preparations stay under the Popoviciu ceiling") {
    std::mt19937_64 rng(53);
    for (int rep = 0; rep < 100; ++rep) {
        const double gamma = 0.3 + 0.02 * rep, t = 0.05 * rep;
        const auto kp = oracle::random_preparation(9, rng);
        CHECK(qfi_pure(evolve(GraphSpec::complete(9), gamma, kp, t)) <= 81 * t * t + 1e-9);
        const auto cp = oracle::random_preparation(8, rng);
        CHECK(qfi_pure(evolve(GraphSpec::cycle(8), gamma, cp, t)) <= 16 * t * t + 1e-9);
        const auto hp = oracle::random_preparation(16, rng, Basis::Position);
        CHECK(qfi_pure(evolve(GraphSpec::hypercube(4), gamma, hp, t)) <= 64 * t * t + 1e-9);
    }
}
