#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "specbound/duality.hpp"
#include "specbound/errors.hpp"

using namespace specbound;

namespace {

VertexWeighting random_weighting(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> w(n);
    for (double& x : w) x = u(rng);
    return VertexWeighting(w);
}

}  // namespace

TEST_CASE("epsilon examples") {
    const Graph p3 = generate(Family::path, {3});
    const auto a = epsilon_r(p3, VertexWeighting({1, 1, 1}), 2);
    CHECK(a.epsilon == doctest::Approx(1.0 / (2.0 * std::sqrt(3.0))).epsilon(1e-12));
    CHECK(a.witness_set == std::vector<Vertex>{0, 1});

    const Graph e = generate(Family::path, {2});
    const auto b = epsilon_r(e, VertexWeighting({1 / std::sqrt(2.0), 1 / std::sqrt(2.0)}), 2);
    CHECK(b.epsilon == doctest::Approx(std::sqrt(2.0) / 4.0).epsilon(1e-12));

    CHECK_THROWS_AS(epsilon_r(p3, VertexWeighting({0, 0, 0}), 2), ValidationError);
    CHECK_THROWS_AS(epsilon_r(p3, VertexWeighting::uniform(3), 1), ValidationError);
    CHECK_THROWS_AS(epsilon_r(p3, VertexWeighting::uniform(3), 4), ValidationError);
}

TEST_CASE("pair-sized epsilon is a quarter of the closest pair") {
    std::mt19937_64 rng(2);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Graph g = generate(Family::triangulated_disk, {12}, seed);
        const auto w = random_weighting(12, rng);
        const MetricOracle m(g, w);
        double closest = oracle::kInf;
        for (Vertex u = 0; u < 12; ++u)
            for (Vertex v = u + 1; v < 12; ++v) closest = std::min(closest, m.distance(u, v));
        CHECK(epsilon_r(g, w, 2).epsilon == doctest::Approx(closest / (4.0 * w.l2_norm())).epsilon(1e-12));
    }
}

TEST_CASE("exact subset search agrees with enumeration") {
    std::mt19937_64 rng(3);
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        const Graph g = oracle::random_connected_graph(8, 0.2, seed);
        const auto w = random_weighting(8, rng);
        for (std::size_t r = 2; r <= 5; ++r) {
            const auto cert = epsilon_r(g, w, r);
            CHECK(cert.mode == SolveMode::exact);
            CHECK(cert.epsilon == doctest::Approx(oracle::brute_epsilon(g, w.values(), r)).epsilon(1e-12));
            CHECK(cert.witness_set.size() == r);
            CHECK(cert.weights.is_normalized());
        }
    }
}

TEST_CASE("epsilon is scale invariant") {
    std::mt19937_64 rng(4);
    const Graph g = generate(Family::grid, {4});
    for (int trial = 0; trial < 10; ++trial) {
        const auto w = random_weighting(16, rng);
        std::vector<double> scaled = w.values();
        for (double& x : scaled) x *= 37.5;
        CHECK(epsilon_r(g, w, 4).epsilon == doctest::Approx(epsilon_r(g, VertexWeighting(scaled), 4).epsilon)
                                                .epsilon(1e-12));
    }
}

TEST_CASE("heuristic search returns a feasible upper estimate") {
    std::mt19937_64 rng(5);
    const Graph g = generate(Family::grid, {4});
    const auto w = random_weighting(16, rng);
    SubsetSearchOptions heuristic;
    heuristic.exact_limit = 1.0;
    const MetricOracle m(g, w);
    for (std::size_t r = 2; r <= 6; ++r) {
        const auto exact = min_spread_subset(m, r);
        const auto guess = min_spread_subset(m, r, heuristic);
        CHECK(guess.mode == SolveMode::heuristic);
        CHECK(guess.set.size() == r);
        double sum = 0.0;
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = i + 1; j < r; ++j) sum += m.distance(guess.set[i], guess.set[j]);
        CHECK(guess.pair_sum == doctest::Approx(sum).epsilon(1e-12));
        CHECK(exact.pair_sum <= guess.pair_sum + 1e-12);
    }
    CHECK(binomial(10, 3) == 120.0);
    CHECK(binomial(5, 0) == 1.0);
}

TEST_CASE("primal on a single edge reaches the closed-form optimum") {
    const Graph e = generate(Family::path, {2});
    // One-parameter oracle: ω = (a, √(1-a²)), ε(a) = (a + √(1-a²))/4.
    double best = 0.0;
    for (int i = 0; i <= 100000; ++i) {
        const double a = i / 100000.0;
        best = std::max(best, (a + std::sqrt(1 - a * a)) / 4.0);
    }
    CHECK(best == doctest::Approx(std::sqrt(2.0) / 4.0).epsilon(1e-9));
    const auto cert = primal_max_spread(e, 2);
    CHECK(cert.epsilon == doctest::Approx(best).epsilon(1e-3));
    CHECK(cert.weights[0] == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-2));
}

TEST_CASE("primal on K4 is uniform and locally optimal") {
    const Graph k4 = generate(Family::complete, {4});
    const auto cert = primal_max_spread(k4, 2);
    for (Vertex v = 0; v < 4; ++v) CHECK(cert.weights[v] == doctest::Approx(0.5).epsilon(1e-2));
    CHECK(cert.epsilon == doctest::Approx(0.25).epsilon(1e-3));
    std::mt19937_64 rng(6);
    std::normal_distribution<double> normal(0.0, 0.05);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> w = cert.weights.values();
        for (double& x : w) x = std::max(0.0, x + normal(rng));
        CHECK(epsilon_r(k4, VertexWeighting(w), 2).epsilon <= cert.epsilon + 1e-3);
    }
}

TEST_CASE("primal output is feasible and beats uniform weights") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Graph g = generate(Family::triangulated_disk, {9}, seed);
        for (std::size_t r : {2u, 3u, 4u}) {
            const auto cert = primal_max_spread(g, r);
            CHECK(cert.weights.is_normalized(1e-9));
            CHECK(cert.epsilon == doctest::Approx(epsilon_r(g, cert.weights, r).epsilon).epsilon(1e-9));
            CHECK(cert.epsilon >= epsilon_r(g, VertexWeighting::uniform(9), r).epsilon - 1e-12);
        }
    }
}

TEST_CASE("dual examples") {
    const auto edge = dual_min_congestion(generate(Family::path, {2}), 2);
    CHECK(edge.congestion == doctest::Approx(2.0));
    CHECK(edge.dual_value == doctest::Approx(std::sqrt(2.0) / 4.0));
    CHECK(validate_mu_flow(edge.flow, edge.mu, 1e-6).valid);

    // Tree: the routing of the three demands is forced, loads (2, 3, 2).
    const Graph p3 = generate(Family::path, {3});
    const auto tree = dual_min_congestion(p3, 3);
    Flow forced;
    forced.add(Path(oracle::simple_paths(p3, 0, 1).front()), 1.0);
    forced.add(Path(oracle::simple_paths(p3, 1, 2).front()), 1.0);
    forced.add(Path(oracle::simple_paths(p3, 0, 2).front()), 1.0);
    CHECK(congestion(forced) == 17.0);
    CHECK(tree.congestion == doctest::Approx(17.0));
    CHECK(tree.dual_value == doctest::Approx(std::sqrt(17.0) / 9.0));
}

TEST_CASE("dual outputs are valid mu-flows") {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const Graph g = generate(Family::triangulated_disk, {8}, seed);
        for (std::size_t r : {2u, 3u, 4u}) {
            const auto sol = dual_min_congestion(g, r);
            CHECK(sol.mu.all_of_size(r));
            CHECK(validate_mu_flow(sol.flow, sol.mu, 1e-6).valid);
            sol.flow.validate(g);
            CHECK(sol.congestion == doctest::Approx(congestion(sol.flow)).epsilon(1e-9));
            CHECK(sol.dual_value == doctest::Approx(std::sqrt(sol.congestion) / double(r * r)).epsilon(1e-12));
            CHECK(sol.lower_bound <= sol.dual_value + 1e-12);
        }
    }
}

TEST_CASE("weak duality between arbitrary feasible points") {
    std::mt19937_64 rng(7);
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const Graph g = generate(Family::grid, {3});
        for (std::size_t r : {2u, 3u, 5u}) {
            SolverOptions loose;
            loose.max_iterations = 5 + seed;
            const auto sol = dual_min_congestion(g, r, loose);
            for (int trial = 0; trial < 20; ++trial)
                CHECK(epsilon_r(g, random_weighting(9, rng), r).epsilon <= sol.dual_value + 1e-12);
        }
    }
}

TEST_CASE("duality gap on enumerable instances") {
    const auto edge = duality_gap(generate(Family::path, {2}), 2);
    CHECK(edge.gap <= 1e-6);
    CHECK(edge.epsilon == doctest::Approx(std::sqrt(2.0) / 4.0).epsilon(1e-6));

    const auto k4 = duality_gap(generate(Family::complete, {4}), 2);
    CHECK(k4.gap <= 1e-2);
    CHECK(k4.dual_value == doctest::Approx(0.25).epsilon(1e-3));

    const auto p3 = duality_gap(generate(Family::path, {3}), 3);
    CHECK(p3.gap <= 1e-2);
    CHECK(p3.dual_value == doctest::Approx(std::sqrt(17.0) / 9.0).epsilon(1e-3));

    // Cycle, r = 2: ε* = 1/(2√n) from uniform weights (adjacent pair, 2/√n).
    const auto c6 = duality_gap(generate(Family::cycle, {6}), 2);
    CHECK(c6.gap <= 1e-2);
    CHECK(c6.epsilon == doctest::Approx(1.0 / (2.0 * std::sqrt(6.0))).epsilon(1e-3));

    const std::string json = to_json(c6);
    CHECK(json.find("\"mode\": \"exact\"") != std::string::npos);
    CHECK(json.find("\"dual_value\"") != std::string::npos);
}

TEST_CASE("disconnected hosts are rejected") {
    const Graph g(4, {{0, 1}, {2, 3}});
    CHECK_THROWS_AS(primal_max_spread(g, 2), ValidationError);
    CHECK_THROWS_AS(dual_min_congestion(g, 2), ValidationError);
}
