#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "specbound/errors.hpp"
#include "specbound/graph.hpp"

using namespace specbound;

TEST_CASE("generators produce the expected shapes") {
    const Graph p2 = generate(Family::path, {2});
    CHECK(p2.num_vertices() == 2);
    CHECK(p2.num_edges() == 1);
    CHECK(p2.max_degree() == 1);

    const Graph g3 = generate(Family::grid, {3});
    CHECK(g3.num_vertices() == 9);
    CHECK(g3.num_edges() == 12);

    const Graph k5 = generate(Family::complete, {5});
    CHECK(k5.num_edges() == 10);
    CHECK(k5.max_degree() == 4);

    const Graph c7 = generate(Family::cycle, {7});
    CHECK(c7.num_edges() == 7);
    CHECK(c7.max_degree() == 2);

    const Graph t4 = generate(Family::torus, {4});
    CHECK(t4.num_vertices() == 16);
    CHECK(t4.num_edges() == 32);
    CHECK(t4.max_degree() == 4);

    const Graph rect = generate(Family::grid, {2, 5});
    CHECK(rect.num_vertices() == 10);
    CHECK(rect.num_edges() == 13);

    const Graph s6 = generate(Family::star, {6});
    CHECK(s6.num_vertices() == 6);
    CHECK(s6.num_edges() == 5);
    CHECK(s6.degree(0) == 5);
}

TEST_CASE("triangulated disks are connected planar-sized and deterministic") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        for (std::size_t n : {3u, 4u, 7u, 12u, 30u}) {
            const Graph g = generate(Family::triangulated_disk, {n}, seed);
            CHECK(g.num_vertices() == n);
            CHECK(g.is_connected());
            CHECK(g.num_edges() <= 3 * n - 6);
            const Graph again = generate(Family::triangulated_disk, {n}, seed);
            CHECK(again.edges() == g.edges());
        }
    }
}

TEST_CASE("generator rejects bad sizes") {
    CHECK_THROWS_AS(generate(Family::grid, {0}), ValidationError);
    CHECK_THROWS_AS(generate(Family::cycle, {2}), ValidationError);
    CHECK_THROWS_AS(generate(Family::torus, {2}), ValidationError);
    CHECK_THROWS_AS(generate(Family::grid, {2, 2, 2}), ValidationError);
    CHECK_THROWS_AS(parse_family("hypercube"), ValidationError);
    CHECK(parse_family("triangulated_disk") == Family::triangulated_disk);
}

TEST_CASE("graph construction validates edges") {
    CHECK_THROWS_AS(Graph(3, {{0, 0}}), ValidationError);
    CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), ValidationError);
    CHECK_THROWS_AS(Graph(3, {{0, 3}}), ValidationError);
    const Graph g(4, {{2, 1}, {0, 1}});
    CHECK(g.adjacent(1, 2));
    CHECK(g.adjacent(2, 1));
    CHECK_FALSE(g.adjacent(0, 2));
    CHECK_FALSE(g.is_connected());
    for (Vertex v = 0; v < g.num_vertices(); ++v)
        for (Vertex u : g.neighbors(v)) CHECK(g.adjacent(u, v));
}

TEST_CASE("max degree matches adjacency") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Graph g = oracle::random_connected_graph(12, 0.3, seed);
        std::size_t d = 0;
        for (Vertex v = 0; v < g.num_vertices(); ++v) d = std::max(d, g.neighbors(v).size());
        CHECK(g.max_degree() == d);
    }
}

TEST_CASE("laplacian examples and row sums") {
    const DenseMatrix e = laplacian(generate(Family::path, {2}));
    CHECK(e(0, 0) == 1.0);
    CHECK(e(0, 1) == -1.0);
    CHECK(e(1, 0) == -1.0);
    CHECK(e(1, 1) == 1.0);

    const DenseMatrix t = laplacian(generate(Family::complete, {3}));
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(t(i, j) == (i == j ? 2.0 : -1.0));

    for (Family f : {Family::path, Family::cycle, Family::grid, Family::torus, Family::star, Family::complete,
                     Family::triangulated_disk}) {
        const DenseMatrix l = laplacian(generate(f, {5}, 3));
        for (std::size_t i = 0; i < l.rows(); ++i) {
            double s = 0.0;
            for (double x : l.row(i)) s += x;
            CHECK(s == 0.0);
        }
    }
}

TEST_CASE("laplacian quadratic form equals the edge energy") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> normal;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Graph g = oracle::random_connected_graph(15, 0.2, seed);
        const DenseMatrix l = laplacian(g);
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<double> f(g.num_vertices());
            for (double& x : f) x = normal(rng);
            const auto lf = l.multiply(f);
            double quad = 0.0;
            for (std::size_t i = 0; i < f.size(); ++i) quad += f[i] * lf[i];
            double energy = 0.0;
            for (const Edge& e : g.edges()) energy += (f[e.u] - f[e.v]) * (f[e.u] - f[e.v]);
            CHECK(quad == doctest::Approx(energy).epsilon(1e-10));
        }
    }
}

TEST_CASE("neighborhood examples and monotonicity") {
    const Graph p3 = generate(Family::path, {3});
    CHECK(neighborhood(p3, std::vector<Vertex>{}).empty());
    CHECK(neighborhood(p3, std::vector<Vertex>{0, 1, 2}) == std::vector<Vertex>{0, 1, 2});
    CHECK(neighborhood(p3, std::vector<Vertex>{0}) == std::vector<Vertex>{0, 1});

    const Graph g = generate(Family::grid, {4});
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Vertex> t;
        for (Vertex v = 0; v < 16; ++v)
            if (rng() % 3 == 0) t.push_back(v);
        std::vector<Vertex> s;
        for (Vertex v : t)
            if (rng() % 2 == 0) s.push_back(v);
        const auto ns = neighborhood(g, s);
        const auto nt = neighborhood(g, t);
        CHECK(std::includes(nt.begin(), nt.end(), ns.begin(), ns.end()));
    }
}

TEST_CASE("weighting validation and normalization") {
    CHECK_THROWS_AS(VertexWeighting({1.0, -0.5}), ValidationError);
    CHECK_THROWS_AS(VertexWeighting({1.0, std::nan("")}), ValidationError);
    const VertexWeighting u = VertexWeighting::uniform(9);
    CHECK(u.is_normalized());
    CHECK(u[0] == doctest::Approx(1.0 / 3.0));
    const VertexWeighting w({3.0, 4.0});
    CHECK(w.l2_norm() == doctest::Approx(5.0));
    const auto nw = w.normalized();
    CHECK(nw.is_normalized());
    CHECK(nw[0] == doctest::Approx(0.6));
    CHECK_THROWS_AS(VertexWeighting({0.0, 0.0}).normalized(), ValidationError);
}

TEST_CASE("graph and weighting text round trip") {
    const Graph g = generate(Family::triangulated_disk, {10}, 4);
    std::stringstream buffer;
    write_graph(buffer, g);
    const Graph back = read_graph(buffer);
    CHECK(back.num_vertices() == g.num_vertices());
    CHECK(back.edges() == g.edges());

    const VertexWeighting w({0.1, 0.2, 0.30000000000000004});
    std::stringstream wb;
    write_weighting(wb, w);
    const auto wback = read_weighting(wb, 3);
    CHECK(wback.values() == w.values());
}

TEST_CASE("graph reader names the offending line") {
    std::stringstream bad("3 2\n0 1\n1 x\n");
    try {
        read_graph(bad);
        FAIL("expected a validation error");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    std::stringstream short_file("3 2\n0 1\n");
    CHECK_THROWS_AS(read_graph(short_file), ValidationError);
    std::stringstream wrong_count("0.5\n");
    CHECK_THROWS_AS(read_weighting(wrong_count, 2), ValidationError);
}
