#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "specbound/errors.hpp"
#include "specbound/spectral.hpp"

using namespace specbound;

namespace {

void check_spectrum(const std::vector<double>& got, const std::vector<double>& expected, double tol) {
    REQUIRE(got.size() == expected.size());
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(std::abs(got[i] - expected[i]) <= tol);
}

double frobenius(const DenseMatrix& m) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (double x : m.row(i)) s += x * x;
    return std::sqrt(s);
}

}  // namespace

TEST_CASE("small closed spectra") {
    check_spectrum(eig_symmetric(laplacian(generate(Family::path, {2}))).eigenvalues, {0, 2}, 1e-12);
    check_spectrum(eig_symmetric(laplacian(generate(Family::cycle, {4}))).eigenvalues, oracle::cycle_spectrum(4),
                   1e-9);
    check_spectrum(eig_symmetric(laplacian(generate(Family::cycle, {4}))).eigenvalues, {0, 2, 2, 4}, 1e-9);
    check_spectrum(eig_symmetric(laplacian(generate(Family::complete, {3}))).eigenvalues, {0, 3, 3}, 1e-9);
}

TEST_CASE("characteristic polynomial cross-checks the closed forms") {
    // K3: det(xI - L) = x(x-3)²
    const auto k3 = oracle::characteristic_polynomial(laplacian(generate(Family::complete, {3})));
    CHECK(k3[0] == doctest::Approx(0.0));
    CHECK(k3[1] == doctest::Approx(9.0));
    CHECK(k3[2] == doctest::Approx(-6.0));
    CHECK(k3[3] == doctest::Approx(1.0));

    // Paths up to 6 have simple spectra, so every root is a sign change.
    for (std::size_t n = 2; n <= 6; ++n) {
        const auto poly = oracle::characteristic_polynomial(laplacian(generate(Family::path, {n})));
        auto roots = oracle::real_roots(poly, -0.5123, 4.4877, 20000);
        REQUIRE(roots.size() == n);
        check_spectrum(roots, oracle::path_spectrum(n), 1e-9);
    }
}

TEST_CASE("path, cycle and grid spectra match their closed forms") {
    for (std::size_t n : {4u, 16u, 64u}) {
        check_spectrum(eig_symmetric(laplacian(generate(Family::path, {n}))).eigenvalues, oracle::path_spectrum(n),
                       1e-8);
        check_spectrum(eig_symmetric(laplacian(generate(Family::cycle, {n}))).eigenvalues, oracle::cycle_spectrum(n),
                       1e-8);
    }
    check_spectrum(eig_symmetric(laplacian(generate(Family::grid, {6}))).eigenvalues, oracle::grid_spectrum(6), 1e-8);
}

TEST_CASE("eigenvectors are orthonormal with small residuals") {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const Graph g = generate(Family::triangulated_disk, {25}, seed);
        const DenseMatrix l = laplacian(g);
        const Spectrum s = eig_symmetric(l, true);
        REQUIRE(s.eigenvectors.has_value());
        const DenseMatrix& v = *s.eigenvectors;
        const std::size_t n = l.rows();
        CHECK(std::abs(s.eigenvalues[0]) <= 1e-9);
        for (std::size_t i = 1; i < n; ++i) CHECK(s.eigenvalues[i - 1] <= s.eigenvalues[i]);
        for (std::size_t a = 0; a < n; ++a) {
            std::vector<double> col(n);
            for (std::size_t i = 0; i < n; ++i) col[i] = v(i, a);
            const auto lv = l.multiply(col);
            double res = 0.0;
            for (std::size_t i = 0; i < n; ++i) res += std::pow(lv[i] - s.eigenvalues[a] * col[i], 2);
            CHECK(std::sqrt(res) <= 1e-8 * frobenius(l));
            for (std::size_t b = a; b < n; ++b) {
                double dot = 0.0;
                for (std::size_t i = 0; i < n; ++i) dot += v(i, a) * v(i, b);
                CHECK(std::abs(dot - (a == b ? 1.0 : 0.0)) <= 1e-8);
            }
        }
    }
}

TEST_CASE("eigensolver rejects asymmetric input and indexes from one") {
    DenseMatrix m(2, 2);
    m(0, 1) = 1.0;
    CHECK_THROWS_AS(eig_symmetric(m), ValidationError);
    const Spectrum s = eig_symmetric(laplacian(generate(Family::path, {2})));
    CHECK(lambda_k(s, 1) == doctest::Approx(0.0));
    CHECK(lambda_k(s, 2) == doctest::Approx(2.0));
    CHECK_THROWS_AS(lambda_k(s, 0), ValidationError);
    CHECK_THROWS_AS(lambda_k(s, 3), ValidationError);
}

TEST_CASE("spectrum csv") {
    std::ostringstream out;
    write_spectrum_csv(out, eig_symmetric(laplacian(generate(Family::path, {2}))));
    const std::string text = out.str();
    CHECK(text.rfind("index,eigenvalue\n", 0) == 0);
    CHECK(text.find("\n1,") != std::string::npos);
    CHECK(text.find("\n2,2") != std::string::npos);
}

TEST_CASE("rayleigh quotient examples") {
    const Graph g = generate(Family::grid, {3});
    const std::vector<double> constant(9, 2.5);
    const auto rc = rayleigh(g, constant);
    CHECK(rc.energy == 0.0);
    CHECK(rc.ratio == 0.0);

    const auto e = rayleigh(generate(Family::path, {2}), std::vector<double>{1.0, 0.0});
    CHECK(e.energy == 1.0);
    CHECK(e.norm_sq == 1.0);
    CHECK(e.ratio == 1.0);

    const Graph c4 = generate(Family::cycle, {4});
    const auto alt = rayleigh(c4, std::vector<double>{1, -1, 1, -1});
    CHECK(alt.ratio == doctest::Approx(4.0));
    CHECK(alt.ratio == doctest::Approx(eig_symmetric(laplacian(c4)).eigenvalues.back()));

    CHECK_THROWS_AS(rayleigh(c4, std::vector<double>(4, 0.0)), ValidationError);
    CHECK_THROWS_AS(rayleigh(c4, std::vector<double>(3, 1.0)), ValidationError);
}

TEST_CASE("support clamps tiny entries") {
    const std::vector<double> f{0.0, 1e-15, -2e-14, 3.0};
    CHECK(support(f) == std::vector<Vertex>{2, 3});
}

TEST_CASE("disjoint support bound examples") {
    const Graph p5 = generate(Family::path, {5});
    const std::vector<double> f{0.3, -1.0, 2.0, 0.0, 0.5};
    const auto single = disjoint_support_bound(p5, {f});
    CHECK(single.accepted);
    CHECK(single.bound == doctest::Approx(rayleigh(p5, f).ratio));

    const auto two = disjoint_support_bound(p5, {{1, 0, 0, 0, 0}, {0, 0, 0, 1, 0}});
    REQUIRE(two.accepted);
    CHECK(two.quotients[0].ratio == doctest::Approx(1.0));
    CHECK(two.quotients[1].ratio == doctest::Approx(2.0));
    CHECK(two.bound == doctest::Approx(2.0));
    const double lambda2 = lambda_k(eig_symmetric(laplacian(p5)), 2);
    CHECK(lambda2 == doctest::Approx(2.0 - 2.0 * std::cos(std::numbers::pi / 5)));
    CHECK(lambda2 <= two.bound);

    const auto bad = disjoint_support_bound(p5, {{1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}});
    CHECK_FALSE(bad.accepted);
    REQUIRE(bad.violation.has_value());
    CHECK(bad.violation->i != bad.violation->j);

    CHECK_THROWS_AS(disjoint_support_bound(p5, {{0, 0, 0, 0, 0}}), ValidationError);
}

TEST_CASE("accepted families bound the exact eigenvalue and are L-orthogonal") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> value(-1.0, 1.0);
    std::size_t accepted = 0;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const Graph g = generate(Family::triangulated_disk, {30}, seed);
        const DenseMatrix l = laplacian(g);
        const Spectrum s = eig_symmetric(l);
        // Random functions on random disjoint balls around spread-out centres.
        std::vector<std::vector<double>> fs;
        std::vector<char> blocked(30, 0);
        for (int attempt = 0; attempt < 30; ++attempt) {
            const Vertex c = rng() % 30;
            std::vector<Vertex> ball{c};
            for (Vertex u : g.neighbors(c)) ball.push_back(u);
            const auto closure = neighborhood(g, ball);
            bool clash = false;
            for (Vertex x : closure) clash = clash || blocked[x];
            if (clash) continue;
            std::vector<double> f(30, 0.0);
            for (Vertex x : ball) f[x] = value(rng) + 2.0;
            for (Vertex x : neighborhood(g, closure)) blocked[x] = 1;
            fs.push_back(f);
        }
        if (fs.empty()) continue;
        const auto result = disjoint_support_bound(g, fs);
        REQUIRE(result.accepted);
        ++accepted;
        CHECK(lambda_k(s, fs.size()) <= result.bound + 1e-12);
        for (std::size_t i = 0; i < fs.size(); ++i) {
            const auto lfi = l.multiply(fs[i]);
            for (std::size_t j = 0; j < fs.size(); ++j) {
                if (i == j) continue;
                double dot = 0.0;
                for (std::size_t x = 0; x < 30; ++x) dot += lfi[x] * fs[j][x];
                CHECK(std::abs(dot) <= 1e-10);
            }
        }
    }
    CHECK(accepted >= 20);
}
