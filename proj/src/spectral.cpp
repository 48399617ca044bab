#include "specbound/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "specbound/errors.hpp"

namespace specbound {

namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kSupportZero = 1e-14;
constexpr int kMaxSweeps = 100;

double off_diagonal_norm_sq(const DenseMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i + 1; j < a.cols(); ++j) s += a(i, j) * a(i, j);
    return 2.0 * s;
}

}  // namespace

Spectrum eig_symmetric(const DenseMatrix& m, bool want_vectors) {
    if (m.rows() != m.cols()) throw ValidationError("eig_symmetric needs a square matrix");
    const std::size_t n = m.rows();
    double frob_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (std::abs(m(i, j) - m(j, i)) > kSymmetryTol) {
                throw ValidationError("matrix is not symmetric at (" + std::to_string(i) + "," +
                                      std::to_string(j) + ")");
            }
            frob_sq += m(i, j) * m(i, j);
        }
    }

    DenseMatrix a = m;
    DenseMatrix v = want_vectors ? DenseMatrix::identity(n) : DenseMatrix();
    const double stop = 1e-30 * std::max(frob_sq, 1e-300);

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        if (off_diagonal_norm_sq(a) <= stop) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                // Entries far below both diagonal magnitudes only perturb the
                // eigenvalues at the level of rounding.
                const double app = a(p, p);
                const double aqq = a(q, q);
                if (sweep > 3 && std::abs(apq) < 1e-18 * (std::abs(app) + std::abs(aqq))) {
                    a(p, q) = a(q, p) = 0.0;
                    continue;
                }
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);

                a(p, p) = app - t * apq;
                a(q, q) = aqq + t * apq;
                a(p, q) = a(q, p) = 0.0;
                for (std::size_t r = 0; r < n; ++r) {
                    if (r == p || r == q) continue;
                    const double g = a(r, p);
                    const double h = a(r, q);
                    const double gp = g - s * (h + g * tau);
                    const double hq = h + s * (g - h * tau);
                    a(r, p) = a(p, r) = gp;
                    a(r, q) = a(q, r) = hq;
                }
                if (want_vectors) {
                    for (std::size_t r = 0; r < n; ++r) {
                        const double g = v(r, p);
                        const double h = v(r, q);
                        v(r, p) = g - s * (h + g * tau);
                        v(r, q) = h + s * (g - h * tau);
                    }
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

    Spectrum out;
    out.eigenvalues.reserve(n);
    for (std::size_t i : order) out.eigenvalues.push_back(a(i, i));
    if (want_vectors) {
        DenseMatrix sorted(n, n);
        for (std::size_t c = 0; c < n; ++c)
            for (std::size_t r = 0; r < n; ++r) sorted(r, c) = v(r, order[c]);
        out.eigenvectors = std::move(sorted);
    }
    return out;
}

double lambda_k(const Spectrum& spectrum, std::size_t k) {
    if (k == 0 || k > spectrum.eigenvalues.size()) {
        throw ValidationError("k = " + std::to_string(k) + " outside [1, " +
                              std::to_string(spectrum.eigenvalues.size()) + "]");
    }
    return spectrum.eigenvalues[k - 1];
}

void write_spectrum_csv(std::ostream& out, const Spectrum& spectrum) {
    const auto old_precision = out.precision(17);
    out << "index,eigenvalue\n";
    for (std::size_t i = 0; i < spectrum.eigenvalues.size(); ++i)
        out << i + 1 << ',' << spectrum.eigenvalues[i] << '\n';
    out.precision(old_precision);
}

RayleighQuotient rayleigh(const Graph& g, std::span<const double> f) {
    if (f.size() != g.num_vertices()) {
        throw ValidationError("vector length " + std::to_string(f.size()) + " != vertex count " +
                              std::to_string(g.num_vertices()));
    }
    RayleighQuotient q;
    for (const Edge& e : g.edges()) {
        const double d = f[e.u] - f[e.v];
        q.energy += d * d;
    }
    for (double x : f) q.norm_sq += x * x;
    if (q.norm_sq == 0.0) throw ValidationError("Rayleigh quotient of the zero vector");
    q.ratio = q.energy / q.norm_sq;
    return q;
}

std::vector<Vertex> support(std::span<const double> f) {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < f.size(); ++v)
        if (std::abs(f[v]) > kSupportZero) out.push_back(v);
    return out;
}

SupportBoundResult disjoint_support_bound(const Graph& g,
                                          const std::vector<std::vector<double>>& fs) {
    SupportBoundResult result;
    if (fs.empty()) throw ValidationError("need at least one test vector");
    std::vector<std::vector<Vertex>> supports;
    supports.reserve(fs.size());
    for (std::size_t i = 0; i < fs.size(); ++i) {
        supports.push_back(support(fs[i]));
        if (supports.back().empty()) {
            throw ValidationError("test vector " + std::to_string(i) + " is zero");
        }
        result.quotients.push_back(rayleigh(g, fs[i]));
    }

    // N(S) contains S, so overlapping supports are caught here too.
    const std::size_t n = g.num_vertices();
    for (std::size_t j = 0; j < fs.size(); ++j) {
        std::vector<char> in_nbhd(n, 0);
        for (Vertex v : neighborhood(g, supports[j])) in_nbhd[v] = 1;
        for (std::size_t i = 0; i < fs.size(); ++i) {
            if (i == j) continue;
            for (Vertex v : supports[i]) {
                if (in_nbhd[v]) {
                    result.violation = SupportViolation{i, j, v};
                    return result;
                }
            }
        }
    }
    result.accepted = true;
    for (const auto& q : result.quotients) result.bound = std::max(result.bound, q.ratio);
    return result;
}

}  // namespace specbound
