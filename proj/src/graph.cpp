#include "specbound/graph.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include "specbound/errors.hpp"

namespace specbound {

Graph::Graph(std::size_t n, std::vector<std::pair<Vertex, Vertex>> edges) : adjacency_(n) {
    edges_.reserve(edges.size());
    for (auto [u, v] : edges) {
        if (u >= n || v >= n) {
            throw ValidationError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                                  ") has an endpoint outside [0," + std::to_string(n) + ")");
        }
        if (u == v) {
            throw ValidationError("self-loop at vertex " + std::to_string(u));
        }
        edges_.push_back(Edge{std::min(u, v), std::max(u, v)});
    }
    std::sort(edges_.begin(), edges_.end());
    if (auto dup = std::adjacent_find(edges_.begin(), edges_.end()); dup != edges_.end()) {
        throw ValidationError("duplicate edge (" + std::to_string(dup->u) + "," +
                              std::to_string(dup->v) + ")");
    }
    for (const Edge& e : edges_) {
        adjacency_[e.u].push_back(e.v);
        adjacency_[e.v].push_back(e.u);
    }
    for (auto& nbrs : adjacency_) {
        std::sort(nbrs.begin(), nbrs.end());
        max_degree_ = std::max(max_degree_, nbrs.size());
    }
}

bool Graph::adjacent(Vertex u, Vertex v) const {
    const auto& nbrs = adjacency_.at(u);
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

bool Graph::is_connected() const {
    const std::size_t n = num_vertices();
    if (n <= 1) return true;
    std::vector<char> seen(n, 0);
    std::vector<Vertex> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        for (Vertex w : adjacency_[v]) {
            if (!seen[w]) {
                seen[w] = 1;
                ++count;
                stack.push_back(w);
            }
        }
    }
    return count == n;
}

// ---------------------------------------------------------------------------
// VertexWeighting

VertexWeighting::VertexWeighting(std::vector<double> values) : values_(std::move(values)) {
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!(values_[i] >= 0.0) || !std::isfinite(values_[i])) {
            throw ValidationError("vertex weight " + std::to_string(i) +
                                  " must be finite and nonnegative");
        }
    }
}

VertexWeighting VertexWeighting::uniform(std::size_t n) {
    if (n == 0) throw ValidationError("uniform weighting needs at least one vertex");
    return VertexWeighting(std::vector<double>(n, 1.0 / std::sqrt(static_cast<double>(n))));
}

double VertexWeighting::sum_of_squares() const {
    return std::inner_product(values_.begin(), values_.end(), values_.begin(), 0.0);
}

double VertexWeighting::l2_norm() const { return std::sqrt(sum_of_squares()); }

double VertexWeighting::total(std::span<const Vertex> subset) const {
    double s = 0.0;
    for (Vertex v : subset) s += values_.at(v);
    return s;
}

bool VertexWeighting::is_normalized(double tol) const {
    return std::abs(sum_of_squares() - 1.0) <= tol;
}

bool VertexWeighting::is_zero() const {
    return std::all_of(values_.begin(), values_.end(), [](double x) { return x == 0.0; });
}

VertexWeighting VertexWeighting::normalized() const {
    const double norm = l2_norm();
    if (norm == 0.0) throw ValidationError("cannot normalize the zero weighting");
    std::vector<double> out(values_);
    for (double& x : out) x /= norm;
    return VertexWeighting(std::move(out));
}

// ---------------------------------------------------------------------------
// Generators

Family parse_family(const std::string& name) {
    static const std::map<std::string, Family> kNames = {
        {"path", Family::path},         {"cycle", Family::cycle},
        {"grid", Family::grid},         {"torus", Family::torus},
        {"star", Family::star},         {"complete", Family::complete},
        {"triangulated_disk", Family::triangulated_disk},
    };
    auto it = kNames.find(name);
    if (it == kNames.end()) throw ValidationError("unknown graph family '" + name + "'");
    return it->second;
}

std::string to_string(Family family) {
    switch (family) {
        case Family::path: return "path";
        case Family::cycle: return "cycle";
        case Family::grid: return "grid";
        case Family::torus: return "torus";
        case Family::star: return "star";
        case Family::complete: return "complete";
        case Family::triangulated_disk: return "triangulated_disk";
    }
    return "unknown";
}

namespace {

using EdgeList = std::vector<std::pair<Vertex, Vertex>>;

Graph make_grid(std::size_t rows, std::size_t cols, bool wrap) {
    EdgeList edges;
    auto id = [cols](std::size_t r, std::size_t c) { return r * cols + c; };
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            if (c + 1 < cols) edges.emplace_back(id(r, c), id(r, c + 1));
            if (r + 1 < rows) edges.emplace_back(id(r, c), id(r + 1, c));
        }
    }
    if (wrap) {
        for (std::size_t r = 0; r < rows; ++r) edges.emplace_back(id(r, cols - 1), id(r, 0));
        for (std::size_t c = 0; c < cols; ++c) edges.emplace_back(id(rows - 1, c), id(0, c));
    }
    return Graph(rows * cols, std::move(edges));
}

// Random triangulated disk. Vertices are added one at a time, either inside a
// random triangle (3-way split) or glued onto a random boundary edge; after
// every insertion, degree-balancing edge flips play the role of Delaunay
// flips. Only the combinatorics matter: every operation maps a triangulated
// disk to a triangulated disk, so the result is planar.
Graph make_triangulated_disk(std::size_t n, std::uint64_t seed) {
    if (n < 3) {
        EdgeList edges;
        for (Vertex v = 1; v < n; ++v) edges.emplace_back(v - 1, v);
        return Graph(n, std::move(edges));
    }
    using Tri = std::array<Vertex, 3>;
    std::mt19937_64 rng(seed);
    std::vector<Tri> tris{{0, 1, 2}};
    std::vector<std::size_t> degree(n, 0);
    degree[0] = degree[1] = degree[2] = 2;

    auto key = [](Vertex a, Vertex b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
    auto edge_map = [&]() {
        std::map<std::pair<Vertex, Vertex>, std::vector<std::size_t>> m;
        for (std::size_t t = 0; t < tris.size(); ++t) {
            const Tri& tri = tris[t];
            for (int i = 0; i < 3; ++i) m[key(tri[i], tri[(i + 1) % 3])].push_back(t);
        }
        return m;
    };
    auto third = [](const Tri& t, Vertex a, Vertex b) {
        for (Vertex x : t)
            if (x != a && x != b) return x;
        return t[0];
    };

    // One pass of degree-balancing flips over all interior edges.
    auto flip_pass = [&]() {
        bool flipped = false;
        auto edges = edge_map();
        for (const auto& [e, ts] : edges) {
            if (ts.size() != 2) continue;
            auto [a, b] = e;
            const Tri& t0 = tris[ts[0]];
            const Tri& t1 = tris[ts[1]];
            // Both triangles must still contain a and b (earlier flips in this
            // pass may have rewritten them).
            auto has = [](const Tri& t, Vertex x) { return std::find(t.begin(), t.end(), x) != t.end(); };
            if (!has(t0, a) || !has(t0, b) || !has(t1, a) || !has(t1, b)) continue;
            Vertex c = third(t0, a, b);
            Vertex d = third(t1, a, b);
            if (c == d) continue;
            if (degree[a] + degree[b] <= degree[c] + degree[d] + 2) continue;
            if (degree[a] <= 3 || degree[b] <= 3) continue;
            // c and d must not already be adjacent.
            bool cd_edge = false;
            for (const Tri& t : tris) {
                if (has(t, c) && has(t, d)) {
                    cd_edge = true;
                    break;
                }
            }
            if (cd_edge) continue;
            tris[ts[0]] = {c, d, a};
            tris[ts[1]] = {d, c, b};
            --degree[a];
            --degree[b];
            ++degree[c];
            ++degree[d];
            flipped = true;
        }
        return flipped;
    };

    for (Vertex v = 3; v < n; ++v) {
        std::bernoulli_distribution on_boundary(0.3);
        if (on_boundary(rng)) {
            std::vector<std::pair<Vertex, Vertex>> boundary;
            for (const auto& [e, ts] : edge_map())
                if (ts.size() == 1) boundary.push_back(e);
            std::uniform_int_distribution<std::size_t> pick(0, boundary.size() - 1);
            auto [a, b] = boundary[pick(rng)];
            tris.push_back({a, b, v});
            ++degree[a];
            ++degree[b];
            degree[v] = 2;
        } else {
            std::uniform_int_distribution<std::size_t> pick(0, tris.size() - 1);
            const std::size_t t = pick(rng);
            Tri old = tris[t];
            tris[t] = {old[0], old[1], v};
            tris.push_back({old[1], old[2], v});
            tris.push_back({old[2], old[0], v});
            for (Vertex x : old) ++degree[x];
            degree[v] = 3;
        }
        flip_pass();
    }
    for (int sweep = 0; sweep < 8 && flip_pass(); ++sweep) {
    }

    EdgeList edges;
    for (const auto& [e, ts] : edge_map()) edges.push_back(e);
    return Graph(n, std::move(edges));
}

}  // namespace

Graph generate(Family family, const std::vector<std::size_t>& size, std::uint64_t seed) {
    if (size.empty() || size.size() > 2) {
        throw ValidationError("size needs one or two dimensions");
    }
    for (std::size_t s : size) {
        if (s == 0) throw ValidationError("size must be >= 1 in every dimension");
    }
    if (size.size() == 2 && family != Family::grid && family != Family::torus) {
        throw ValidationError(to_string(family) + " takes a single size");
    }
    const std::size_t n = size[0];
    EdgeList edges;
    switch (family) {
        case Family::path:
            for (Vertex v = 1; v < n; ++v) edges.emplace_back(v - 1, v);
            return Graph(n, std::move(edges));
        case Family::cycle:
            if (n < 3) throw ValidationError("cycle needs at least 3 vertices");
            for (Vertex v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
            return Graph(n, std::move(edges));
        case Family::grid:
            return make_grid(n, size.size() == 2 ? size[1] : n, false);
        case Family::torus: {
            const std::size_t cols = size.size() == 2 ? size[1] : n;
            if (n < 3 || cols < 3) throw ValidationError("torus needs at least 3 per dimension");
            return make_grid(n, cols, true);
        }
        case Family::star:
            for (Vertex v = 1; v < n; ++v) edges.emplace_back(0, v);
            return Graph(n, std::move(edges));
        case Family::complete:
            for (Vertex u = 0; u < n; ++u)
                for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
            return Graph(n, std::move(edges));
        case Family::triangulated_disk:
            return make_triangulated_disk(n, seed);
    }
    throw ValidationError("unhandled family");
}

std::vector<Vertex> neighborhood(const Graph& g, std::span<const Vertex> subset) {
    std::vector<char> mark(g.num_vertices(), 0);
    for (Vertex v : subset) {
        if (v >= g.num_vertices()) throw ValidationError("vertex out of range in neighborhood");
        mark[v] = 1;
        for (Vertex w : g.neighbors(v)) mark[w] = 1;
    }
    std::vector<Vertex> out;
    for (Vertex v = 0; v < mark.size(); ++v)
        if (mark[v]) out.push_back(v);
    return out;
}

DenseMatrix laplacian(const Graph& g) {
    const std::size_t n = g.num_vertices();
    DenseMatrix l(n, n);
    for (Vertex v = 0; v < n; ++v) l(v, v) = static_cast<double>(g.degree(v));
    for (const Edge& e : g.edges()) {
        l(e.u, e.v) = -1.0;
        l(e.v, e.u) = -1.0;
    }
    return l;
}

// ---------------------------------------------------------------------------
// Text I/O

namespace {

[[noreturn]] void bad_line(std::size_t line, const std::string& what) {
    throw ValidationError("line " + std::to_string(line) + ": " + what);
}

bool next_content_line(std::istream& in, std::string& line, std::size_t& lineno) {
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
}

}  // namespace

Graph read_graph(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    if (!next_content_line(in, line, lineno)) bad_line(lineno + 1, "missing 'n m' header");
    std::istringstream header(line);
    long long n = -1, m = -1;
    std::string extra;
    if (!(header >> n >> m) || n < 0 || m < 0 || (header >> extra)) {
        bad_line(lineno, "expected 'n m' with nonnegative integers");
    }
    EdgeList edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (long long i = 0; i < m; ++i) {
        if (!next_content_line(in, line, lineno)) {
            bad_line(lineno + 1, "expected " + std::to_string(m) + " edge lines, found " +
                                     std::to_string(i));
        }
        std::istringstream fields(line);
        long long u = -1, v = -1;
        if (!(fields >> u >> v) || (fields >> extra)) bad_line(lineno, "expected 'u v'");
        if (u < 0 || v < 0 || u >= n || v >= n) bad_line(lineno, "vertex index out of range");
        if (u == v) bad_line(lineno, "self-loop");
        edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
    if (next_content_line(in, line, lineno)) bad_line(lineno, "unexpected trailing content");
    try {
        return Graph(static_cast<std::size_t>(n), std::move(edges));
    } catch (const ValidationError& e) {
        throw ValidationError(std::string("graph file: ") + e.what());
    }
}

void write_graph(std::ostream& out, const Graph& g) {
    out << g.num_vertices() << ' ' << g.num_edges() << '\n';
    for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

VertexWeighting read_weighting(std::istream& in, std::size_t expected_size) {
    std::vector<double> values;
    std::string line;
    std::size_t lineno = 0;
    while (next_content_line(in, line, lineno)) {
        std::istringstream fields(line);
        double x = 0.0;
        std::string extra;
        if (!(fields >> x) || (fields >> extra)) bad_line(lineno, "expected one decimal");
        if (!(x >= 0.0) || !std::isfinite(x)) bad_line(lineno, "weight must be finite and >= 0");
        values.push_back(x);
    }
    if (values.size() != expected_size) {
        throw ValidationError("weighting has " + std::to_string(values.size()) +
                              " entries, expected " + std::to_string(expected_size));
    }
    return VertexWeighting(std::move(values));
}

void write_weighting(std::ostream& out, const VertexWeighting& w) {
    const auto old_precision = out.precision(17);
    for (double x : w.values()) out << x << '\n';
    out.precision(old_precision);
}

Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FilesystemError("cannot open graph file '" + path + "'");
    return read_graph(in);
}

VertexWeighting load_weighting(const std::string& path, std::size_t expected_size) {
    std::ifstream in(path);
    if (!in) throw FilesystemError("cannot open weighting file '" + path + "'");
    return read_weighting(in, expected_size);
}

}  // namespace specbound
