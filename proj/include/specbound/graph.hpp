#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "specbound/matrix.hpp"

namespace specbound {

using Vertex = std::size_t;

/// Undirected edge stored with first < second.
struct Edge {
    Vertex u = 0;
    Vertex v = 0;

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Finite simple undirected graph with sorted adjacency lists.
///
/// Construction validates the edge list (no self-loops, no duplicates,
/// endpoints in range); afterwards the object is immutable.
class Graph {
public:
    Graph() = default;
    Graph(std::size_t n, std::vector<std::pair<Vertex, Vertex>> edges);

    std::size_t num_vertices() const noexcept { return adjacency_.size(); }
    std::size_t num_edges() const noexcept { return edges_.size(); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }

    std::span<const Vertex> neighbors(Vertex v) const { return adjacency_.at(v); }
    std::size_t degree(Vertex v) const { return adjacency_.at(v).size(); }
    std::size_t max_degree() const noexcept { return max_degree_; }

    bool adjacent(Vertex u, Vertex v) const;
    bool is_connected() const;

private:
    std::vector<Edge> edges_;
    std::vector<std::vector<Vertex>> adjacency_;
    std::size_t max_degree_ = 0;
};

/// Nonnegative weight per vertex.
class VertexWeighting {
public:
    VertexWeighting() = default;
    explicit VertexWeighting(std::vector<double> values);

    static VertexWeighting uniform(std::size_t n);

    std::size_t size() const noexcept { return values_.size(); }
    double operator[](Vertex v) const { return values_[v]; }
    const std::vector<double>& values() const noexcept { return values_; }

    double sum_of_squares() const;
    double l2_norm() const;
    /// ω(S) = Σ_{v∈S} ω(v).
    double total(std::span<const Vertex> subset) const;
    bool is_normalized(double tol = 1e-12) const;
    bool is_zero() const;

    /// Rescaled copy with Σω² = 1. Throws on the zero weighting.
    VertexWeighting normalized() const;

private:
    std::vector<double> values_;
};

enum class Family { path, cycle, grid, torus, star, complete, triangulated_disk };

Family parse_family(const std::string& name);
std::string to_string(Family family);

/// Builds a member of `family`. `size` holds one entry per dimension (grid and
/// torus accept one or two); a single entry means square for grid/torus.
/// The seed only affects `triangulated_disk`.
Graph generate(Family family, const std::vector<std::size_t>& size, std::uint64_t seed = 0);

/// N(S): S together with every neighbor of a vertex of S. Result sorted.
std::vector<Vertex> neighborhood(const Graph& g, std::span<const Vertex> subset);

/// L = D - A as a dense matrix.
DenseMatrix laplacian(const Graph& g);

/// Text formats: graph = "n m" header then m lines "u v"; weighting = one
/// decimal per line. Readers throw ValidationError naming the line.
Graph read_graph(std::istream& in);
void write_graph(std::ostream& out, const Graph& g);
VertexWeighting read_weighting(std::istream& in, std::size_t expected_size);
void write_weighting(std::ostream& out, const VertexWeighting& w);

Graph load_graph(const std::string& path);
VertexWeighting load_weighting(const std::string& path, std::size_t expected_size);

}  // namespace specbound
