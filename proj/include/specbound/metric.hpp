#pragma once

#include <limits>
#include <span>
#include <vector>

#include "specbound/graph.hpp"

namespace specbound {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct DistanceResult {
    double length = 0.0;
    bool connected = true;  // false means length == +inf
};

/// All-pairs vertex-weighted shortest-path semimetric.
///
/// For u != v the length of a path counts every vertex on it, endpoints
/// included; dist(u,u) is 0. Each vertex is split into an in/out arc of cost
/// ω(v) so the computation is plain Dijkstra from every source. Ties between
/// equal-length routes resolve to the smaller predecessor index, so paths are
/// reproducible.
class MetricOracle {
public:
    MetricOracle(const Graph& g, VertexWeighting weights);

    const Graph& graph() const noexcept { return *graph_; }
    const VertexWeighting& weights() const noexcept { return weights_; }
    std::size_t size() const noexcept { return n_; }

    double distance(Vertex u, Vertex v) const { return dist_[u * n_ + v]; }
    bool connected(Vertex u, Vertex v) const { return dist_[u * n_ + v] < kInfinity; }

    /// Vertex sequence of the stored shortest u-v path (u first). Empty when
    /// the pair is disconnected.
    std::vector<Vertex> shortest_path(Vertex u, Vertex v) const;

    /// Distance from x to the nearest vertex of `targets` (+inf if empty).
    double distance_to_set(Vertex x, std::span<const Vertex> targets) const;
    /// Minimum distance between the two sets (+inf if either is empty).
    double set_distance(std::span<const Vertex> a, std::span<const Vertex> b) const;
    /// Largest pairwise distance inside `subset` (0 for |subset| <= 1).
    double diameter(std::span<const Vertex> subset) const;
    double diameter() const;
    /// Closed ball B(x, R) = {y : dist(x,y) <= R}, sorted.
    std::vector<Vertex> ball(Vertex x, double radius) const;
    /// Smallest positive pairwise distance (+inf if none).
    double min_positive_distance() const;

private:
    const Graph* graph_;
    VertexWeighting weights_;
    std::size_t n_;
    std::vector<double> dist_;
    std::vector<Vertex> pred_;  // pred_[s*n+v]: vertex before v on the s->v path
};

/// Checked lookup with the disconnected flag spelled out.
DistanceResult dist_omega(const MetricOracle& oracle, Vertex u, Vertex v);

}  // namespace specbound
