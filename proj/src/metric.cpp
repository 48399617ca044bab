#include "specbound/metric.hpp"

#include <algorithm>
#include <queue>
#include <utility>

#include "specbound/errors.hpp"

namespace specbound {

namespace {

constexpr Vertex kNoVertex = static_cast<Vertex>(-1);

}  // namespace

MetricOracle::MetricOracle(const Graph& g, VertexWeighting weights)
    : graph_(&g), weights_(std::move(weights)), n_(g.num_vertices()) {
    if (weights_.size() != n_) {
        throw ValidationError("weighting has " + std::to_string(weights_.size()) +
                              " entries for a graph with " + std::to_string(n_) + " vertices");
    }
    dist_.assign(n_ * n_, kInfinity);
    pred_.assign(n_ * n_, kNoVertex);

    using Item = std::pair<double, Vertex>;
    std::vector<char> done(n_);
    for (Vertex s = 0; s < n_; ++s) {
        double* dist = dist_.data() + s * n_;
        Vertex* pred = pred_.data() + s * n_;
        std::fill(done.begin(), done.end(), 0);
        std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
        dist[s] = weights_[s];
        heap.emplace(dist[s], s);
        while (!heap.empty()) {
            auto [d, u] = heap.top();
            heap.pop();
            if (done[u]) continue;
            done[u] = 1;
            for (Vertex v : g.neighbors(u)) {
                const double cand = d + weights_[v];
                if (cand < dist[v] || (cand == dist[v] && !done[v] && u < pred[v])) {
                    dist[v] = cand;
                    pred[v] = u;
                    heap.emplace(cand, v);
                }
            }
        }
        dist[s] = 0.0;
    }
}

std::vector<Vertex> MetricOracle::shortest_path(Vertex u, Vertex v) const {
    if (u >= n_ || v >= n_) throw ValidationError("vertex out of range");
    if (!connected(u, v)) return {};
    std::vector<Vertex> path{v};
    const Vertex* pred = pred_.data() + u * n_;
    for (Vertex x = v; x != u;) {
        x = pred[x];
        path.push_back(x);
    }
    std::reverse(path.begin(), path.end());
    return path;
}

double MetricOracle::distance_to_set(Vertex x, std::span<const Vertex> targets) const {
    double best = kInfinity;
    for (Vertex t : targets) best = std::min(best, distance(x, t));
    return best;
}

double MetricOracle::set_distance(std::span<const Vertex> a, std::span<const Vertex> b) const {
    double best = kInfinity;
    for (Vertex x : a) best = std::min(best, distance_to_set(x, b));
    return best;
}

double MetricOracle::diameter(std::span<const Vertex> subset) const {
    double best = 0.0;
    for (std::size_t i = 0; i < subset.size(); ++i)
        for (std::size_t j = i + 1; j < subset.size(); ++j)
            best = std::max(best, distance(subset[i], subset[j]));
    return best;
}

double MetricOracle::diameter() const {
    return *std::max_element(dist_.begin(), dist_.end());
}

std::vector<Vertex> MetricOracle::ball(Vertex x, double radius) const {
    std::vector<Vertex> out;
    for (Vertex y = 0; y < n_; ++y)
        if (distance(x, y) <= radius) out.push_back(y);
    return out;
}

double MetricOracle::min_positive_distance() const {
    double best = kInfinity;
    for (double d : dist_)
        if (d > 0.0) best = std::min(best, d);
    return best;
}

DistanceResult dist_omega(const MetricOracle& oracle, Vertex u, Vertex v) {
    if (u >= oracle.size() || v >= oracle.size()) throw ValidationError("vertex out of range");
    const double d = oracle.distance(u, v);
    return {d, d < kInfinity};
}

}  // namespace specbound
