#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "specbound/flow.hpp"
#include "specbound/graph.hpp"
#include "specbound/metric.hpp"

namespace specbound {

enum class SolveMode { exact, heuristic };

std::string to_string(SolveMode mode);

struct SubsetSearchOptions {
    /// Exhaustive search when binomial(n, r) is at most this.
    double exact_limit = 1e6;
};

struct SubsetSearchResult {
    std::vector<Vertex> set;   // sorted
    double pair_sum = 0.0;     // Σ over unordered pairs {u,v} ⊆ set of dist(u,v)
    SolveMode mode = SolveMode::exact;
};

/// Size-r subset minimizing the sum of pairwise distances. Exact mode breaks
/// ties toward the lexicographically smallest set. Heuristic mode (greedy
/// growth from every start vertex, then swap-based local search) returns a
/// feasible set, so its pair_sum is an upper estimate of the true minimum.
SubsetSearchResult min_spread_subset(const MetricOracle& oracle, std::size_t r,
                                     const SubsetSearchOptions& options = {});

double binomial(std::size_t n, std::size_t k);

/// ω together with the value ε_r(G, ω) it achieves and the subset attaining it.
struct SpreadingCertificate {
    VertexWeighting weights;  // normalized
    std::size_t r = 0;
    double epsilon = 0.0;
    std::vector<Vertex> witness_set;
    SolveMode mode = SolveMode::exact;
    std::size_t iterations = 0;
    bool converged = true;  // false when the iteration cap stopped the solver
};

/// ε_r(G, ω) = min over |S| = r of (1/r²) Σ_{{u,v}⊆S} dist_ω(u,v) / ‖ω‖₂.
/// Scale invariant in ω. Throws ValidationError for ω ≡ 0 or r outside [2, n].
SpreadingCertificate epsilon_r(const Graph& g, const VertexWeighting& w, std::size_t r,
                               const SubsetSearchOptions& options = {});

struct SolverOptions {
    double tol = 1e-3;
    std::size_t max_iterations = 20000;
    SubsetSearchOptions search;
};

/// Maximizes ε_r(G, ω) over ‖ω‖₂ = 1 by constraint generation: projected
/// supergradient ascent against a working set of subsets, with the subset
/// search as separation oracle adding the most violated subset each round.
/// The returned epsilon is recomputed from scratch for the returned weights.
SpreadingCertificate primal_max_spread(const Graph& g, std::size_t r, const SolverOptions& options = {});

struct SubsetFlowSolution {
    SubsetDistribution mu;   // supported on size-r sets
    Flow flow;               // a μ-flow
    double congestion = 0.0;
    double dual_value = 0.0;  // √con / r²
    /// Certified lower bound on min √con / r² from the last Frank-Wolfe gap
    /// (exact mode only; 0 in heuristic mode).
    double lower_bound = 0.0;
    std::size_t iterations = 0;
    SolveMode mode = SolveMode::exact;
    bool converged = false;
};

/// Minimizes con(F) over μ-flows with μ supported on size-r sets by
/// Frank-Wolfe on the vertex-load vector. The linear oracle prices vertex v
/// at 2·C_F(v) and returns the size-r set whose pairwise shortest-path
/// routing is cheapest, i.e. the same subset search as the primal side.
SubsetFlowSolution dual_min_congestion(const Graph& g, std::size_t r, const SolverOptions& options = {});

struct DualityReport {
    std::size_t r = 0;
    double epsilon = 0.0;
    double dual_value = 0.0;
    double gap = 0.0;  // |ε* - dual| / max(dual, 1e-12)
    std::size_t iterations = 0;
    SolveMode mode = SolveMode::exact;
};

DualityReport duality_gap(const Graph& g, std::size_t r, const SolverOptions& options = {});

std::string to_json(const DualityReport& report);

}  // namespace specbound
