#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "specbound/graph.hpp"

namespace specbound {

using VertexPair = std::pair<Vertex, Vertex>;  // first <= second

inline VertexPair make_pair_key(Vertex u, Vertex v) { return u < v ? VertexPair{u, v} : VertexPair{v, u}; }

/// Simple path stored in canonical orientation (front() <= back()), so a path
/// and its reversal are the same key.
class Path {
public:
    Path() = default;
    explicit Path(std::vector<Vertex> vertices);

    const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
    std::size_t size() const noexcept { return vertices_.size(); }
    Vertex front() const { return vertices_.front(); }
    Vertex back() const { return vertices_.back(); }
    VertexPair endpoints() const { return {vertices_.front(), vertices_.back()}; }
    bool contains(Vertex v) const;

    /// Throws ValidationError unless consecutive vertices are adjacent in g.
    void validate(const Graph& g) const;

    friend auto operator<=>(const Path&, const Path&) = default;

private:
    std::vector<Vertex> vertices_;
};

/// Nonnegative mass on finitely many paths. Only positive masses are stored.
class Flow {
public:
    void add(const Path& p, double mass);
    const std::map<Path, double>& paths() const noexcept { return paths_; }
    bool empty() const noexcept { return paths_.empty(); }
    void validate(const Graph& g) const;

private:
    std::map<Path, double> paths_;
};

/// F[u,v]: total mass on paths whose endpoint set is {u,v}.
double pair_total(const Flow& f, Vertex u, Vertex v);
std::map<VertexPair, double> pair_totals(const Flow& f);
/// C_F(v) = Σ_{p ∋ v} F(p) for v < n.
std::vector<double> vertex_loads(const Flow& f, std::size_t n);
/// con(F) = Σ_v C_F(v)².
double congestion(const Flow& f);

/// Ordered-path-pair expansion of con(F) restricted to pairs (p, p') whose
/// endpoint sets are disjoint: Σ |p ∩ p'| F(p) F(p'). Each unordered pair of
/// such paths is counted twice, once per order, so inter(F) <= con(F) holds
/// term by term.
double intersection_number(const Flow& f);

/// Finitely supported distribution over nonempty vertex subsets.
class SubsetDistribution {
public:
    using Atom = std::pair<std::vector<Vertex>, double>;

    SubsetDistribution() = default;
    /// Sets are sorted and deduplicated; probabilities must be >= 0 and sum
    /// to 1 within 1e-12. Repeated sets are merged.
    explicit SubsetDistribution(std::vector<Atom> atoms);

    static SubsetDistribution point_mass(std::vector<Vertex> set);
    static SubsetDistribution uniform(std::vector<std::vector<Vertex>> sets);

    const std::vector<Atom>& atoms() const noexcept { return atoms_; }
    bool empty() const noexcept { return atoms_.empty(); }

    /// Pr[u, v ∈ S]; with u == v this is Pr[u ∈ S].
    double pair_probability(Vertex u, Vertex v) const;
    double expected_size() const;
    /// E|S|² = Σ_{u,v} Pr[u,v ∈ S] over ordered pairs including u == v.
    double expected_size_sq() const;
    /// Largest vertex index mentioned plus one.
    std::size_t vertex_bound() const;
    /// True when every support set has exactly r elements.
    bool all_of_size(std::size_t r) const;
    /// n×n table of Pr[u,v ∈ S] (diagonal = Pr[u ∈ S]).
    std::vector<std::vector<double>> pair_table(std::size_t n) const;

private:
    std::vector<Atom> atoms_;
};

struct MuFlowCheck {
    bool valid = false;
    double max_deviation = 0.0;
    VertexPair worst_pair{0, 0};
};

/// Compares every pair total with Pr[u,v ∈ S] over all pairs touched by
/// either F or μ.
MuFlowCheck validate_mu_flow(const Flow& f, const SubsetDistribution& mu, double tol = 1e-9);

/// Edge-weighted demand graph H with its placement φ: V(H) -> V(G).
struct DemandGraph {
    std::size_t num_vertices = 0;
    std::map<VertexPair, double> weights;  // keys over V(H), first < second
    std::vector<Vertex> placement;         // φ; identity when built by helpers

    static DemandGraph unit(std::size_t n, const std::vector<VertexPair>& edges);
    /// Unit-weighted complete graph on the listed host vertices.
    static DemandGraph complete_on(const std::vector<Vertex>& host_vertices);
    /// H_μ on host vertices [0, n): weight Pr[u,v ∈ S] for u < v, identity φ.
    static DemandGraph from_distribution(const SubsetDistribution& mu, std::size_t n);

    std::size_t num_edges() const;
};

/// Randomized rounding of a unit flow: for each pair with total 1, keep one of
/// its paths chosen with probability equal to its mass. Throws ValidationError
/// when some pair total is neither 0 nor 1 (within 1e-9).
Flow round_integral(const Flow& f, std::uint64_t seed);

enum class PlacementMode {
    automatic,  // search over injections when |V(H)| <= |V(G)| <= 10
    fixed,      // use H.placement as given
};

struct BruteForceOptions {
    PlacementMode placement = PlacementMode::automatic;
    std::size_t path_budget = 1'000'000;
};

struct BruteForceResult {
    double value = 0.0;
    std::vector<Vertex> placement;
    std::vector<Path> routing;  // one path per positive-weight demand pair
};

/// Exact minimum of intersection_number over integral H-flows: one path per
/// demand pair carrying its weight. Paths of the same pair never interact,
/// so the objective is multilinear in the per-pair path distributions and the
/// integral minimum equals the fractional one for a fixed placement.
/// Throws ResourceError when the simple-path enumeration exceeds the budget
/// or the host has more than 64 vertices.
BruteForceResult min_intersection_bruteforce(const Graph& g, const DemandGraph& h,
                                             const BruteForceOptions& options = {});

/// Exhaustive minor test: looks for disjoint connected branch sets in g, one
/// per vertex of h, joined by a g-edge for every h-edge. Intended for graphs
/// of at most ~8 vertices.
bool has_minor(const Graph& g, const Graph& h);

bool is_bipartite(const Graph& g);

/// Text formats: flows as lines "mass v0 v1 ... vk", distributions as lines
/// "prob v0 v1 ... vk".
Flow read_flow(std::istream& in);
void write_flow(std::ostream& out, const Flow& f);
SubsetDistribution read_distribution(std::istream& in);
void write_distribution(std::ostream& out, const SubsetDistribution& mu);

}  // namespace specbound
