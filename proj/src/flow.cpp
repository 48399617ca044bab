#include "specbound/flow.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "specbound/errors.hpp"

namespace specbound {

// ---------------------------------------------------------------------------
// Path / Flow

Path::Path(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.empty()) throw ValidationError("path must be nonempty");
    std::vector<Vertex> sorted(vertices_);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw ValidationError("path repeats a vertex");
    }
    if (vertices_.back() < vertices_.front()) std::reverse(vertices_.begin(), vertices_.end());
}

bool Path::contains(Vertex v) const {
    return std::find(vertices_.begin(), vertices_.end(), v) != vertices_.end();
}

void Path::validate(const Graph& g) const {
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        if (vertices_[i] >= g.num_vertices()) throw ValidationError("path vertex out of range");
        if (i > 0 && !g.adjacent(vertices_[i - 1], vertices_[i])) {
            throw ValidationError("path step " + std::to_string(vertices_[i - 1]) + "-" +
                                  std::to_string(vertices_[i]) + " is not an edge");
        }
    }
}

void Flow::add(const Path& p, double mass) {
    if (!(mass >= 0.0) || !std::isfinite(mass)) throw ValidationError("flow mass must be >= 0");
    if (mass == 0.0) return;
    paths_[p] += mass;
}

void Flow::validate(const Graph& g) const {
    for (const auto& [p, mass] : paths_) p.validate(g);
}

double pair_total(const Flow& f, Vertex u, Vertex v) {
    const VertexPair key = make_pair_key(u, v);
    double total = 0.0;
    for (const auto& [p, mass] : f.paths())
        if (p.endpoints() == key) total += mass;
    return total;
}

std::map<VertexPair, double> pair_totals(const Flow& f) {
    std::map<VertexPair, double> out;
    for (const auto& [p, mass] : f.paths()) out[p.endpoints()] += mass;
    return out;
}

std::vector<double> vertex_loads(const Flow& f, std::size_t n) {
    std::vector<double> load(n, 0.0);
    for (const auto& [p, mass] : f.paths()) {
        for (Vertex v : p.vertices()) {
            if (v >= n) throw ValidationError("flow touches vertex outside [0, n)");
            load[v] += mass;
        }
    }
    return load;
}

double congestion(const Flow& f) {
    std::map<Vertex, double> load;
    for (const auto& [p, mass] : f.paths())
        for (Vertex v : p.vertices()) load[v] += mass;
    double total = 0.0;
    for (const auto& [v, c] : load) total += c * c;
    return total;
}

namespace {

std::size_t common_vertices(const std::vector<Vertex>& a_sorted, const std::vector<Vertex>& b_sorted) {
    std::size_t count = 0;
    auto i = a_sorted.begin();
    auto j = b_sorted.begin();
    while (i != a_sorted.end() && j != b_sorted.end()) {
        if (*i < *j) {
            ++i;
        } else if (*j < *i) {
            ++j;
        } else {
            ++count;
            ++i;
            ++j;
        }
    }
    return count;
}

bool endpoints_disjoint(VertexPair a, VertexPair b) {
    return a.first != b.first && a.first != b.second && a.second != b.first && a.second != b.second;
}

}  // namespace

double intersection_number(const Flow& f) {
    struct Entry {
        VertexPair ends;
        std::vector<Vertex> sorted;
        double mass;
    };
    std::vector<Entry> entries;
    for (const auto& [p, mass] : f.paths()) {
        std::vector<Vertex> s(p.vertices());
        std::sort(s.begin(), s.end());
        entries.push_back({p.endpoints(), std::move(s), mass});
    }
    double total = 0.0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        for (std::size_t j = i + 1; j < entries.size(); ++j) {
            if (!endpoints_disjoint(entries[i].ends, entries[j].ends)) continue;
            const auto shared = common_vertices(entries[i].sorted, entries[j].sorted);
            total += 2.0 * static_cast<double>(shared) * entries[i].mass * entries[j].mass;
        }
    }
    return total;
}

// ---------------------------------------------------------------------------
// SubsetDistribution

SubsetDistribution::SubsetDistribution(std::vector<Atom> atoms) {
    std::map<std::vector<Vertex>, double> merged;
    double total = 0.0;
    for (auto& [set, prob] : atoms) {
        if (!(prob >= 0.0) || !std::isfinite(prob)) {
            throw ValidationError("subset probability must be finite and >= 0");
        }
        std::sort(set.begin(), set.end());
        set.erase(std::unique(set.begin(), set.end()), set.end());
        if (set.empty()) throw ValidationError("support sets must be nonempty");
        total += prob;
        if (prob > 0.0) merged[set] += prob;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw ValidationError("subset probabilities sum to " + std::to_string(total) + ", not 1");
    }
    atoms_.assign(merged.begin(), merged.end());
}

SubsetDistribution SubsetDistribution::point_mass(std::vector<Vertex> set) {
    return SubsetDistribution({{std::move(set), 1.0}});
}

SubsetDistribution SubsetDistribution::uniform(std::vector<std::vector<Vertex>> sets) {
    if (sets.empty()) throw ValidationError("uniform distribution over no sets");
    std::vector<Atom> atoms;
    const double p = 1.0 / static_cast<double>(sets.size());
    for (auto& s : sets) atoms.emplace_back(std::move(s), p);
    return SubsetDistribution(std::move(atoms));
}

double SubsetDistribution::pair_probability(Vertex u, Vertex v) const {
    double p = 0.0;
    for (const auto& [set, prob] : atoms_) {
        if (std::binary_search(set.begin(), set.end(), u) &&
            std::binary_search(set.begin(), set.end(), v))
            p += prob;
    }
    return p;
}

double SubsetDistribution::expected_size() const {
    double e = 0.0;
    for (const auto& [set, prob] : atoms_) e += prob * static_cast<double>(set.size());
    return e;
}

double SubsetDistribution::expected_size_sq() const {
    double e = 0.0;
    for (const auto& [set, prob] : atoms_) {
        const auto s = static_cast<double>(set.size());
        e += prob * s * s;
    }
    return e;
}

std::size_t SubsetDistribution::vertex_bound() const {
    std::size_t n = 0;
    for (const auto& [set, prob] : atoms_) n = std::max(n, set.back() + 1);
    return n;
}

bool SubsetDistribution::all_of_size(std::size_t r) const {
    return std::all_of(atoms_.begin(), atoms_.end(), [r](const Atom& a) { return a.first.size() == r; });
}

std::vector<std::vector<double>> SubsetDistribution::pair_table(std::size_t n) const {
    std::vector<std::vector<double>> table(n, std::vector<double>(n, 0.0));
    for (const auto& [set, prob] : atoms_) {
        for (Vertex u : set) {
            if (u >= n) throw ValidationError("distribution mentions vertex outside [0, n)");
            for (Vertex v : set) table[u][v] += prob;
        }
    }
    return table;
}

MuFlowCheck validate_mu_flow(const Flow& f, const SubsetDistribution& mu, double tol) {
    std::set<Vertex> touched;
    const auto totals = pair_totals(f);
    for (const auto& [pair, mass] : totals) {
        touched.insert(pair.first);
        touched.insert(pair.second);
    }
    for (const auto& [set, prob] : mu.atoms()) touched.insert(set.begin(), set.end());

    MuFlowCheck check;
    const std::vector<Vertex> vs(touched.begin(), touched.end());
    for (std::size_t i = 0; i < vs.size(); ++i) {
        for (std::size_t j = i + 1; j < vs.size(); ++j) {
            const VertexPair key{vs[i], vs[j]};
            auto it = totals.find(key);
            const double flow = it == totals.end() ? 0.0 : it->second;
            const double dev = std::abs(flow - mu.pair_probability(vs[i], vs[j]));
            if (dev > check.max_deviation) {
                check.max_deviation = dev;
                check.worst_pair = key;
            }
        }
    }
    // Paths with a single vertex carry no demand between distinct vertices.
    for (const auto& [pair, mass] : totals) {
        if (pair.first == pair.second && mass > check.max_deviation) {
            check.max_deviation = mass;
            check.worst_pair = pair;
        }
    }
    check.valid = check.max_deviation <= tol;
    return check;
}

// ---------------------------------------------------------------------------
// DemandGraph

DemandGraph DemandGraph::unit(std::size_t n, const std::vector<VertexPair>& edges) {
    DemandGraph h;
    h.num_vertices = n;
    h.placement.resize(n);
    std::iota(h.placement.begin(), h.placement.end(), Vertex{0});
    for (auto [u, v] : edges) {
        if (u == v || u >= n || v >= n) throw ValidationError("bad demand edge");
        h.weights[make_pair_key(u, v)] = 1.0;
    }
    return h;
}

DemandGraph DemandGraph::complete_on(const std::vector<Vertex>& host_vertices) {
    DemandGraph h;
    h.num_vertices = host_vertices.size();
    h.placement = host_vertices;
    for (Vertex a = 0; a < h.num_vertices; ++a)
        for (Vertex b = a + 1; b < h.num_vertices; ++b) h.weights[{a, b}] = 1.0;
    return h;
}

DemandGraph DemandGraph::from_distribution(const SubsetDistribution& mu, std::size_t n) {
    DemandGraph h;
    h.num_vertices = n;
    h.placement.resize(n);
    std::iota(h.placement.begin(), h.placement.end(), Vertex{0});
    for (const auto& [set, prob] : mu.atoms()) {
        for (std::size_t i = 0; i < set.size(); ++i) {
            if (set[i] >= n) throw ValidationError("distribution mentions vertex outside [0, n)");
            for (std::size_t j = i + 1; j < set.size(); ++j) h.weights[{set[i], set[j]}] += prob;
        }
    }
    return h;
}

std::size_t DemandGraph::num_edges() const {
    return static_cast<std::size_t>(
        std::count_if(weights.begin(), weights.end(), [](const auto& kv) { return kv.second > 0.0; }));
}

// ---------------------------------------------------------------------------
// Rounding

Flow round_integral(const Flow& f, std::uint64_t seed) {
    std::map<VertexPair, std::vector<std::pair<const Path*, double>>> by_pair;
    for (const auto& [p, mass] : f.paths()) by_pair[p.endpoints()].emplace_back(&p, mass);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Flow out;
    for (const auto& [pair, options] : by_pair) {
        double total = 0.0;
        for (const auto& [p, mass] : options) total += mass;
        if (std::abs(total - 1.0) > 1e-9) {
            throw ValidationError("pair (" + std::to_string(pair.first) + "," +
                                  std::to_string(pair.second) + ") carries " +
                                  std::to_string(total) + "; rounding needs a unit flow");
        }
        // Draw even for single-path pairs so the stream position does not
        // depend on which pairs happen to be integral.
        const double x = unit(rng) * total;
        double acc = 0.0;
        const Path* chosen = options.back().first;
        for (const auto& [p, mass] : options) {
            acc += mass;
            if (x < acc) {
                chosen = p;
                break;
            }
        }
        out.add(*chosen, 1.0);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Brute-force intersection numbers

namespace {

using Mask = std::uint64_t;

struct PathCache {
    const Graph* g;
    std::size_t budget;
    std::size_t used = 0;
    std::map<VertexPair, std::vector<std::pair<std::vector<Vertex>, Mask>>> paths;

    const std::vector<std::pair<std::vector<Vertex>, Mask>>& get(Vertex u, Vertex v) {
        const VertexPair key = make_pair_key(u, v);
        auto it = paths.find(key);
        if (it != paths.end()) return it->second;
        auto& out = paths[key];
        std::vector<Vertex> stack{key.first};
        Mask on_path = Mask{1} << key.first;
        std::function<void(Vertex)> dfs = [&](Vertex x) {
            if (x == key.second) {
                if (++used > budget) {
                    throw ResourceError("simple-path enumeration exceeded " + std::to_string(budget) +
                                        " paths; shrink the instance");
                }
                out.emplace_back(stack, on_path);
                return;
            }
            for (Vertex y : g->neighbors(x)) {
                if (on_path & (Mask{1} << y)) continue;
                stack.push_back(y);
                on_path |= Mask{1} << y;
                dfs(y);
                on_path &= ~(Mask{1} << y);
                stack.pop_back();
            }
        };
        dfs(key.first);
        // Short paths first: good incumbents early make pruning effective.
        std::stable_sort(out.begin(), out.end(),
                         [](const auto& a, const auto& b) { return a.first.size() < b.first.size(); });
        return out;
    }
};

struct Demand {
    VertexPair host;  // placed endpoints
    double weight;
    const std::vector<std::pair<std::vector<Vertex>, Mask>>* options;
};

class RoutingSearch {
public:
    // `incumbent` is the best value known from other placements; only
    // strictly better routings are recorded.
    RoutingSearch(std::vector<Demand> demands, double incumbent)
        : demands_(std::move(demands)), best_(incumbent), choice_(demands_.size()) {
        std::stable_sort(demands_.begin(), demands_.end(), [](const Demand& a, const Demand& b) {
            return a.weight * 1e6 / a.options->size() > b.weight * 1e6 / b.options->size();
        });
        const std::size_t m = demands_.size();
        disjoint_.assign(m * m, 0);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                disjoint_[i * m + j] = endpoints_disjoint(demands_[i].host, demands_[j].host);

        // Vertices every option of a demand passes through. Two demands with
        // disjoint endpoints share at least their common forced vertices,
        // which gives an admissible bound for the demands not yet routed.
        forced_.assign(m, ~Mask{0});
        for (std::size_t i = 0; i < m; ++i)
            for (const auto& option : *demands_[i].options) forced_[i] &= option.second;
        tail_.assign(m + 1, 0.0);
        for (std::size_t i = m; i-- > 0;) {
            double row = 0.0;
            for (std::size_t j = i + 1; j < m; ++j)
                if (disjoint_[i * m + j]) row += pair_cost(i, j, forced_[i] & forced_[j]);
            tail_[i] = tail_[i + 1] + row;
        }
        offset_.assign(m + 1, 0);
        for (std::size_t i = 0; i < m; ++i) offset_[i + 1] = offset_[i] + demands_[i].options->size();
        levels_.assign(m + 1, std::vector<double>(offset_[m], 0.0));
    }

    /// True when a routing better than the incumbent was found.
    bool run() {
        seed_incumbent();
        descend(0, 0.0);
        return improved_;
    }
    double best() const { return best_; }
    const std::vector<Path>& best_routing() const { return best_routing_; }

private:
    double pair_cost(std::size_t i, std::size_t j, Mask shared) const {
        const int count = std::popcount(shared);
        return count ? 2.0 * count * demands_[i].weight * demands_[j].weight : 0.0;
    }

    double routing_cost(const std::vector<std::size_t>& pick) const {
        const std::size_t m = demands_.size();
        double total = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j)
                if (disjoint_[i * m + j])
                    total += pair_cost(i, j, (*demands_[i].options)[pick[i]].second &
                                                 (*demands_[j].options)[pick[j]].second);
        return total;
    }

    // Best-response descent from the shortest routing. Any routing it finds
    // is a valid incumbent, so the exhaustive search below stays exact.
    void seed_incumbent() {
        const std::size_t m = demands_.size();
        std::vector<std::size_t> pick(m, 0);
        for (bool moved = true; moved;) {
            moved = false;
            for (std::size_t i = 0; i < m; ++i) {
                const auto& options = *demands_[i].options;
                auto cost_of = [&](std::size_t k) {
                    double c = 0.0;
                    for (std::size_t j = 0; j < m; ++j)
                        if (j != i && disjoint_[i * m + j])
                            c += pair_cost(i, j, options[k].second & (*demands_[j].options)[pick[j]].second);
                    return c;
                };
                double current = cost_of(pick[i]);
                for (std::size_t k = 0; k < options.size(); ++k) {
                    const double c = cost_of(k);
                    if (c < current - 1e-12) {
                        current = c;
                        pick[i] = k;
                        moved = true;
                    }
                }
            }
        }
        const double value = routing_cost(pick);
        if (value < best_) {
            best_ = value;
            improved_ = true;
            best_routing_.clear();
            for (std::size_t i = 0; i < m; ++i) best_routing_.emplace_back((*demands_[i].options)[pick[i]].first);
        }
    }

    // levels_[d] holds, for every demand j >= d and each of its options, the
    // cost that option would pay against the demands routed above depth d.
    // Σ_j min over options, plus the forced cost among unrouted demands, is
    // an admissible bound on what is still to come.
    void descend(std::size_t depth, double cost) {
        const std::size_t m = demands_.size();
        if (depth == m) {
            if (cost < best_) {
                best_ = cost;
                improved_ = true;
                best_routing_.clear();
                for (std::size_t i = 0; i < m; ++i)
                    best_routing_.emplace_back((*demands_[i].options)[choice_[i]].first);
            }
            return;
        }
        const auto& options = *demands_[depth].options;
        const std::vector<double>& acc = levels_[depth];
        double rest = 0.0;
        for (std::size_t j = depth + 1; j < m; ++j) rest += min_over(acc, j);

        // Cheapest extensions first.
        std::vector<std::pair<double, std::size_t>> order;
        order.reserve(options.size());
        for (std::size_t k = 0; k < options.size(); ++k) {
            const double next = cost + acc[offset_[depth] + k];
            if (next + rest + tail_[depth + 1] < best_) order.emplace_back(next, k);
        }
        std::stable_sort(order.begin(), order.end());
        std::vector<double>& below = levels_[depth + 1];
        for (const auto& [next, k] : order) {
            if (next + rest + tail_[depth + 1] >= best_) break;
            const Mask mask = options[k].second;
            double bound = next + tail_[depth + 1];
            for (std::size_t j = depth + 1; j < m && bound < best_; ++j) {
                const auto& other = *demands_[j].options;
                const bool interacts = disjoint_[depth * m + j] != 0;
                double low = std::numeric_limits<double>::infinity();
                for (std::size_t t = 0; t < other.size(); ++t) {
                    const std::size_t at = offset_[j] + t;
                    below[at] = acc[at] + (interacts ? pair_cost(depth, j, mask & other[t].second) : 0.0);
                    low = std::min(low, below[at]);
                }
                bound += low;
            }
            if (bound >= best_) continue;
            choice_[depth] = k;
            descend(depth + 1, next);
            if (best_ == 0.0) return;
        }
    }

    double min_over(const std::vector<double>& acc, std::size_t j) const {
        double low = std::numeric_limits<double>::infinity();
        for (std::size_t t = 0; t < demands_[j].options->size(); ++t) low = std::min(low, acc[offset_[j] + t]);
        return low;
    }

    std::vector<Demand> demands_;
    double best_;
    bool improved_ = false;
    std::vector<std::size_t> choice_;
    std::vector<char> disjoint_;
    std::vector<Mask> forced_;
    std::vector<double> tail_;     // Σ forced pair costs among demands i..m-1
    std::vector<std::size_t> offset_;          // start of demand j's options in a level
    std::vector<std::vector<double>> levels_;
    std::vector<Path> best_routing_;
};

}  // namespace

BruteForceResult min_intersection_bruteforce(const Graph& g, const DemandGraph& h,
                                             const BruteForceOptions& options) {
    const std::size_t n = g.num_vertices();
    if (n > 64) throw ResourceError("brute-force intersection supports hosts with at most 64 vertices");
    if (h.placement.size() != h.num_vertices) throw ValidationError("demand graph placement size mismatch");
    if (h.num_vertices > n) throw ValidationError("demand graph larger than host");
    for (Vertex p : h.placement)
        if (p >= n) throw ValidationError("placement maps outside the host");

    std::vector<std::pair<VertexPair, double>> demands;
    for (const auto& [pair, w] : h.weights)
        if (w > 0.0) demands.emplace_back(pair, w);

    PathCache cache{&g, options.path_budget, 0, {}};
    const bool search = options.placement == PlacementMode::automatic && n <= 10;

    BruteForceResult result;
    bool have = false;

    auto try_placement = [&](const std::vector<Vertex>& phi) {
        std::vector<Demand> placed;
        for (const auto& [pair, w] : demands) {
            const Vertex a = phi[pair.first];
            const Vertex b = phi[pair.second];
            const auto& paths = cache.get(a, b);
            if (paths.empty()) return;  // placement disconnects a demand pair
            placed.push_back({make_pair_key(a, b), w, &paths});
        }
        RoutingSearch searcher(std::move(placed),
                               have ? result.value : std::numeric_limits<double>::infinity());
        if (searcher.run()) {
            have = true;
            result.value = searcher.best();
            result.placement = phi;
            result.routing = searcher.best_routing();
        }
    };

    if (!search) {
        try_placement(h.placement);
    } else {
        // Enumerate injections V(H) -> V(G) in lexicographic order.
        std::vector<Vertex> phi(h.num_vertices);
        std::vector<char> used(n, 0);
        std::function<void(std::size_t)> assign = [&](std::size_t i) {
            if (have && result.value == 0.0) return;
            if (i == h.num_vertices) {
                try_placement(phi);
                return;
            }
            for (Vertex x = 0; x < n; ++x) {
                if (used[x]) continue;
                used[x] = 1;
                phi[i] = x;
                assign(i + 1);
                used[x] = 0;
            }
        };
        assign(0);
    }
    if (!have) throw ValidationError("no placement connects every demand pair");
    return result;
}

// ---------------------------------------------------------------------------
// Minors

bool is_bipartite(const Graph& g) {
    const std::size_t n = g.num_vertices();
    std::vector<int> side(n, -1);
    for (Vertex s = 0; s < n; ++s) {
        if (side[s] != -1) continue;
        side[s] = 0;
        std::vector<Vertex> stack{s};
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            for (Vertex w : g.neighbors(v)) {
                if (side[w] == -1) {
                    side[w] = 1 - side[v];
                    stack.push_back(w);
                } else if (side[w] == side[v]) {
                    return false;
                }
            }
        }
    }
    return true;
}

bool has_minor(const Graph& g, const Graph& h) {
    const std::size_t n = g.num_vertices();
    const std::size_t k = h.num_vertices();
    if (k == 0) return true;
    if (k > n || h.num_edges() > g.num_edges()) return false;

    std::vector<int> branch(n, -1);
    std::vector<std::size_t> sizes(k, 0);

    auto check = [&]() {
        // Each branch set must induce a connected subgraph.
        for (std::size_t b = 0; b < k; ++b) {
            Vertex start = n;
            for (Vertex v = 0; v < n; ++v)
                if (branch[v] == static_cast<int>(b)) {
                    start = v;
                    break;
                }
            std::vector<char> seen(n, 0);
            std::vector<Vertex> stack{start};
            seen[start] = 1;
            std::size_t count = 1;
            while (!stack.empty()) {
                Vertex v = stack.back();
                stack.pop_back();
                for (Vertex w : g.neighbors(v)) {
                    if (!seen[w] && branch[w] == static_cast<int>(b)) {
                        seen[w] = 1;
                        ++count;
                        stack.push_back(w);
                    }
                }
            }
            if (count != sizes[b]) return false;
        }
        std::vector<char> joined(k * k, 0);
        for (const Edge& e : g.edges()) {
            const int a = branch[e.u];
            const int b = branch[e.v];
            if (a >= 0 && b >= 0 && a != b) joined[a * k + b] = joined[b * k + a] = 1;
        }
        for (const Edge& e : h.edges())
            if (!joined[e.u * k + e.v]) return false;
        return true;
    };

    std::function<bool(Vertex, std::size_t)> assign = [&](Vertex v, std::size_t empty_sets) -> bool {
        if (empty_sets > n - v) return false;
        if (v == n) return check();
        for (int b = -1; b < static_cast<int>(k); ++b) {
            branch[v] = b;
            std::size_t still_empty = empty_sets;
            if (b >= 0 && sizes[b]++ == 0) --still_empty;
            const bool ok = assign(v + 1, still_empty);
            if (b >= 0) --sizes[b];
            if (ok) return true;
        }
        branch[v] = -1;
        return false;
    };
    return assign(0, k);
}

// ---------------------------------------------------------------------------
// Text I/O

namespace {

std::vector<std::pair<double, std::vector<Vertex>>> read_weighted_lists(std::istream& in,
                                                                        const char* what) {
    std::vector<std::pair<double, std::vector<Vertex>>> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream fields(line);
        double x = 0.0;
        if (!(fields >> x)) {
            throw ValidationError("line " + std::to_string(lineno) + ": expected " + what);
        }
        std::vector<Vertex> vs;
        std::string tok;
        while (fields >> tok) {
            std::size_t pos = 0;
            long long v = -1;
            try {
                v = std::stoll(tok, &pos);
            } catch (const std::exception&) {
                pos = 0;
            }
            if (pos != tok.size() || v < 0) {
                throw ValidationError("line " + std::to_string(lineno) + ": bad vertex '" + tok + "'");
            }
            vs.push_back(static_cast<Vertex>(v));
        }
        if (vs.empty()) {
            throw ValidationError("line " + std::to_string(lineno) + ": no vertices listed");
        }
        out.emplace_back(x, std::move(vs));
    }
    return out;
}

}  // namespace

Flow read_flow(std::istream& in) {
    Flow f;
    std::size_t index = 0;
    for (auto& [mass, vs] : read_weighted_lists(in, "mass")) {
        ++index;
        try {
            f.add(Path(std::move(vs)), mass);
        } catch (const ValidationError& e) {
            throw ValidationError("flow entry " + std::to_string(index) + ": " + e.what());
        }
    }
    return f;
}

void write_flow(std::ostream& out, const Flow& f) {
    const auto old_precision = out.precision(17);
    for (const auto& [p, mass] : f.paths()) {
        out << mass;
        for (Vertex v : p.vertices()) out << ' ' << v;
        out << '\n';
    }
    out.precision(old_precision);
}

SubsetDistribution read_distribution(std::istream& in) {
    std::vector<SubsetDistribution::Atom> atoms;
    for (auto& [prob, vs] : read_weighted_lists(in, "probability")) atoms.emplace_back(std::move(vs), prob);
    return SubsetDistribution(std::move(atoms));
}

void write_distribution(std::ostream& out, const SubsetDistribution& mu) {
    const auto old_precision = out.precision(17);
    for (const auto& [set, prob] : mu.atoms()) {
        out << prob;
        for (Vertex v : set) out << ' ' << v;
        out << '\n';
    }
    out.precision(old_precision);
}

}  // namespace specbound
