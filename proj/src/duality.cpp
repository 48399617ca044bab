#include "specbound/duality.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include <json.hpp>

#include "specbound/errors.hpp"

namespace specbound {

std::string to_string(SolveMode mode) { return mode == SolveMode::exact ? "exact" : "heuristic"; }

double binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0.0;
    k = std::min(k, n - k);
    double out = 1.0;
    for (std::size_t i = 1; i <= k; ++i) out = out * static_cast<double>(n - k + i) / static_cast<double>(i);
    return out;
}

namespace {

double pair_sum(const MetricOracle& oracle, const std::vector<Vertex>& set) {
    double s = 0.0;
    for (std::size_t i = 0; i < set.size(); ++i)
        for (std::size_t j = i + 1; j < set.size(); ++j) s += oracle.distance(set[i], set[j]);
    return s;
}

SubsetSearchResult exact_search(const MetricOracle& oracle, std::size_t r) {
    const std::size_t n = oracle.size();
    SubsetSearchResult best;
    best.pair_sum = kInfinity;
    std::vector<Vertex> current;
    current.reserve(r);

    // Depth-first over increasing vertex lists; partial sums only grow, so a
    // prefix at or above the incumbent cannot lead to a strictly better set,
    // and the first set reaching a value is the lexicographically smallest.
    auto dfs = [&](auto&& self, Vertex start, double partial) -> void {
        if (current.size() == r) {
            if (partial < best.pair_sum) {
                best.pair_sum = partial;
                best.set = current;
            }
            return;
        }
        const std::size_t need = r - current.size();
        for (Vertex v = start; v + need <= n; ++v) {
            double added = 0.0;
            for (Vertex x : current) added += oracle.distance(v, x);
            const double next = partial + added;
            if (next >= best.pair_sum) continue;
            current.push_back(v);
            self(self, v + 1, next);
            current.pop_back();
        }
    };
    dfs(dfs, 0, 0.0);
    if (best.set.empty()) {
        // Every size-r set contains a disconnected pair.
        best.set.resize(r);
        std::iota(best.set.begin(), best.set.end(), Vertex{0});
    }
    best.mode = SolveMode::exact;
    return best;
}

SubsetSearchResult heuristic_search(const MetricOracle& oracle, std::size_t r) {
    const std::size_t n = oracle.size();
    SubsetSearchResult best;
    best.pair_sum = kInfinity;
    best.mode = SolveMode::heuristic;

    std::vector<double> to_set(n);
    std::vector<char> in_set(n);
    for (Vertex start = 0; start < n; ++start) {
        std::fill(in_set.begin(), in_set.end(), 0);
        std::vector<Vertex> set{start};
        in_set[start] = 1;
        for (Vertex v = 0; v < n; ++v) to_set[v] = oracle.distance(v, start);
        while (set.size() < r) {
            Vertex pick = n;
            for (Vertex v = 0; v < n; ++v)
                if (!in_set[v] && (pick == n || to_set[v] < to_set[pick])) pick = v;
            set.push_back(pick);
            in_set[pick] = 1;
            for (Vertex v = 0; v < n; ++v) to_set[v] += oracle.distance(v, pick);
        }
        // Swap local search: replacing a ∈ S by b ∉ S changes the pair sum by
        // to_set[b] - d(a,b) - to_set[a].
        for (int pass = 0; pass < 64; ++pass) {
            double best_delta = -1e-12;
            std::size_t out_idx = r;
            Vertex in_v = n;
            for (std::size_t i = 0; i < r; ++i) {
                const Vertex a = set[i];
                for (Vertex b = 0; b < n; ++b) {
                    if (in_set[b]) continue;
                    const double delta = to_set[b] - oracle.distance(a, b) - to_set[a];
                    if (delta < best_delta) {
                        best_delta = delta;
                        out_idx = i;
                        in_v = b;
                    }
                }
            }
            if (out_idx == r) break;
            const Vertex a = set[out_idx];
            set[out_idx] = in_v;
            in_set[a] = 0;
            in_set[in_v] = 1;
            for (Vertex v = 0; v < n; ++v) to_set[v] += oracle.distance(v, in_v) - oracle.distance(v, a);
        }
        std::sort(set.begin(), set.end());
        const double value = pair_sum(oracle, set);
        if (value < best.pair_sum || (value == best.pair_sum && set < best.set)) {
            best.pair_sum = value;
            best.set = std::move(set);
        }
    }
    return best;
}

void check_connected(const Graph& g) {
    if (!g.is_connected()) throw ValidationError("the spreading program needs a connected graph");
}

void check_r(std::size_t n, std::size_t r) {
    if (r < 2 || r > n) {
        throw ValidationError("subset size r = " + std::to_string(r) + " outside [2, " + std::to_string(n) + "]");
    }
}

// Supergradient of ω ↦ Σ_{{u,v}⊆S} dist_ω(u,v): each pair contributes the
// indicator of its current shortest path.
std::vector<double> spread_supergradient(const MetricOracle& oracle, const std::vector<Vertex>& set) {
    std::vector<double> grad(oracle.size(), 0.0);
    for (std::size_t i = 0; i < set.size(); ++i)
        for (std::size_t j = i + 1; j < set.size(); ++j)
            for (Vertex v : oracle.shortest_path(set[i], set[j])) grad[v] += 1.0;
    return grad;
}

double norm2(const std::vector<double>& x) {
    return std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0));
}

// Projection onto {ω >= 0, ‖ω‖ <= 1}.
void project(std::vector<double>& w) {
    for (double& x : w) x = std::max(x, 0.0);
    const double norm = norm2(w);
    if (norm > 1.0)
        for (double& x : w) x /= norm;
}

}  // namespace

SubsetSearchResult min_spread_subset(const MetricOracle& oracle, std::size_t r,
                                     const SubsetSearchOptions& options) {
    check_r(oracle.size(), r);
    if (binomial(oracle.size(), r) <= options.exact_limit) return exact_search(oracle, r);
    return heuristic_search(oracle, r);
}

SpreadingCertificate epsilon_r(const Graph& g, const VertexWeighting& w, std::size_t r,
                               const SubsetSearchOptions& options) {
    check_r(g.num_vertices(), r);
    if (w.size() != g.num_vertices()) throw ValidationError("weighting size does not match graph");
    if (w.is_zero()) throw ValidationError("epsilon_r needs a weighting that is not identically zero");
    const double norm = w.l2_norm();
    MetricOracle oracle(g, w);
    const auto found = min_spread_subset(oracle, r, options);

    SpreadingCertificate cert;
    cert.weights = w.normalized();
    cert.r = r;
    cert.epsilon = found.pair_sum / (static_cast<double>(r * r) * norm);
    cert.witness_set = found.set;
    cert.mode = found.mode;
    return cert;
}

SpreadingCertificate primal_max_spread(const Graph& g, std::size_t r, const SolverOptions& options) {
    const std::size_t n = g.num_vertices();
    check_r(n, r);
    check_connected(g);
    const double r2 = static_cast<double>(r * r);
    const double step_scale = 0.5 / std::sqrt(static_cast<double>(n));
    constexpr std::size_t kInnerSteps = 100;
    constexpr int kQuietRounds = 3;

    std::vector<double> w(VertexWeighting::uniform(n).values());
    std::vector<std::vector<Vertex>> working;

    // Minimum over the working set at the current oracle, and its argmin.
    auto relaxed = [&](const MetricOracle& oracle) {
        double value = kInfinity;
        std::size_t arg = 0;
        for (std::size_t i = 0; i < working.size(); ++i) {
            const double v = pair_sum(oracle, working[i]);
            if (v < value) {
                value = v;
                arg = i;
            }
        }
        return std::make_pair(value / r2, arg);
    };

    SpreadingCertificate best;
    best.r = r;
    best.epsilon = -1.0;
    std::size_t t = 0;
    SolveMode mode = SolveMode::exact;
    int quiet = 0;
    double previous_best = -1.0;
    bool converged = false;

    while (t < options.max_iterations) {
        const VertexWeighting current(w);
        MetricOracle oracle(g, current);
        const auto cut = min_spread_subset(oracle, r, options.search);
        if (cut.mode == SolveMode::heuristic) mode = SolveMode::heuristic;
        const double norm = norm2(w);
        const double true_eps = cut.pair_sum / (r2 * norm);
        if (true_eps > best.epsilon) {
            best.epsilon = true_eps;
            best.weights = current.normalized();
            best.witness_set = cut.set;
        }
        if (!working.empty()) {
            const double violation = relaxed(oracle).first / norm - true_eps;
            const bool stalled = best.epsilon - previous_best < 0.1 * options.tol;
            quiet = (violation <= options.tol && stalled) ? quiet + 1 : 0;
            if (quiet >= kQuietRounds) {
                converged = true;
                break;
            }
        }
        previous_best = best.epsilon;
        if (std::find(working.begin(), working.end(), cut.set) == working.end()) working.push_back(cut.set);

        // Projected supergradient ascent on the working-set relaxation with a
        // globally diminishing step.
        for (std::size_t s = 0; s < kInnerSteps && t < options.max_iterations; ++s, ++t) {
            MetricOracle inner(g, VertexWeighting(w));
            const auto arg = relaxed(inner).second;
            const auto grad = spread_supergradient(inner, working[arg]);
            const double gnorm = norm2(grad);
            if (gnorm == 0.0) break;
            const double step = step_scale / std::sqrt(static_cast<double>(t + 1));
            std::vector<double> next = w;
            for (std::size_t v = 0; v < n; ++v) next[v] += step * grad[v] / gnorm;
            project(next);
            if (norm2(next) > 0.0) w = std::move(next);
        }
    }

    best.iterations = t;
    best.converged = converged;
    // Recompute from scratch so the reported value is exactly ε_r(G, ω).
    const auto fresh = epsilon_r(g, best.weights, r, options.search);
    best.epsilon = fresh.epsilon;
    best.witness_set = fresh.witness_set;
    best.mode = mode == SolveMode::heuristic ? SolveMode::heuristic : fresh.mode;
    return best;
}

SubsetFlowSolution dual_min_congestion(const Graph& g, std::size_t r, const SolverOptions& options) {
    const std::size_t n = g.num_vertices();
    check_r(n, r);
    check_connected(g);
    const double r2 = static_cast<double>(r * r);

    struct Atom {
        std::vector<Vertex> set;
        std::vector<Path> paths;
        std::vector<double> load;
        double weight = 0.0;
    };
    std::vector<Atom> atoms;
    std::map<std::vector<Path>, std::size_t> index;  // routing -> atom (a routing determines its set)

    SolveMode mode = SolveMode::exact;
    auto linear_oracle = [&](const std::vector<double>& price) {
        MetricOracle oracle(g, VertexWeighting(price));
        const auto found = min_spread_subset(oracle, r, options.search);
        if (found.mode == SolveMode::heuristic) mode = SolveMode::heuristic;
        Atom atom;
        atom.set = found.set;
        atom.load.assign(n, 0.0);
        for (std::size_t i = 0; i < found.set.size(); ++i) {
            for (std::size_t j = i + 1; j < found.set.size(); ++j) {
                Path p(oracle.shortest_path(found.set[i], found.set[j]));
                if (p.size() == 0) throw ValidationError("graph is disconnected; no μ-flow exists");
                for (Vertex v : p.vertices()) atom.load[v] += 1.0;
                atom.paths.push_back(std::move(p));
            }
        }
        return atom;
    };
    auto dot = [](const std::vector<double>& a, const std::vector<double>& b) {
        return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
    };

    {
        Atom first = linear_oracle(std::vector<double>(n, 1.0));
        first.weight = 1.0;
        index[first.paths] = 0;
        atoms.push_back(std::move(first));
    }
    std::vector<double> load = atoms[0].load;

    SubsetFlowSolution out;
    double best_lower = 0.0;
    std::size_t t = 0;
    for (; t < options.max_iterations; ++t) {
        const double con = dot(load, load);
        std::vector<double> price(n);
        for (std::size_t v = 0; v < n; ++v) price[v] = 2.0 * load[v];
        Atom toward = linear_oracle(price);

        // Frank-Wolfe gap: con is convex, so con* >= con - <∇con, C - D>.
        const double fw_gap = dot(price, load) - dot(price, toward.load);
        if (mode == SolveMode::exact) {
            best_lower = std::max(best_lower, con - fw_gap);
            const double upper = std::sqrt(con);
            const double lower = std::sqrt(std::max(best_lower, 0.0));
            if (upper - lower <= options.tol * upper) {
                out.converged = true;
                break;
            }
        }

        // Pairwise step: move mass from the worst active atom to the oracle's.
        std::size_t away = 0;
        double away_score = -kInfinity;
        for (std::size_t i = 0; i < atoms.size(); ++i) {
            if (atoms[i].weight <= 0.0) continue;
            const double s = dot(price, atoms[i].load);
            if (s > away_score) {
                away_score = s;
                away = i;
            }
        }
        std::vector<double> dir(n);
        for (std::size_t v = 0; v < n; ++v) dir[v] = toward.load[v] - atoms[away].load[v];
        const double curvature = dot(dir, dir);
        if (curvature <= 0.0) {
            out.converged = mode == SolveMode::exact;
            break;
        }
        const double gamma = std::clamp(-dot(load, dir) / curvature, 0.0, atoms[away].weight);
        if (gamma <= 0.0) {
            out.converged = mode == SolveMode::exact;
            break;
        }

        std::size_t target;
        if (auto it = index.find(toward.paths); it != index.end()) {
            target = it->second;
        } else {
            target = atoms.size();
            index[toward.paths] = target;
            atoms.push_back(std::move(toward));
        }
        atoms[away].weight -= gamma;
        if (atoms[away].weight < 1e-15) atoms[away].weight = 0.0;
        atoms[target].weight += gamma;
        for (std::size_t v = 0; v < n; ++v) load[v] += gamma * dir[v];
    }

    double total_weight = 0.0;
    for (const Atom& a : atoms) total_weight += a.weight;
    std::vector<SubsetDistribution::Atom> mu_atoms;
    for (const Atom& a : atoms) {
        if (a.weight <= 0.0) continue;
        const double p = a.weight / total_weight;
        mu_atoms.emplace_back(a.set, p);
        for (const Path& path : a.paths) out.flow.add(path, p);
    }
    // Renormalized weights can still sum to 1 ± a few ulps per atom.
    double s = 0.0;
    for (const auto& [set, p] : mu_atoms) s += p;
    mu_atoms.back().second += 1.0 - s;
    out.mu = SubsetDistribution(std::move(mu_atoms));
    out.congestion = congestion(out.flow);
    out.dual_value = std::sqrt(out.congestion) / r2;
    out.lower_bound = mode == SolveMode::exact ? std::sqrt(std::max(best_lower, 0.0)) / r2 : 0.0;
    out.iterations = t;
    out.mode = mode;
    return out;
}

DualityReport duality_gap(const Graph& g, std::size_t r, const SolverOptions& options) {
    const auto primal = primal_max_spread(g, r, options);
    const auto dual = dual_min_congestion(g, r, options);
    DualityReport report;
    report.r = r;
    report.epsilon = primal.epsilon;
    report.dual_value = dual.dual_value;
    report.gap = std::abs(primal.epsilon - dual.dual_value) / std::max(dual.dual_value, 1e-12);
    report.iterations = primal.iterations + dual.iterations;
    report.mode = (primal.mode == SolveMode::exact && dual.mode == SolveMode::exact) ? SolveMode::exact
                                                                                     : SolveMode::heuristic;
    return report;
}

std::string to_json(const DualityReport& report) {
    nlohmann::ordered_json j;
    j["r"] = report.r;
    j["epsilon"] = report.epsilon;
    j["dual_value"] = report.dual_value;
    j["gap"] = report.gap;
    j["iterations"] = report.iterations;
    j["mode"] = to_string(report.mode);
    return j.dump(2);
}

}  // namespace specbound
