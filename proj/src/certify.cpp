#include "specbound/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include <json.hpp>

#include "specbound/errors.hpp"

namespace specbound {

namespace {

// Sums of identical terms and their closed-form products may differ by a few ulps.
constexpr double kRoundingSlack = 1e-12;

// Portable draws so partitions are identical across standard libraries.
double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::vector<Vertex> seeded_order(std::size_t n, std::mt19937_64& rng) {
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), Vertex{0});
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng() % i]);
    return order;
}

std::vector<std::size_t> cell_index(std::size_t n, const std::vector<std::vector<Vertex>>& cells) {
    constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> cell_of(n, kUnset);
    for (std::size_t c = 0; c < cells.size(); ++c) {
        if (cells[c].empty()) throw ValidationError("partition has an empty cell");
        for (Vertex v : cells[c]) {
            if (v >= n) throw ValidationError("partition mentions vertex " + std::to_string(v) + " out of range");
            if (cell_of[v] != kUnset) throw ValidationError("vertex " + std::to_string(v) + " lies in two cells");
            cell_of[v] = c;
        }
    }
    for (Vertex v = 0; v < n; ++v)
        if (cell_of[v] == kUnset) throw ValidationError("vertex " + std::to_string(v) + " is in no cell");
    return cell_of;
}

double edge_cost(const Graph& g, const VertexWeighting& w, const std::vector<Vertex>& set) {
    double total = 0.0;
    for (Vertex u : set)
        for (Vertex v : g.neighbors(u)) total += (w[u] + w[v]) * (w[u] + w[v]);
    return total;
}

std::vector<Vertex> heavy_vertices(const VertexWeighting& w, double threshold) {
    std::vector<Vertex> heavy;
    for (Vertex v = 0; v < w.size(); ++v)
        if (w[v] >= threshold) heavy.push_back(v);
    return heavy;
}

std::vector<double> bump(const MetricOracle& oracle, const std::vector<Vertex>& core, double threshold) {
    const auto& w = oracle.weights();
    std::vector<double> f(oracle.size(), 0.0);
    for (Vertex x = 0; x < oracle.size(); ++x) {
        if (w[x] >= threshold) continue;
        f[x] = std::max(0.0, threshold - oracle.distance_to_set(x, core));
    }
    return f;
}

struct Attempt {
    bool ok = false;
    BoundCertificate cert;
    std::string reason;
};

// Groups padded cores into bins whose light counts fall in [lower, upper].
// Cores are taken largest first; an oversize core is trimmed into an empty
// bin. Returns the bins that reach `lower`.
std::vector<std::vector<Vertex>> merge_cores(const std::vector<std::vector<Vertex>>& cores,
                                             const std::vector<char>& is_heavy, std::size_t bins,
                                             double lower, double upper, bool& trimmed) {
    auto light = [&](const std::vector<Vertex>& set) {
        return static_cast<std::size_t>(
            std::count_if(set.begin(), set.end(), [&](Vertex v) { return !is_heavy[v]; }));
    };
    std::vector<std::size_t> order(cores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return light(cores[a]) > light(cores[b]); });

    std::vector<std::vector<Vertex>> content(bins);
    std::vector<double> count(bins, 0.0);
    for (std::size_t idx : order) {
        const double size = static_cast<double>(light(cores[idx]));
        if (size == 0.0) continue;
        bool placed = false;
        for (std::size_t b = 0; b < bins && !placed; ++b) {
            if (count[b] < lower && count[b] + size <= upper) {
                content[b].insert(content[b].end(), cores[idx].begin(), cores[idx].end());
                count[b] += size;
                placed = true;
            }
        }
        if (placed || size <= upper) continue;
        for (std::size_t b = 0; b < bins; ++b) {
            if (count[b] != 0.0) continue;
            const auto keep = static_cast<std::size_t>(std::floor(upper));
            for (Vertex v : cores[idx]) {
                if (is_heavy[v]) continue;
                if (count[b] >= static_cast<double>(keep)) break;
                content[b].push_back(v);
                count[b] += 1.0;
            }
            trimmed = true;
            break;
        }
    }
    std::vector<std::vector<Vertex>> out;
    for (std::size_t b = 0; b < bins; ++b) {
        if (count[b] >= std::max(lower, 1.0)) {
            std::sort(content[b].begin(), content[b].end());
            out.push_back(std::move(content[b]));
        }
    }
    return out;
}

Attempt attempt_partition(const Graph& g, const MetricOracle& oracle, std::size_t k, double scale,
                          const PaddedPartition& best) {
    const std::size_t n = g.num_vertices();
    const auto& w = oracle.weights();
    Attempt out;
    const double delta = best.delta;
    if (!std::isfinite(best.measured_beta)) {
        out.reason = "scale " + std::to_string(scale) + ": no partition pads half the vertices";
        return out;
    }

    const double beta = best.measured_beta;
    const double pad_radius = delta / beta;
    const double threshold = pad_radius / 2.0;
    const auto pads = padding(oracle, best.cells);
    const auto heavy = heavy_vertices(w, threshold);
    std::vector<char> is_heavy(n, 0);
    for (Vertex v : heavy) is_heavy[v] = 1;

    std::vector<std::vector<Vertex>> cores;
    for (const auto& cell : best.cells) {
        std::vector<Vertex> core;
        for (Vertex x : cell)
            if (pads[x] > pad_radius) core.push_back(x);
        if (!core.empty()) cores.push_back(std::move(core));
    }

    const double nk = static_cast<double>(n) / static_cast<double>(k);
    bool trimmed = false;
    auto sets = merge_cores(cores, is_heavy, 2 * k, nk / 8.0, nk / 4.0, trimmed);
    std::vector<std::string> flags;
    if (sets.size() < 2 * k) {
        trimmed = false;
        sets = merge_cores(cores, is_heavy, 2 * k, nk / 16.0, nk / 2.0, trimmed);
        flags.emplace_back("relaxed");
    }
    if (trimmed) flags.emplace_back("trimmed");
    if (sets.size() < k) {
        std::string sizes;
        for (const auto& c : cores) sizes += (sizes.empty() ? "" : ",") + std::to_string(c.size());
        out.reason = "scale " + std::to_string(scale) + ": only " + std::to_string(sets.size()) +
                     " merged sets for k = " + std::to_string(k) + " (core sizes " + sizes + ")";
        return out;
    }
    if (sets.size() < 2 * k) flags.emplace_back("short");

    BoundCertificate cert;
    cert.delta = delta;
    cert.beta = beta;
    cert.scale = scale;
    cert.threshold = threshold;
    cert.seed = best.seed;
    cert.cells = best.cells;
    cert.heavy_set = heavy;
    for (auto& s : sets) {
        CandidateSet c;
        c.core = std::move(s);
        for (Vertex x = 0; x < n; ++x)
            if (oracle.distance_to_set(x, c.core) <= threshold) c.neighborhood.push_back(x);
        c.light_count = static_cast<std::size_t>(
            std::count_if(c.core.begin(), c.core.end(), [&](Vertex v) { return !is_heavy[v]; }));
        c.edge_cost = edge_cost(g, w, c.neighborhood);
        cert.candidates.push_back(std::move(c));
    }
    std::vector<std::size_t> order(cert.candidates.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return cert.candidates[a].edge_cost < cert.candidates[b].edge_cost;
    });
    order.resize(k);
    std::sort(order.begin(), order.end());
    cert.selected = order;

    for (std::size_t i : cert.selected) cert.vectors.push_back(bump(oracle, cert.candidates[i].core, threshold));
    const auto check = disjoint_support_bound(g, cert.vectors);
    if (!check.accepted) {
        const auto& v = *check.violation;
        out.reason = "scale " + std::to_string(scale) + ": supports of vectors " + std::to_string(v.i) + " and " +
                     std::to_string(v.j) + " touch at vertex " + std::to_string(v.witness);
        return out;
    }
    cert.quotients = check.quotients;
    cert.certified_bound = check.bound;

    double separation = kInfinity;
    for (std::size_t i = 0; i < cert.candidates.size(); ++i)
        for (std::size_t j = i + 1; j < cert.candidates.size(); ++j)
            separation = std::min(separation, oracle.set_distance(cert.candidates[i].neighborhood,
                                                                  cert.candidates[j].neighborhood));
    cert.neighborhood_separation = separation;
    cert.flags = std::move(flags);
    out.cert = std::move(cert);
    out.ok = true;
    return out;
}

Attempt attempt_scale(const Graph& g, const MetricOracle& oracle, std::size_t k, double epsilon, double scale,
                      const CertifyOptions& options) {
    const double delta = scale * epsilon / 2.0;
    if (options.select_by_bound) {
        Attempt best;
        for (std::uint64_t seed : options.seeds) {
            auto attempt = attempt_partition(g, oracle, k, scale, ball_partition(oracle, delta, seed));
            if (!attempt.ok) {
                if (!best.ok && best.reason.empty()) best.reason = attempt.reason;
                continue;
            }
            if (!best.ok || attempt.cert.certified_bound < best.cert.certified_bound) best = std::move(attempt);
        }
        return best;
    }
    PaddedPartition best;
    bool have = false;
    for (std::uint64_t seed : options.seeds) {
        auto p = ball_partition(oracle, delta, seed);
        if (!have || p.measured_beta < best.measured_beta) {
            best = std::move(p);
            have = true;
        }
    }
    return attempt_partition(g, oracle, k, scale, best);
}

}  // namespace

std::vector<double> CertifyOptions::default_scales() {
    std::vector<double> scales;
    for (int i = 0; i <= 16; ++i) scales.push_back(std::pow(2.0, i / 2.0));
    return scales;
}

std::string to_string(CertificateStatus status) {
    return status == CertificateStatus::certified ? "certified" : "trivial";
}

PaddedPartition ball_partition(const MetricOracle& oracle, double delta, std::uint64_t seed) {
    if (!(delta > 0.0)) throw ValidationError("ball_partition needs delta > 0");
    const std::size_t n = oracle.size();
    std::mt19937_64 rng(seed);
    const auto order = seeded_order(n, rng);

    constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();
    PaddedPartition p;
    p.delta = delta;
    p.seed = seed;
    p.cell_of.assign(n, kUnset);
    for (Vertex center : order) {
        const double radius = delta / 4.0 + (delta / 4.0) * unit_draw(rng);
        if (p.cell_of[center] != kUnset) continue;
        std::vector<Vertex> cell;
        for (Vertex y = 0; y < n; ++y) {
            if (p.cell_of[y] == kUnset && oracle.distance(center, y) <= radius) {
                p.cell_of[y] = p.cells.size();
                cell.push_back(y);
            }
        }
        p.cells.push_back(std::move(cell));
    }
    p.measured_beta = measure_beta(oracle, p.cells, delta);
    return p;
}

std::vector<double> padding(const MetricOracle& oracle, const std::vector<std::vector<Vertex>>& cells) {
    const std::size_t n = oracle.size();
    const auto cell_of = cell_index(n, cells);
    std::vector<double> pads(n, kInfinity);
    for (Vertex x = 0; x < n; ++x)
        for (Vertex y = 0; y < n; ++y)
            if (cell_of[y] != cell_of[x]) pads[x] = std::min(pads[x], oracle.distance(x, y));
    return pads;
}

double beta_from_padding(std::vector<double> pads, double delta) {
    if (pads.empty()) return 1.0;
    const std::size_t need = (pads.size() + 1) / 2;
    std::sort(pads.begin(), pads.end(), std::greater<>());
    const double p = pads[need - 1];
    if (p <= 0.0) return kInfinity;
    if (delta < p) return 1.0;
    double beta = delta / p;
    while (!(delta / beta < p)) beta = std::nextafter(beta, kInfinity);
    return std::max(1.0, beta);
}

double measure_beta(const MetricOracle& oracle, const std::vector<std::vector<Vertex>>& cells, double delta) {
    if (!(delta > 0.0)) throw ValidationError("measure_beta needs delta > 0");
    for (const auto& cell : cells)
        if (oracle.diameter(cell) > delta) throw ValidationError("partition cell has diameter above delta");
    return beta_from_padding(padding(oracle, cells), delta);
}

BoundCertificate build_certificate(const Graph& g, const VertexWeighting& w, std::size_t k,
                                   const CertifyOptions& options) {
    const std::size_t n = g.num_vertices();
    if (k < 1 || k > n) throw ValidationError("k must lie in [1, n]");
    if (w.size() != n) throw ValidationError("weighting size does not match graph");
    if (options.seeds.empty()) throw ValidationError("certificate needs at least one partition seed");

    BoundCertificate trivial;
    trivial.n = n;
    trivial.k = k;
    trivial.r = n / (8 * k);
    trivial.d_max = static_cast<double>(g.max_degree());
    trivial.status = CertificateStatus::trivial;
    trivial.certified_bound = 2.0 * trivial.d_max;
    if (trivial.r < 2) {
        trivial.weights = w.is_zero() ? VertexWeighting::uniform(n) : w.normalized();
        trivial.flags.emplace_back("subset_size_below_2");
        trivial.diagnostics = "floor(n/8k) = " + std::to_string(trivial.r) + " < 2; using lambda_k <= 2 d_max";
        return trivial;
    }

    const auto spread = epsilon_r(g, w, trivial.r, options.search);
    MetricOracle oracle(g, spread.weights);
    trivial.weights = spread.weights;
    trivial.epsilon = spread.epsilon;
    trivial.epsilon_mode = spread.mode;

    std::optional<BoundCertificate> best;
    std::string reasons;
    double literal_beta = kInfinity;
    for (double scale : options.scales) {
        auto attempt = attempt_scale(g, oracle, k, spread.epsilon, scale, options);
        if (!attempt.ok) {
            reasons += (reasons.empty() ? "" : "; ") + attempt.reason;
            continue;
        }
        if (scale == 1.0) literal_beta = attempt.cert.beta;
        if (!best || attempt.cert.certified_bound < best->certified_bound) best = std::move(attempt.cert);
    }
    if (!best) {
        trivial.flags.emplace_back("no_sound_vectors");
        trivial.diagnostics = reasons;
        return trivial;
    }

    BoundCertificate cert = std::move(*best);
    cert.status = CertificateStatus::certified;
    cert.n = n;
    cert.k = k;
    cert.r = trivial.r;
    cert.d_max = trivial.d_max;
    cert.weights = spread.weights;
    cert.epsilon = spread.epsilon;
    cert.epsilon_mode = spread.mode;
    if (spread.mode == SolveMode::heuristic) cert.flags.emplace_back("heuristic_epsilon");
    if (cert.scale != 1.0) cert.flags.emplace_back("scaled_delta");
    // The padding precondition β²/ε² <= n/64 refers to the literal Δ = ε/2.
    if (!(literal_beta * literal_beta / (spread.epsilon * spread.epsilon) <= static_cast<double>(n) / 64.0))
        cert.flags.emplace_back("padding_precondition_violated");
    cert.diagnostics = reasons;
    return cert;
}

std::vector<InvariantCheck> proof_invariants(const Graph& g, const BoundCertificate& cert) {
    std::vector<InvariantCheck> checks;
    if (cert.exact_lambda_k) {
        checks.push_back({"bound_dominates_lambda_k", cert.certified_bound >= *cert.exact_lambda_k,
                          cert.certified_bound, *cert.exact_lambda_k});
    }
    if (cert.status != CertificateStatus::certified) return checks;

    double cost = 0.0;
    for (const auto& c : cert.candidates) cost += edge_cost(g, cert.weights, c.neighborhood);
    const double cost_cap = 4.0 * cert.d_max * cert.weights.sum_of_squares();
    checks.push_back({"edge_cost_total", cost <= cost_cap, cost, cost_cap});

    const double separation_floor = cert.delta / cert.beta;
    checks.push_back({"neighborhood_separation", cert.neighborhood_separation >= separation_floor,
                      cert.neighborhood_separation, separation_floor});

    const double heavy_cap = 16.0 * cert.beta * cert.beta / (cert.epsilon * cert.epsilon);
    const double heavy = static_cast<double>(cert.heavy_set.size());
    checks.push_back({"heavy_count", heavy <= heavy_cap, heavy, heavy_cap});
    return checks;
}

VerificationReport verify_certificate(const Graph& g, const BoundCertificate& cert,
                                      std::optional<double> exact_lambda_k) {
    VerificationReport report;
    auto record = [&](std::string name, bool passed, double lhs, double rhs) {
        if (!passed) {
            report.ok = false;
            report.failures.push_back(name);
        }
        report.checks.push_back({std::move(name), passed, lhs, rhs});
    };
    const std::optional<double> lambda = exact_lambda_k ? exact_lambda_k : cert.exact_lambda_k;
    const std::size_t n = g.num_vertices();

    if (cert.status == CertificateStatus::trivial) {
        const double cap = 2.0 * static_cast<double>(g.max_degree());
        record("trivial_bound", cert.certified_bound >= cap, cert.certified_bound, cap);
        if (lambda) record("bound_dominates_lambda_k", cert.certified_bound >= *lambda, cert.certified_bound, *lambda);
        return report;
    }

    if (cert.weights.size() != n || cert.vectors.size() != cert.selected.size() || cert.vectors.size() != cert.k) {
        record("shape", false, static_cast<double>(cert.vectors.size()), static_cast<double>(cert.k));
        return report;
    }
    for (const auto& f : cert.vectors) {
        if (f.size() != n) {
            record("shape", false, static_cast<double>(f.size()), static_cast<double>(n));
            return report;
        }
    }

    const auto& w = cert.weights;
    const auto heavy = heavy_vertices(w, cert.threshold);
    record("heavy_set_matches", heavy == cert.heavy_set, static_cast<double>(cert.heavy_set.size()),
           static_cast<double>(heavy.size()));

    bool separated = true;
    const auto check = disjoint_support_bound(g, cert.vectors);
    separated = check.accepted;
    record("supports_non_adjacent", separated, separated ? 0.0 : 1.0, 0.0);

    double max_ratio = 0.0;
    for (std::size_t i = 0; i < cert.vectors.size(); ++i) {
        const auto& f = cert.vectors[i];
        if (cert.selected[i] >= cert.candidates.size()) {
            record("selected_index", false, static_cast<double>(cert.selected[i]),
                   static_cast<double>(cert.candidates.size()));
            return report;
        }
        const auto& cand = cert.candidates[cert.selected[i]];
        const std::string tag = "vector " + std::to_string(i) + ": ";

        double on_heavy = 0.0;
        for (Vertex h : heavy) on_heavy = std::max(on_heavy, std::abs(f[h]));
        record(tag + "vanishes_on_heavy", on_heavy == 0.0, on_heavy, 0.0);

        double plateau = 0.0;
        std::size_t light = 0;
        for (Vertex v : cand.core) {
            if (w[v] >= cert.threshold) continue;
            ++light;
            plateau = std::max(plateau, std::abs(f[v] - cert.threshold));
        }
        record(tag + "plateau_on_core", plateau == 0.0, plateau, 0.0);

        std::vector<char> in_hood(n, 0);
        for (Vertex v : cand.neighborhood) in_hood[v] = 1;
        bool inside = true;
        for (Vertex v : support(f)) inside = inside && in_hood[v];
        record(tag + "support_in_neighborhood", inside, inside ? 0.0 : 1.0, 0.0);

        const auto q = rayleigh(g, f);
        const double cost = edge_cost(g, w, cand.neighborhood);
        record(tag + "energy_below_edge_cost", q.energy <= cost * (1.0 + kRoundingSlack), q.energy, cost);
        const double norm_floor = cert.threshold * cert.threshold * static_cast<double>(light);
        record(tag + "norm_above_plateau", q.norm_sq >= norm_floor * (1.0 - kRoundingSlack), q.norm_sq, norm_floor);
        max_ratio = std::max(max_ratio, q.ratio);
    }
    record("bound_matches_ratios", std::abs(max_ratio - cert.certified_bound) <= 1e-12 * std::max(1.0, max_ratio),
           cert.certified_bound, max_ratio);
    if (lambda) record("bound_dominates_lambda_k", cert.certified_bound >= *lambda, cert.certified_bound, *lambda);
    return report;
}

std::string to_json(const BoundCertificate& cert) {
    nlohmann::ordered_json j;
    j["status"] = to_string(cert.status);
    j["n"] = cert.n;
    j["k"] = cert.k;
    j["r"] = cert.r;
    j["d_max"] = cert.d_max;
    j["epsilon"] = cert.epsilon;
    j["epsilon_mode"] = to_string(cert.epsilon_mode);
    j["beta"] = cert.beta;
    j["scale"] = cert.scale;
    j["delta"] = cert.delta;
    j["threshold"] = cert.threshold;
    j["seed"] = cert.seed;
    j["weights"] = cert.weights.values();
    j["cells"] = cert.cells;
    j["heavy_set"] = cert.heavy_set;
    nlohmann::ordered_json sets = nlohmann::ordered_json::array();
    for (const auto& c : cert.candidates) {
        nlohmann::ordered_json s;
        s["core"] = c.core;
        s["neighborhood"] = c.neighborhood;
        s["light_count"] = c.light_count;
        s["edge_cost"] = c.edge_cost;
        sets.push_back(std::move(s));
    }
    j["sets"] = std::move(sets);
    j["selected"] = cert.selected;
    j["vectors"] = cert.vectors;
    std::vector<double> ratios;
    for (const auto& q : cert.quotients) ratios.push_back(q.ratio);
    j["ratios"] = ratios;
    j["certified_bound"] = cert.certified_bound;
    if (cert.exact_lambda_k) j["exact_lambda_k"] = *cert.exact_lambda_k;
    j["neighborhood_separation"] =
        std::isfinite(cert.neighborhood_separation) ? nlohmann::ordered_json(cert.neighborhood_separation) : nullptr;
    j["flags"] = cert.flags;
    j["diagnostics"] = cert.diagnostics;
    return j.dump(2);
}

BoundCertificate certificate_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("certificate is not valid JSON: ") + e.what());
    }
    try {
        BoundCertificate cert;
        const auto status = j.at("status").get<std::string>();
        if (status != "certified" && status != "trivial") throw ValidationError("unknown certificate status");
        cert.status = status == "certified" ? CertificateStatus::certified : CertificateStatus::trivial;
        cert.n = j.at("n").get<std::size_t>();
        cert.k = j.at("k").get<std::size_t>();
        cert.r = j.at("r").get<std::size_t>();
        cert.d_max = j.at("d_max").get<double>();
        cert.epsilon = j.at("epsilon").get<double>();
        cert.epsilon_mode = j.at("epsilon_mode").get<std::string>() == "exact" ? SolveMode::exact : SolveMode::heuristic;
        cert.beta = j.at("beta").get<double>();
        cert.scale = j.at("scale").get<double>();
        cert.delta = j.at("delta").get<double>();
        cert.threshold = j.at("threshold").get<double>();
        cert.seed = j.at("seed").get<std::uint64_t>();
        cert.weights = VertexWeighting(j.at("weights").get<std::vector<double>>());
        cert.cells = j.at("cells").get<std::vector<std::vector<Vertex>>>();
        cert.heavy_set = j.at("heavy_set").get<std::vector<Vertex>>();
        for (const auto& s : j.at("sets")) {
            CandidateSet c;
            c.core = s.at("core").get<std::vector<Vertex>>();
            c.neighborhood = s.at("neighborhood").get<std::vector<Vertex>>();
            c.light_count = s.at("light_count").get<std::size_t>();
            c.edge_cost = s.at("edge_cost").get<double>();
            cert.candidates.push_back(std::move(c));
        }
        cert.selected = j.at("selected").get<std::vector<std::size_t>>();
        cert.vectors = j.at("vectors").get<std::vector<std::vector<double>>>();
        cert.certified_bound = j.at("certified_bound").get<double>();
        if (j.contains("exact_lambda_k")) cert.exact_lambda_k = j.at("exact_lambda_k").get<double>();
        const auto& sep = j.at("neighborhood_separation");
        cert.neighborhood_separation = sep.is_null() ? kInfinity : sep.get<double>();
        cert.flags = j.at("flags").get<std::vector<std::string>>();
        cert.diagnostics = j.value("diagnostics", std::string{});
        return cert;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed certificate: ") + e.what());
    }
}

}  // namespace specbound
